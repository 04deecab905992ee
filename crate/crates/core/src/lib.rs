pub mod catalogue;
pub mod cli;
pub mod constructors;
pub mod error;
pub mod game;
pub mod rook;
pub mod solver;
pub mod strategy;
pub mod verdict;
pub mod verify;

pub use error::{HatsError, Result};
pub use game::{Arrangement, Arrangements, Color, Game, Provenance};
pub use strategy::{view_index, Strategy};
pub use verdict::{Status, Verdict};
pub use verify::{correct_count, is_precise, verify_strategy, Verification};
