use std::fmt;

use serde::{Deserialize, Serialize};

use crate::game::Arrangement;
use crate::strategy::Strategy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Winning,
    Losing,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Winning => "winning",
            Status::Losing => "losing",
            Status::Unknown => "unknown",
        })
    }
}

/// A classification together with whatever evidence backs it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Strategy>,
    pub reason: String,
    pub counterexample: Option<Arrangement>,
}

impl Verdict {
    pub fn winning(witness: Option<Strategy>, reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Winning,
            witness,
            reason: reason.into(),
            counterexample: None,
        }
    }

    pub fn losing(reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Losing,
            witness: None,
            reason: reason.into(),
            counterexample: None,
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Unknown,
            witness: None,
            reason: reason.into(),
            counterexample: None,
        }
    }
}
