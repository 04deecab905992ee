mod common;

use hats::constructors::Check;
use hats::solver::{solve, Limits};
use hats::{verify_strategy, Status};

#[test]
fn winning_constructions_verify() {
    for (name, cg) in common::winning_constructions().unwrap() {
        assert_eq!(cg.status, Status::Winning, "{name}");
        assert_eq!(cg.check, Check::Verified, "{name}");
        let v = verify_strategy(&cg.game, cg.witness.as_ref().unwrap()).unwrap();
        assert!(v.winning, "{name}: {:?}", v.first_losing);
    }
}

#[test]
fn losing_constructions_are_losing() {
    for (name, cg) in common::losing_constructions().unwrap() {
        assert_eq!(cg.status, Status::Losing, "{name}");
        let r = solve(&cg.game, &Limits::nodes(20_000_000)).unwrap();
        assert_eq!(
            r.verdict.status,
            Status::Losing,
            "{name} {:?}",
            cg.game.hatnesses()
        );
    }
}

#[test]
fn provenance_survives_json() {
    for (name, cg) in common::winning_constructions().unwrap() {
        let (g, p) = hats::Game::from_json_with_provenance(&cg.to_json()).unwrap();
        assert_eq!(g.digest(), cg.game.digest(), "{name}");
        assert_eq!(p.as_ref(), Some(&cg.provenance), "{name}");
    }
}
