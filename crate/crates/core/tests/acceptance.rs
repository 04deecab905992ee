//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to
//! see them; the test fails if any criterion does.

mod common;

use std::io::Write;
use std::time::Instant;

use num::{BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hats::catalogue::{
    almost_clique_classify, almost_clique_game, arithmetic_clique_strategy, bow_strategy,
    clique_classify, clique_game, cycle_classify, hall_clique_strategy, lemma_6623_strategy,
    BowSpec,
};
use hats::rook::{
    catalogue_rook, king_check_classify, king_ell, king_ell_brute_force, queen_4x4_5x5,
    queen_4x5_chessboard, queen_4x5_coloring, queen_5player_11x11, solve_board, solve_rook,
    verify_board_by_enumeration, Board, BoardPair, Piece,
};
use hats::solver::{decode_model, dpll, parse_dimacs, solve, solve_c4_via_rook, to_dimacs, Limits};
use hats::{correct_count, is_precise, verify_strategy, Game, Status, Strategy};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: hats::HatsError) -> String {
    err.to_string()
}

fn exact_sum(hats: &[u32]) -> BigRational {
    hats.iter()
        .map(|&a| BigRational::new(1.into(), a.into()))
        .fold(BigRational::zero(), |s, x| s + x)
}

fn tuples(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=max).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

fn clique_law() -> Outcome {
    let mut count = 0;
    for n in 1..=4 {
        for hats in tuples(n, 5) {
            let expected = if exact_sum(&hats) >= BigRational::one() {
                Status::Winning
            } else {
                Status::Losing
            };
            let table = clique_classify(&hats).map_err(e)?.status;
            ensure(table == expected, || {
                format!("classify {hats:?} gave {table}")
            })?;
            let game = clique_game(&hats).map_err(e)?;
            let r = solve(&game, &Limits::nodes(50_000_000)).map_err(e)?;
            ensure(r.verdict.status == expected, || {
                format!(
                    "solver {hats:?} gave {} ({})",
                    r.verdict.status, r.verdict.reason
                )
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} tuples, table = solver = sign of the reciprocal sum"
    ))
}

fn clique_strategies() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut sampled = 0;
    let mut precise_seen = 0;
    while sampled < 20 {
        let n = rng.gen_range(2..=5);
        let hats: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=12)).collect();
        let sum = exact_sum(&hats);
        let arrangements: u64 = hats.iter().map(|&a| a as u64).product();
        if sum < BigRational::one() || arrangements > 100_000 {
            continue;
        }
        let game = clique_game(&hats).map_err(e)?;
        for (name, s) in [
            ("arithmetic", arithmetic_clique_strategy(&hats).map_err(e)?),
            ("hall", hall_clique_strategy(&hats, 10_000_000).map_err(e)?),
        ] {
            ensure(verify_strategy(&game, &s).map_err(e)?.winning, || {
                format!("{name} loses on {hats:?}")
            })?;
            let precise = is_precise(&game, &s).map_err(e)?;
            ensure(precise == sum.is_one(), || {
                format!("{name} on {hats:?}: precise {precise}, sum {sum}")
            })?;
        }
        precise_seen += sum.is_one() as u32;
        sampled += 1;
    }
    for (hats, want) in [
        (vec![2, 3, 6], true),
        (vec![2, 4, 4], true),
        (vec![2, 2, 2], false),
    ] {
        let game = clique_game(&hats).map_err(e)?;
        let s = arithmetic_clique_strategy(&hats).map_err(e)?;
        ensure(is_precise(&game, &s).map_err(e)? == want, || {
            format!("precision of {hats:?}")
        })?;
    }
    Ok(format!(
        "20 sampled tuples ({precise_seen} with sum 1) plus (2,3,6), (2,4,4), (2,2,2)"
    ))
}

fn almost_clique() -> Outcome {
    let v = almost_clique_classify(&[3, 6, 3, 4]).map_err(e)?;
    ensure(
        v.status == Status::Losing && v.reason == "divisibility",
        || format!("(3,6 | 3,4) gave {} ({})", v.status, v.reason),
    )?;
    let game = almost_clique_game(&[6, 6, 2, 3]).map_err(e)?;
    let s = lemma_6623_strategy(2).map_err(e)?;
    let r = verify_strategy(&game, &s).map_err(e)?;
    ensure(r.winning && r.arrangements == 216, || {
        format!("6623 witness: {r:?}")
    })?;
    let v = almost_clique_classify(&[6, 6, 2, 3]).map_err(e)?;
    ensure(v.status == Status::Winning, || {
        format!("(6,6 | 2,3) gave {}", v.status)
    })?;
    Ok("(3,6 | 3,4) losing by divisibility, (6,6 | 2,3) wins on all 216 arrangements".into())
}

fn bows() -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    for (name, spec, want) in [
        ("big", BowSpec::big(), 9_250_000),
        ("medium", BowSpec::medium(), 78_125),
    ] {
        let game = spec.game().map_err(e)?;
        let r = verify_strategy(&game, &bow_strategy(&spec).map_err(e)?).map_err(e)?;
        ensure(r.winning && r.arrangements == want, || {
            format!("{name} bow: {r:?}")
        })?;
        parts.push(format!("{name} {want}"));
    }
    Ok(format!(
        "{} arrangements in {:.2?}",
        parts.join(", "),
        t.elapsed()
    ))
}

fn constructors() -> Outcome {
    let won = common::winning_constructions().map_err(e)?;
    for (name, cg) in &won {
        let w = cg
            .witness
            .as_ref()
            .ok_or_else(|| format!("{name}: no witness"))?;
        ensure(verify_strategy(&cg.game, w).map_err(e)?.winning, || {
            format!("{name}: witness loses")
        })?;
    }
    let lost = common::losing_constructions().map_err(e)?;
    for (name, cg) in &lost {
        let states = cg.game.enumerable_count().map_err(e)?;
        ensure(states <= 10_000_000, || {
            format!("{name}: {states} arrangements")
        })?;
        let r = solve(&cg.game, &Limits::nodes(50_000_000)).map_err(e)?;
        ensure(r.verdict.status == Status::Losing, || {
            format!("{name}: solver says {}", r.verdict.status)
        })?;
    }
    Ok(format!(
        "{} winning constructions verified, {} losing confirmed",
        won.len(),
        lost.len()
    ))
}

const ROOK_CASES: [(&str, &str, Status, &str); 12] = [
    ("1x5", "6x6", Status::Winning, "Win1"),
    ("2x4", "2x7", Status::Winning, "Win2"),
    ("3x3", "3x3", Status::Winning, "Win3"),
    ("2x3", "3x4", Status::Winning, "Win4"),
    ("2x4", "3x3", Status::Winning, "Win5"),
    ("2x2", "4x6", Status::Winning, "Win6"),
    ("2x3", "4x4", Status::Losing, "Lose1"),
    ("2x3", "3x5", Status::Losing, "Lose2"),
    ("2x4", "3x4", Status::Losing, "Lose3"),
    ("2x5", "3x3", Status::Losing, "Lose4"),
    ("3x3", "3x4", Status::Losing, "Lose5"),
    ("2x2", "5x5", Status::Losing, "Lose6"),
];

fn pair(l: &str, r: &str) -> BoardPair {
    BoardPair::new(l.parse().unwrap(), r.parse().unwrap())
}

fn rook_cases() -> Outcome {
    let t = Instant::now();
    let mut nodes = 0;
    for (l, r, want, case) in ROOK_CASES {
        let p = pair(l, r);
        let s = solve_rook(&p, None).map_err(e)?;
        ensure(s.status == want, || {
            format!("{case} {p}: search says {}", s.status)
        })?;
        nodes += s.nodes;
        if let Some(w) = &s.witness {
            ensure(
                verify_board_by_enumeration(&p, w, Piece::Rook)
                    .map_err(e)?
                    .winning,
                || format!("{case}: search witness loses"),
            )?;
        }
        let c = catalogue_rook(&p).map_err(e)?;
        ensure(c.status == want && c.reason == case, || {
            format!("{case}: table says {} ({})", c.status, c.reason)
        })?;
        if let Some(w) = &c.witness {
            ensure(
                verify_board_by_enumeration(&p, w, Piece::Rook)
                    .map_err(e)?
                    .winning,
                || format!("{case}: table witness loses"),
            )?;
        }
    }
    Ok(format!(
        "12 cases by search ({nodes} nodes, {:.2?}) and by the table",
        t.elapsed()
    ))
}

fn c4_equivalence() -> Outcome {
    let t = Instant::now();
    let mut wins = 0;
    let mut over_budget = Vec::new();
    for code in 0..81u32 {
        let h: Vec<u32> = (0..4).map(|k| 2 + code / 3u32.pow(k) % 3).collect();
        let game = Game::cycle(&[("A", h[0]), ("B", h[1]), ("C", h[2]), ("D", h[3])]).map_err(e)?;
        let rook = solve_c4_via_rook(&game, &Limits::default())
            .map_err(e)?
            .verdict;
        ensure(rook.status != Status::Unknown, || {
            format!("{h:?}: rook search undecided")
        })?;
        let csp = solve(&game, &Limits::nodes(200_000_000))
            .map_err(e)?
            .verdict;
        if csp.status == Status::Unknown {
            over_budget.push(h.clone());
        } else {
            ensure(csp.status == rook.status, || {
                format!("{h:?}: csp {} rook {}", csp.status, rook.status)
            })?;
        }
        wins += (rook.status == Status::Winning) as u32;
    }
    for h in [[2, 4, 3, 4], [2, 4, 4, 3]] {
        let game = Game::cycle(&[("A", h[0]), ("B", h[1]), ("C", h[2]), ("D", h[3])]).map_err(e)?;
        let v = solve(&game, &Limits::default()).map_err(e)?.verdict;
        ensure(v.status == Status::Losing, || {
            format!("{h:?} gave {}", v.status)
        })?;
    }
    let note = if over_budget.is_empty() {
        String::new()
    } else {
        format!(", csp over budget on {over_budget:?}")
    };
    Ok(format!(
        "81 hat functions agree ({wins} winning) in {:.2?}{note}",
        t.elapsed()
    ))
}

fn queens() -> Outcome {
    for (name, (p, s)) in [
        ("4x5 coloring", queen_4x5_coloring()),
        ("4x5 chessboard", queen_4x5_chessboard()),
        ("4x4 vs 5x5", queen_4x4_5x5()),
    ] {
        ensure(p.left.cells() * p.right.cells() == 400, || {
            format!("{name}: not 400 king pairs")
        })?;
        ensure(
            verify_board_by_enumeration(&p, &s, Piece::Queen)
                .map_err(e)?
                .winning,
            || format!("{name} loses"),
        )?;
    }
    let r = queen_5player_11x11(0, 1_000_000, 0).map_err(e)?;
    ensure(
        r.dominated == 121 && r.labeling_valid && r.failures == 0 && r.random_checked == 1_000_000,
        || format!("five queens: {r:?}"),
    )?;
    Ok("three strategies win on 400 king pairs each; five queens dominate 121/121, 10^6 placements, 0 failures".into())
}

fn king() -> Outcome {
    let boards: Vec<Board> = (1..=7)
        .flat_map(|r| (1..=7).map(move |c| Board { rows: r, cols: c }))
        .collect();
    for b in &boards {
        ensure(king_ell(b) == king_ell_brute_force(b), || {
            format!("king number of {b}")
        })?;
    }
    let mut wins = 0;
    let mut searched = 0;
    for &l in &boards {
        for &r in &boards {
            let p = BoardPair::new(l, r);
            let (a, b) = (king_ell_brute_force(&l), king_ell_brute_force(&r));
            let want = a.min(b) == 1 || (a == 2 && b == 2);
            let v = king_check_classify(&p);
            ensure((v.status == Status::Winning) == want, || {
                format!("{p}: {}", v.status)
            })?;
            if let Some(w) = &v.witness {
                ensure(
                    verify_board_by_enumeration(&p, w, Piece::King)
                        .map_err(e)?
                        .winning,
                    || format!("{p}: witness loses"),
                )?;
                wins += 1;
            } else if l.cells().min(r.cells()) <= 6 && l.cells().max(r.cells()) <= 12 {
                let s = solve_board(&p, Piece::King, None, false).map_err(e)?;
                ensure(s.status == Status::Losing, || {
                    format!("{p}: search says {}", s.status)
                })?;
                searched += 1;
            }
        }
    }
    let p = pair("3x6", "3x6");
    let w = king_check_classify(&p).witness.ok_or("3x6: no witness")?;
    ensure(
        verify_board_by_enumeration(&p, &w, Piece::King)
            .map_err(e)?
            .winning,
        || "3x6 split".into(),
    )?;
    Ok(format!(
        "49 boards, {wins} winning pairs verified, {searched} losses confirmed by search"
    ))
}

fn cycles() -> Outcome {
    let mut verified = 0;
    let mut reasons = std::collections::BTreeSet::new();
    for n in 3..=6 {
        for rest in tuples(n - 1, 3) {
            let hats: Vec<u32> = std::iter::once(2)
                .chain(rest.iter().map(|a| a + 1))
                .collect();
            let names: Vec<String> = (0..n).map(|i| format!("V{i}")).collect();
            let vs: Vec<(&str, u32)> = names
                .iter()
                .map(String::as_str)
                .zip(hats.iter().copied())
                .collect();
            let game = Game::cycle(&vs).map_err(e)?;
            let v = cycle_classify(&game, &names[0]).map_err(e)?;
            if v.status == Status::Winning {
                let w = v
                    .witness
                    .as_ref()
                    .ok_or_else(|| format!("{hats:?}: no witness"))?;
                ensure(verify_strategy(&game, w).map_err(e)?.winning, || {
                    format!("C{n} {hats:?}: witness loses")
                })?;
                verified += 1;
                reasons.insert(v.reason.clone());
            }
        }
    }
    ensure(reasons.len() == 4, || format!("cases seen: {reasons:?}"))?;
    Ok(format!(
        "{verified} winning hat functions on C3..C6 verified, cases {reasons:?}"
    ))
}

fn right_guess_fraction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut pairs = 0;
    while pairs < 1000 {
        let n = rng.gen_range(1..=5);
        let names: Vec<String> = (0..n).map(|i| format!("V{i}")).collect();
        let vs: Vec<(&str, u32)> = names
            .iter()
            .map(|s| (s.as_str(), rng.gen_range(1..=6)))
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((names[i].as_str(), names[j].as_str()));
                }
            }
        }
        let game = Game::new(&vs, &edges).map_err(e)?;
        let total = game.enumerable_count().map_err(e)?;
        if total > 10_000 {
            continue;
        }
        let s = Strategy::tabulate(&game, |v, _| rng.gen_range(0..game.hatness(v))).map_err(e)?;
        for v in 0..n {
            let c = correct_count(&game, &s, v).map_err(e)?;
            ensure(c * game.hatness(v) as u64 == total, || {
                format!("{:?}: vertex {v} right {c} of {total}", game.hatnesses())
            })?;
        }
        pairs += 1;
    }
    Ok("1000 random games and strategies, every sage right on exactly total/h arrangements".into())
}

fn dimacs() -> Outcome {
    let games = [
        Game::clique(&[("A", 2), ("B", 2)]),
        Game::clique(&[("A", 2), ("B", 3)]),
        Game::clique(&[("A", 2), ("B", 3), ("C", 6)]),
        Game::clique(&[("A", 3), ("B", 3), ("C", 4)]),
        Game::path(&[("A", 2), ("B", 4), ("C", 2)]),
        Game::path(&[("A", 2), ("B", 5), ("C", 2)]),
        Game::cycle(&[("A", 2), ("B", 3), ("C", 3)]),
        Game::cycle(&[("A", 2), ("B", 2), ("C", 2), ("D", 2)]),
        Game::cycle(&[("A", 3), ("B", 3), ("C", 3), ("D", 3)]),
        Game::new(&[("A", 2), ("B", 2)], &[] as &[(&str, &str)]),
    ];
    let mut sat = 0;
    for g in games {
        let g = g.map_err(e)?;
        let text = to_dimacs(&g).map_err(e)?;
        let cnf = parse_dimacs(&text).map_err(e)?;
        let verdict = solve(&g, &Limits::default()).map_err(e)?.verdict.status;
        let model = dpll(&cnf, None).map_err(e)?;
        ensure((verdict == Status::Winning) == model.is_some(), || {
            format!(
                "{:?}: solver {verdict}, cnf satisfiable {}",
                g.hatnesses(),
                model.is_some()
            )
        })?;
        if let Some(m) = model {
            let s = decode_model(&g, &m).map_err(e)?;
            ensure(verify_strategy(&g, &s).map_err(e)?.winning, || {
                format!("{:?}: decoded model loses", g.hatnesses())
            })?;
            let again = solve(&g, &Limits::default()).map_err(e)?.verdict.status;
            ensure(again == Status::Winning, || "re-run disagrees".into())?;
            sat += 1;
        }
    }
    Ok(format!(
        "10 games, {sat} satisfiable with verifying decoded strategies"
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("clique law", clique_law),
        ("clique strategies", clique_strategies),
        ("almost complete graphs", almost_clique),
        ("bows", bows),
        ("constructor soundness", constructors),
        ("rook check cases", rook_cases),
        ("4-cycle equivalence", c4_equivalence),
        ("queen check", queens),
        ("king check", king),
        ("cycles", cycles),
        ("right-guess fraction", right_guess_fraction),
        ("dimacs round trip", dimacs),
    ];
    // written to the stdout handle so the lines show without --nocapture
    let mut out = std::io::stdout();
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (mark, detail) = match f() {
            Ok(detail) => ("PASS", detail),
            Err(why) => {
                failed.push(i + 1);
                ("FAIL", why)
            }
        };
        let line = format!("{mark} {:>2} {name}: {detail} [{:.1?}]", i + 1, t.elapsed());
        writeln!(out, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
