//! Runs the `hats` binary: exit codes, file outputs and golden reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hats(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hats"))
        .args(args)
        .current_dir(dir)
        .env_remove("HATS_BUDGET_NODES")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const K2_22: &str = r#"{"format":"hats/1","vertices":[{"name":"A","hatness":2},{"name":"B","hatness":2}],"edges":[["A","B"]]}"#;
const K2_AC: &str = r#"{"format":"hats/1","vertices":[{"name":"A","hatness":2},{"name":"C","hatness":2}],"edges":[["A","C"]]}"#;

#[test]
fn solve_small_games() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k2_22.json", K2_22);
    let o = hats(
        &["solve", "k2_22.json", "--strategy-out", "s.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let o = hats(&["verify", "k2_22.json", "s.json"], dir.path());
    assert_eq!(code(&o), 0);

    write(
        dir.path(),
        "p252.json",
        r#"{"format":"hats/1","vertices":[{"name":"A","hatness":2},{"name":"B","hatness":5},{"name":"C","hatness":2}],"edges":[["A","B"],["B","C"]]}"#,
    );
    assert_eq!(code(&hats(&["solve", "p252.json"], dir.path())), 1);
    assert_eq!(
        code(&hats(
            &["solve", "p252.json", "--method", "naive"],
            dir.path()
        )),
        1
    );
}

#[test]
fn verify_refutes_a_bad_strategy() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k2_22.json", K2_22);
    write(
        dir.path(),
        "s.json",
        r#"{"format":"hats/1","vertices":[{"name":"A","neighbors":["B"],"table":[0,0]},{"name":"B","neighbors":["A"],"table":[0,0]}]}"#,
    );
    let o = hats(&["--json", "verify", "k2_22.json", "s.json"], dir.path());
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["first_losing"], serde_json::json!([1, 1]));
}

#[test]
fn rook_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&hats(
            &["rook", "--left", "2x3", "--right", "4x4", "--solve"],
            d
        )),
        1
    );
    let o = hats(
        &[
            "rook",
            "--left",
            "3x3",
            "--right",
            "3x3",
            "--solve",
            "--strategy-out",
            "w.json",
        ],
        d,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(
        code(&hats(
            &["rook", "--left", "3x3", "--right", "3x3", "--verify", "w.json"],
            d
        )),
        0
    );
    assert_eq!(
        code(&hats(
            &["rook", "--left", "3x3", "--right", "3x3", "--verify", "w.json", "--piece", "king"],
            d
        )),
        1
    );
    assert_eq!(
        code(&hats(
            &[
                "rook",
                "--left",
                "3x3",
                "--right",
                "3x3",
                "--no-symmetry",
                "--solve"
            ],
            d
        )),
        0
    );
    assert_eq!(
        code(&hats(
            &["rook", "--left", "2x5", "--right", "3x3", "--catalogue"],
            d
        )),
        1
    );
    assert_eq!(
        code(&hats(
            &[
                "rook",
                "--left",
                "4x4",
                "--right",
                "4x4",
                "--catalogue",
                "--piece",
                "queen"
            ],
            d
        )),
        2
    );
    let o = hats(
        &[
            "rook",
            "--left",
            "3x4",
            "--right",
            "4x4",
            "--solve",
            "--budget-nodes",
            "3",
        ],
        d,
    );
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_hats"))
        .args(["rook", "--left", "3x4", "--right", "4x4", "--solve"])
        .env("HATS_BUDGET_NODES", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert_eq!(
        code(&hats(
            &["rook", "--left", "3y4", "--right", "4x4", "--solve"],
            d
        )),
        3
    );
}

#[test]
fn construct_product_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "a.json", K2_22);
    write(d, "b.json", K2_AC);
    let o = hats(
        &[
            "--json",
            "construct",
            "product",
            "a.json",
            "b.json",
            "--at",
            "A",
            "--out",
            "p",
        ],
        d,
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    assert_eq!(r["check"], "Verified");
    assert_eq!(r["files"].as_object().unwrap().len(), 2);
    let game: Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("p.json")).unwrap()).unwrap();
    let hats_of: Vec<u64> = game["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["hatness"].as_u64().unwrap())
        .collect();
    assert_eq!(hats_of, vec![4, 2, 2]);
    assert_eq!(game["provenance"]["rule"], "product");
    assert_eq!(code(&hats(&["verify", "p.json", "p.strategy.json"], d)), 0);

    // the written strategy sits next to the game, so the next step reuses it
    let o = hats(
        &[
            "construct",
            "attach2",
            "p.json",
            "--to",
            "B,C",
            "--out",
            "c4",
        ],
        d,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(
        code(&hats(&["verify", "c4.json", "c4.strategy.json"], d)),
        0
    );
}

#[test]
fn construct_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "a.json", K2_22);
    write(d, "b.json", K2_AC);
    let o = hats(
        &["construct", "product", "a.json", "b.json", "--at", "Q"],
        d,
    );
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains('Q'));
    let o = hats(
        &[
            "construct",
            "attach-leaf",
            "a.json",
            "--to",
            "A",
            "--k",
            "2",
        ],
        d,
    );
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 3"));
    assert_eq!(
        code(&hats(
            &[
                "construct",
                "product",
                "missing.json",
                "b.json",
                "--at",
                "A"
            ],
            d
        )),
        3
    );
}

#[test]
fn malformed_files_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(
        d,
        "bad.json",
        r#"{"format":"hats/1","vertices":[{"name":"A","hatnes":2}],"edges":[]}"#,
    );
    let o = hats(&["solve", "bad.json"], d);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("hatness"));
    assert_eq!(code(&hats(&["solve", "nowhere.json"], d)), 3);
    assert_eq!(code(&hats(&["solve", "bad.json", "--no-such-flag"], d)), 3);
}

#[test]
fn dimacs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "k2_22.json", K2_22);
    let o = hats(&["dimacs", "k2_22.json", "--out", "k.cnf"], d);
    assert_eq!(code(&o), 0);
    let cnf = std::fs::read_to_string(d.join("k.cnf")).unwrap();
    assert!(cnf.lines().any(|l| l.starts_with("p cnf ")));
    let model = hats::solver::dpll(&hats::solver::parse_dimacs(&cnf).unwrap(), None)
        .unwrap()
        .unwrap();
    let lits: Vec<String> = model
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            if b {
                format!("{}", i + 1)
            } else {
                format!("-{}", i + 1)
            }
        })
        .collect();
    write(
        d,
        "m.txt",
        &format!("s SATISFIABLE\nv {} 0\n", lits.join(" ")),
    );
    let o = hats(
        &[
            "--json",
            "dimacs",
            "k2_22.json",
            "--model",
            "m.txt",
            "--strategy-out",
            "s.json",
        ],
        d,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["status"], "winning");
    assert_eq!(code(&hats(&["verify", "k2_22.json", "s.json"], d)), 0);
    assert_eq!(code(&hats(&["dimacs", "k2_22.json", "--check"], d)), 0);
}

#[test]
fn catalogue_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&hats(&["catalogue", "clique", "2,3,6"], d)), 0);
    assert_eq!(code(&hats(&["catalogue", "clique", "2,3,7"], d)), 1);
    assert_eq!(
        code(&hats(&["catalogue", "almost-clique", "3,6,3,4"], d)),
        1
    );
    assert_eq!(
        code(&hats(
            &["catalogue", "cycle", "2,3,4,3", "--strategy-out", "c.json"],
            d
        )),
        0
    );
    assert_eq!(code(&hats(&["catalogue", "cycle", "2,4,4,4,4"], d)), 2);
    let o = hats(&["catalogue", "sylvester", "4"], d);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "42");
    let o = hats(
        &[
            "--json",
            "--seed",
            "3",
            "catalogue",
            "queens5",
            "--samples",
            "1000",
            "--slice",
            "1000",
        ],
        d,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["report"]["failures"], 0);
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Set `HATS_UPDATE_GOLDEN=1` to rewrite the files.
#[test]
fn named_games_match_golden_reports() {
    let dir = tempfile::tempdir().unwrap();
    for id in hats::catalogue::NAMED_GAMES {
        let o = hats(&["--json", "named", id], dir.path());
        assert_eq!(code(&o), 0, "{id}");
        let got = report(&o);
        let path = golden(&format!("named_{id}.json"));
        if std::env::var_os("HATS_UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
            continue;
        }
        let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(got, want, "{id}");
    }
}

#[test]
fn named_big_bow_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let o = hats(&["--json", "named", "big-bow", "--verify"], dir.path());
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["arrangements"], 9_250_000);
}

#[test]
fn named_output_files_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&hats(&["named", "cone-example", "--out", "cone"], d)),
        0
    );
    assert_eq!(
        code(&hats(&["verify", "cone.json", "cone.strategy.json"], d)),
        0
    );
}
