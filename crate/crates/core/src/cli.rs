//! The `hats` command line.
//!
//! Exit codes: 0 winning or verified, 1 losing or refuted, 2 unknown or out
//! of budget, 3 usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::catalogue::{
    almost_clique_classify, arithmetic_clique_strategy, clique_classify, clique_game,
    cycle_classify, hall_clique_strategy, named_game, sylvester_max_hatness,
};
use crate::constructors::{
    attach_leaf, attach_path_zabc, attach_vertex2, attach_vertex2_to_edge, cone, fasten,
    fasten_single, glue_losing, losing_attach_two, losing_pendant, product, remove_leaf, restrict,
    set_verify_bound, sew, stitch, substitute, ConeComponent, ConstructedGame,
};
use crate::error::{HatsError, Result};
use crate::game::Game;
use crate::rook::{
    board_to_dimacs, catalogue_rook, king_check_classify, queen_5player_11x11, solve_board,
    verify_board_by_enumeration, verify_board_strategy, Board, BoardPair, BoardVerdict, Piece,
    RookStrategyPair,
};
use crate::solver::{decode_model, dpll, parse_dimacs, solve_with, to_dimacs, Limits, Method};
use crate::strategy::Strategy;
use crate::verdict::{Status, Verdict};
use crate::verify::{is_precise, verify_strategy};

pub const EXIT_WINNING: i32 = 0;
pub const EXIT_LOSING: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

/// Environment variable holding the default node budget for searches.
pub const BUDGET_ENV: &str = "HATS_BUDGET_NODES";

#[derive(Parser, Debug)]
#[command(name = "hats", version, about = "Hat guessing games on graphs")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest arrangement count checked right after a construction.
    #[arg(long, global = true)]
    pub verify_bound: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a strategy on every arrangement.
    Verify { game: PathBuf, strategy: PathBuf },
    /// Decide a game by search.
    Solve(SolveArgs),
    /// Apply a construction to game files.
    Construct(ConstructArgs),
    /// Two-board check games.
    Rook(RookArgs),
    /// Closed-form classifications.
    Catalogue {
        #[command(subcommand)]
        family: Family,
    },
    /// Built-in example games.
    Named {
        id: String,
        /// Re-run the full verification of the witness.
        #[arg(long)]
        verify: bool,
        /// Write `<out>.json` and `<out>.strategy.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DIMACS export, model decoding and the built-in SAT check.
    Dimacs(DimacsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Csp,
    Rook,
    Naive,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub game: PathBuf,
    #[arg(long, value_enum, default_value = "csp")]
    pub method: MethodArg,
    /// Also write the CNF encoding here.
    #[arg(long)]
    pub dimacs: Option<PathBuf>,
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Time limit in seconds.
    #[arg(long)]
    pub time_limit: Option<u64>,
    #[arg(long)]
    pub no_symmetry: bool,
    /// Split the search over worker threads.
    #[arg(long)]
    pub parallel: bool,
    /// Write the winning strategy here.
    #[arg(long)]
    pub strategy_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Product,
    Substitute,
    Attach2,
    Attach2Edge,
    Zabc,
    AttachLeaf,
    RemoveLeaf,
    LosingPendant,
    LosingAttachTwo,
    GlueLosing,
    Stitch,
    Sew,
    Fasten,
    FastenSingle,
    Cone,
    Restrict,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub rule: Rule,
    /// Game files. A strategy is read from `<stem>.strategy.json` when
    /// present; otherwise the operand is decided by the solver.
    #[arg(required = true)]
    pub operands: Vec<PathBuf>,
    /// Shared or substituted vertex.
    #[arg(long)]
    pub at: Option<String>,
    /// Attachment vertices, comma separated.
    #[arg(long)]
    pub to: Option<String>,
    /// Names of new vertices, comma separated.
    #[arg(long)]
    pub name: Option<String>,
    /// Hatness of an attached leaf.
    #[arg(long)]
    pub k: Option<u32>,
    /// Marked vertices: groups separated by `;`, names by `,`.
    #[arg(long)]
    pub marked: Option<String>,
    /// Apex of a cone.
    #[arg(long)]
    pub apex: Option<String>,
    /// New hatnesses as `A=2,B=3`.
    #[arg(long)]
    pub set: Option<String>,
    /// Output prefix.
    #[arg(long, default_value = "constructed")]
    pub out: PathBuf,
    #[arg(long)]
    pub budget_nodes: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PieceArg {
    Rook,
    Queen,
    King,
}

#[derive(Args, Debug)]
pub struct RookArgs {
    #[arg(long)]
    pub left: Board,
    #[arg(long)]
    pub right: Board,
    #[arg(long, value_enum, default_value = "rook")]
    pub piece: PieceArg,
    #[arg(long, group = "mode")]
    pub solve: bool,
    #[arg(long, group = "mode")]
    pub catalogue: bool,
    /// Check a strategy file `{"r_placement":[...],"l_labels":[...]}`.
    #[arg(long, group = "mode")]
    pub verify: Option<PathBuf>,
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    #[arg(long)]
    pub no_symmetry: bool,
    /// Write the winning strategy here.
    #[arg(long)]
    pub strategy_out: Option<PathBuf>,
    /// Write the CNF encoding of the board game here.
    #[arg(long)]
    pub dimacs: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Complete graph with the given hatnesses.
    Clique {
        #[arg(value_delimiter = ',')]
        hats: Vec<u32>,
        /// Strategy to emit when winning.
        #[arg(long, value_enum, default_value = "arithmetic")]
        strategy: CliqueStrategy,
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
    /// Complete graph without the edge between the last two vertices.
    AlmostClique {
        #[arg(value_delimiter = ',')]
        hats: Vec<u32>,
    },
    /// Cycle through the hatnesses in order; the first vertex has hatness 2.
    Cycle {
        #[arg(value_delimiter = ',')]
        hats: Vec<u32>,
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
    /// Largest hatness in a winning clique of `n` sages.
    Sylvester { n: u32 },
    /// Five players with queens on 11x11 boards.
    Queens5 {
        /// Random king placements to test.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Placements tested in order from the first one.
        #[arg(long, default_value_t = 1_000_000)]
        slice: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CliqueStrategy {
    Arithmetic,
    Hall,
}

#[derive(Args, Debug)]
pub struct DimacsArgs {
    pub game: PathBuf,
    /// Where to write the CNF; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Decode a model (signed literals, as printed by SAT solvers).
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Decide the CNF with the built-in DPLL.
    #[arg(long)]
    pub check: bool,
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    #[arg(long)]
    pub strategy_out: Option<PathBuf>,
}

/// Machine record plus a one-line human summary.
struct Report {
    fields: Map<String, Value>,
    summary: String,
    code: i32,
}

impl Report {
    fn new(command: &str, status: Status, reason: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        fields.insert("status".into(), json!(status));
        fields.insert("reason".into(), json!(reason));
        Report {
            fields,
            summary: format!("{status} ({reason})"),
            code: exit_code(status),
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.into(), value);
    }

    fn file(&mut self, path: &Path, text: &str) -> Result<()> {
        std::fs::write(path, text)?;
        let files = self.fields.entry("files").or_insert_with(|| json!({}));
        files[path.display().to_string()] = json!(hex::encode(Sha256::digest(text.as_bytes())));
        Ok(())
    }
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Winning => EXIT_WINNING,
        Status::Losing => EXIT_LOSING,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_WINNING
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    if let Some(b) = cli.verify_bound {
        set_verify_bound(b);
    }
    match dispatch(&cli) {
        Ok(r) => {
            if cli.json {
                let _ = writeln!(out, "{}", Value::Object(r.fields));
            } else {
                let _ = writeln!(out, "{}", r.summary);
            }
            r.code
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({"status": "error", "error": e.to_string()})
                );
            }
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Verify { game, strategy } => verify_cmd(game, strategy),
        Command::Solve(a) => solve_cmd(a),
        Command::Construct(a) => construct_cmd(a),
        Command::Rook(a) => rook_cmd(a),
        Command::Catalogue { family } => catalogue_cmd(family, cli.seed),
        Command::Named { id, verify, out } => named_cmd(id, *verify, out.as_deref()),
        Command::Dimacs(a) => dimacs_cmd(a),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| HatsError::Parse(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        HatsError::Json(j) => HatsError::Parse(format!("{}: {j}", path.display())),
        other => other,
    })
}

fn load_game(path: &Path) -> Result<Game> {
    let text = read(path)?;
    in_file(path, Game::from_json(&text))
}

fn env_budget() -> Option<u64> {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
}

fn budget(flag: Option<u64>) -> Option<u64> {
    flag.or_else(env_budget)
}

fn verify_cmd(game: &Path, strategy: &Path) -> Result<Report> {
    let g = load_game(game)?;
    let s = in_file(strategy, Strategy::from_json(&g, &read(strategy)?))?;
    let v = verify_strategy(&g, &s)?;
    let mut r = if v.winning {
        Report::new("verify", Status::Winning, "all arrangements")
    } else {
        Report::new("verify", Status::Losing, "refuted")
    };
    r.set("arrangements", json!(v.arrangements));
    r.set("digest", json!(g.digest()));
    if let Some(a) = &v.first_losing {
        r.set("first_losing", json!(a.0));
        r.summary = format!("losing: nobody guesses right on {:?}", a.0);
    } else {
        r.summary = format!("winning on all {} arrangements", v.arrangements);
    }
    Ok(r)
}

fn verdict_report(command: &str, game: &Game, v: &Verdict) -> Report {
    let mut r = Report::new(command, v.status, &v.reason);
    r.set("digest", json!(game.digest()));
    r
}

fn write_strategy(
    r: &mut Report,
    path: Option<&Path>,
    game: &Game,
    s: Option<&Strategy>,
) -> Result<()> {
    if let (Some(p), Some(s)) = (path, s) {
        r.file(p, &s.to_json(game))?;
    }
    Ok(())
}

fn solve_cmd(a: &SolveArgs) -> Result<Report> {
    let game = load_game(&a.game)?;
    let limits = Limits {
        nodes: budget(a.budget_nodes),
        time: a.time_limit.map(Duration::from_secs),
        symmetry: !a.no_symmetry,
        parallel: a.parallel,
    };
    let method = match a.method {
        MethodArg::Csp => Method::Csp,
        MethodArg::Rook => Method::Rook,
        MethodArg::Naive => Method::Naive,
    };
    let res = solve_with(&game, method, &limits)?;
    let mut r = verdict_report("solve", &game, &res.verdict);
    r.set("stats", json!(res.stats));
    write_strategy(
        &mut r,
        a.strategy_out.as_deref(),
        &game,
        res.verdict.witness.as_ref(),
    )?;
    if let Some(p) = &a.dimacs {
        r.file(p, &to_dimacs(&game)?)?;
    }
    r.summary = format!(
        "{} ({}, {} nodes)",
        res.verdict.status, res.verdict.reason, res.stats.nodes
    );
    Ok(r)
}

fn strategy_path(game: &Path) -> PathBuf {
    let stem = game
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    game.with_file_name(format!("{stem}.strategy.json"))
}

fn load_operand(path: &Path, nodes: Option<u64>) -> Result<ConstructedGame> {
    let game = load_game(path)?;
    let sp = strategy_path(path);
    if sp.exists() {
        let s = in_file(&sp, Strategy::from_json(&game, &read(&sp)?))?;
        return ConstructedGame::given(game, s);
    }
    let v = solve_with(
        &game,
        Method::Csp,
        &Limits {
            nodes,
            ..Limits::default()
        },
    )?
    .verdict;
    match v.status {
        Status::Winning => {
            ConstructedGame::given(game, v.witness.expect("winning verdict has a witness"))
        }
        Status::Losing => Ok(ConstructedGame::assumed_losing(game, "solver")),
        Status::Unknown => Err(HatsError::Precondition(format!(
            "{}: no strategy file and the solver ran out of budget",
            path.display()
        ))),
    }
}

fn list(s: &Option<String>, what: &str) -> Result<Vec<String>> {
    let s = s
        .as_deref()
        .ok_or_else(|| HatsError::Precondition(format!("--{what} is required for this rule")))?;
    Ok(s.split(',')
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect())
}

fn groups(s: &Option<String>) -> Result<Vec<Vec<String>>> {
    let s = s
        .as_deref()
        .ok_or_else(|| HatsError::Precondition("--marked is required for this rule".into()))?;
    Ok(s.split(';')
        .map(|g| {
            g.split(',')
                .map(|x| x.trim().to_string())
                .filter(|x| !x.is_empty())
                .collect()
        })
        .collect())
}

fn exactly<T>(items: &[T], n: usize, what: &str) -> Result<()> {
    if items.len() != n {
        return Err(HatsError::Precondition(format!(
            "expected {n} {what}, got {}",
            items.len()
        )));
    }
    Ok(())
}

fn construct_cmd(a: &ConstructArgs) -> Result<Report> {
    let nodes = budget(a.budget_nodes);
    let ops = a
        .operands
        .iter()
        .map(|p| load_operand(p, nodes))
        .collect::<Result<Vec<_>>>()?;
    let one = |n: usize| exactly(&ops, n, "operands");
    let fresh = |g: &ConstructedGame, k: usize, base: &str| -> Result<Vec<String>> {
        match &a.name {
            Some(_) => {
                let names = list(&a.name, "name")?;
                exactly(&names, k, "names")?;
                Ok(names)
            }
            None => {
                let mut names = Vec::new();
                for i in 0..k {
                    let mut n = g.game.fresh_name(&format!(
                        "{base}{}",
                        if k > 1 {
                            (i + 1).to_string()
                        } else {
                            String::new()
                        }
                    ));
                    while names.contains(&n) {
                        n.push('_');
                    }
                    names.push(n);
                }
                Ok(names)
            }
        }
    };
    let at = || {
        a.at.clone()
            .ok_or_else(|| HatsError::Precondition("--at is required for this rule".into()))
    };
    let cg = match a.rule {
        Rule::Product => {
            one(2)?;
            product(&ops[0], &ops[1], &at()?)?
        }
        Rule::Substitute => {
            one(2)?;
            substitute(&ops[0], &at()?, &ops[1])?
        }
        Rule::Attach2 | Rule::Attach2Edge | Rule::LosingAttachTwo => {
            one(1)?;
            let to = list(&a.to, "to")?;
            exactly(&to, 2, "attachment vertices")?;
            let name = fresh(&ops[0], 1, "X")?;
            match a.rule {
                Rule::Attach2 => attach_vertex2(&ops[0], &to[0], &to[1], &name[0])?,
                Rule::Attach2Edge => attach_vertex2_to_edge(&ops[0], &to[0], &to[1], &name[0])?,
                _ => losing_attach_two(&ops[0], &to[0], &to[1], &name[0])?,
            }
        }
        Rule::Zabc => {
            one(1)?;
            let to = list(&a.to, "to")?;
            exactly(&to, 2, "attachment vertices (Z,C)")?;
            let names = fresh(&ops[0], 2, "X")?;
            attach_path_zabc(&ops[0], &to[0], &to[1], (&names[0], &names[1]))?
        }
        Rule::AttachLeaf => {
            one(1)?;
            let to = list(&a.to, "to")?;
            exactly(&to, 1, "attachment vertices")?;
            let k = a
                .k
                .ok_or_else(|| HatsError::Precondition("--k is required for attach-leaf".into()))?;
            let name = fresh(&ops[0], 1, "X")?;
            attach_leaf(&ops[0], &to[0], k, &name[0])?
        }
        Rule::RemoveLeaf => {
            one(1)?;
            remove_leaf(&ops[0], &at()?)?
        }
        Rule::LosingPendant => {
            one(1)?;
            let to = list(&a.to, "to")?;
            exactly(&to, 1, "attachment vertices")?;
            let name = fresh(&ops[0], 1, "X")?;
            losing_pendant(&ops[0], &to[0], &name[0])?
        }
        Rule::GlueLosing => {
            one(2)?;
            glue_losing(&ops[0], &ops[1], &at()?)?
        }
        Rule::Stitch | Rule::Sew => {
            one(2)?;
            let g = groups(&a.marked)?;
            exactly(&g, 2, "marked groups")?;
            if a.rule == Rule::Sew {
                exactly(&g[0], 1, "sewn vertices")?;
                exactly(&g[1], 1, "sewn vertices")?;
                sew(&ops[0], &g[0][0], &ops[1], &g[1][0])?
            } else {
                let m1: Vec<&str> = g[0].iter().map(String::as_str).collect();
                let m2: Vec<&str> = g[1].iter().map(String::as_str).collect();
                stitch(&ops[0], &m1, &ops[1], &m2)?
            }
        }
        Rule::Fasten | Rule::FastenSingle | Rule::Cone => {
            if ops.len() < 2 {
                return Err(HatsError::Precondition(
                    "need a base game and its components".into(),
                ));
            }
            let g = groups(&a.marked)?;
            exactly(&g, ops.len() - 1, "marked groups")?;
            let comps = ops[1..].iter().cloned().zip(g);
            match a.rule {
                Rule::Fasten => fasten(&ops[0], &comps.collect::<Vec<_>>())?,
                Rule::FastenSingle => {
                    let c = comps
                        .map(|(cg, m)| {
                            exactly(&m, 1, "marked vertices").map(|_| (cg, m[0].clone()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    fasten_single(&ops[0], &c)?
                }
                _ => {
                    let apex = a.apex.clone().ok_or_else(|| {
                        HatsError::Precondition("--apex is required for cone".into())
                    })?;
                    let c = comps
                        .map(|(game, m)| {
                            exactly(&m, 1, "marked vertices").map(|_| ConeComponent {
                                game,
                                apex: apex.clone(),
                                marked: m[0].clone(),
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    cone(&ops[0], &c)?
                }
            }
        }
        Rule::Restrict => {
            one(1)?;
            let pairs = list(&a.set, "set")?
                .iter()
                .map(|kv| {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| HatsError::Parse(format!("`{kv}` is not NAME=HATNESS")))?;
                    let h = v
                        .parse::<u32>()
                        .map_err(|_| HatsError::Parse(format!("bad hatness in `{kv}`")))?;
                    Ok((k.to_string(), h))
                })
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<(&str, u32)> = pairs.iter().map(|(k, h)| (k.as_str(), *h)).collect();
            restrict(&ops[0], &refs)?
        }
    };
    constructed_report("construct", &cg, &a.out)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn constructed_report(command: &str, cg: &ConstructedGame, out: &Path) -> Result<Report> {
    let mut r = Report::new(command, cg.status, &cg.reason);
    r.set("digest", json!(cg.game.digest()));
    r.set("check", json!(format!("{:?}", cg.check)));
    r.set("vertices", json!(cg.game.len()));
    r.file(&with_suffix(out, ".json"), &cg.to_json())?;
    if let Some(s) = &cg.witness {
        r.file(&with_suffix(out, ".strategy.json"), &s.to_json(&cg.game))?;
    }
    r.summary = format!(
        "{} ({}), {} vertices, {:?}",
        cg.status,
        cg.reason,
        cg.game.len(),
        cg.check
    );
    Ok(r)
}

fn board_report(
    command: &str,
    pair: &BoardPair,
    v: &BoardVerdict,
    out: Option<&Path>,
) -> Result<Report> {
    let mut r = Report::new(command, v.status, &v.reason);
    r.set("left", json!(pair.left.to_string()));
    r.set("right", json!(pair.right.to_string()));
    r.set("nodes", json!(v.nodes));
    if let (Some(p), Some(w)) = (out, &v.witness) {
        r.file(p, &w.to_json())?;
    }
    r.summary = format!("{pair}: {} ({})", v.status, v.reason);
    Ok(r)
}

fn rook_cmd(a: &RookArgs) -> Result<Report> {
    let pair = BoardPair::new(a.left, a.right);
    let piece = match a.piece {
        PieceArg::Rook => Piece::Rook,
        PieceArg::Queen => Piece::Queen,
        PieceArg::King => Piece::King,
    };
    let mut r = if let Some(path) = &a.verify {
        let s = in_file(path, RookStrategyPair::from_json(&read(path)?))?;
        let by_labels = verify_board_strategy(&pair, &s, piece)?;
        let direct = verify_board_by_enumeration(&pair, &s, piece)?;
        if by_labels.winning != direct.winning {
            return Err(HatsError::Internal(
                "label check and enumeration disagree".into(),
            ));
        }
        let mut r = if direct.winning {
            Report::new("rook", Status::Winning, "verified")
        } else {
            Report::new("rook", Status::Losing, "refuted")
        };
        if let Some((i, q)) = direct.violation {
            r.set("violation", json!([i, q]));
            r.summary = format!("{pair}: losing, kings on {i} and {q} escape");
        } else {
            r.summary = format!("{pair}: winning on all king pairs");
        }
        r
    } else if a.catalogue {
        let v = match piece {
            Piece::Rook => catalogue_rook(&pair)?,
            Piece::King => king_check_classify(&pair),
            Piece::Queen => BoardVerdict::unknown("no case table for queens"),
        };
        board_report("rook", &pair, &v, a.strategy_out.as_deref())?
    } else {
        let v = solve_board(&pair, piece, budget(a.budget_nodes), !a.no_symmetry)?;
        board_report("rook", &pair, &v, a.strategy_out.as_deref())?
    };
    if let Some(p) = &a.dimacs {
        r.file(p, &board_to_dimacs(&pair, piece))?;
    }
    r.set("piece", json!(format!("{piece:?}").to_lowercase()));
    Ok(r)
}

fn catalogue_cmd(family: &Family, seed: u64) -> Result<Report> {
    match family {
        Family::Clique {
            hats,
            strategy,
            strategy_out,
        } => {
            let v = clique_classify(hats)?;
            let game = clique_game(hats)?;
            let mut r = verdict_report("catalogue", &game, &v);
            if v.status == Status::Winning {
                let s = match strategy {
                    CliqueStrategy::Arithmetic => arithmetic_clique_strategy(hats)?,
                    CliqueStrategy::Hall => hall_clique_strategy(hats, 1_000_000)?,
                };
                r.set("precise", json!(is_precise(&game, &s)?));
                write_strategy(&mut r, strategy_out.as_deref(), &game, Some(&s))?;
            }
            Ok(r)
        }
        Family::AlmostClique { hats } => {
            let v = almost_clique_classify(hats)?;
            let game = crate::catalogue::almost_clique_game(hats)?;
            Ok(verdict_report("catalogue", &game, &v))
        }
        Family::Cycle { hats, strategy_out } => {
            let names: Vec<String> = (0..hats.len())
                .map(|i| ((b'A' + (i % 26) as u8) as char).to_string())
                .collect();
            let vertices: Vec<(&str, u32)> = names
                .iter()
                .map(String::as_str)
                .zip(hats.iter().copied())
                .collect();
            let game = Game::cycle(&vertices)?;
            let v = cycle_classify(&game, "A")?;
            let mut r = verdict_report("catalogue", &game, &v);
            write_strategy(&mut r, strategy_out.as_deref(), &game, v.witness.as_ref())?;
            Ok(r)
        }
        Family::Sylvester { n } => {
            let m = sylvester_max_hatness(*n)?;
            let mut r = Report::new("catalogue", Status::Winning, "sylvester");
            r.set("max_hatness", json!(m.to_string()));
            r.summary = m.to_string();
            r.code = EXIT_WINNING;
            Ok(r)
        }
        Family::Queens5 { samples, slice } => {
            let rep = queen_5player_11x11(*slice, *samples, seed)?;
            let ok = rep.failures == 0 && rep.labeling_valid && rep.dominated == 121;
            let mut r = if ok {
                Report::new("catalogue", Status::Winning, "five queens")
            } else {
                Report::new("catalogue", Status::Losing, "five queens")
            };
            r.summary = format!(
                "{} cells dominated, {} ordered and {} random placements, {} failures",
                rep.dominated, rep.exhaustive_checked, rep.random_checked, rep.failures
            );
            r.set("report", serde_json::to_value(&rep)?);
            Ok(r)
        }
    }
}

fn named_cmd(id: &str, verify: bool, out: Option<&Path>) -> Result<Report> {
    let cg = named_game(id)?;
    let mut r = match out {
        Some(p) => constructed_report("named", &cg, p)?,
        None => {
            let mut r = Report::new("named", cg.status, &cg.reason);
            r.set("digest", json!(cg.game.digest()));
            r.set("vertices", json!(cg.game.len()));
            r.set("hatnesses", json!(cg.game.hatnesses()));
            r
        }
    };
    r.set("id", json!(id));
    if verify {
        let v = verify_strategy(&cg.game, cg.witness()?)?;
        r.set("arrangements", json!(v.arrangements));
        if !v.winning {
            return Err(HatsError::Internal(format!(
                "named game `{id}` fails verification"
            )));
        }
        r.summary = format!("{id}: winning on all {} arrangements", v.arrangements);
    } else {
        r.summary = format!("{id}: {} ({} vertices)", cg.status, cg.game.len());
    }
    Ok(r)
}

/// Reads signed literals, skipping `s`/`c` lines and a leading `v`.
fn parse_model(text: &str, num_vars: usize) -> Result<Vec<bool>> {
    let mut model = vec![false; num_vars];
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('s') || line.starts_with('c') || line.is_empty() {
            continue;
        }
        for tok in line.split_whitespace().filter(|t| *t != "v") {
            let lit: i64 = tok
                .parse()
                .map_err(|_| HatsError::Parse(format!("bad literal `{tok}` in model")))?;
            let var = lit.unsigned_abs() as usize;
            if var == 0 {
                continue;
            }
            if var > num_vars {
                return Err(HatsError::Parse(format!(
                    "literal {lit} exceeds {num_vars} variables"
                )));
            }
            model[var - 1] = lit > 0;
        }
    }
    Ok(model)
}

fn dimacs_cmd(a: &DimacsArgs) -> Result<Report> {
    let game = load_game(&a.game)?;
    let text = to_dimacs(&game)?;
    let cnf = parse_dimacs(&text)?;
    let mut r = Report::new("dimacs", Status::Unknown, "exported");
    r.set("digest", json!(game.digest()));
    r.set("variables", json!(cnf.num_vars));
    r.set("clauses", json!(cnf.clauses.len()));
    r.summary = format!("{} variables, {} clauses", cnf.num_vars, cnf.clauses.len());
    let mut decided = None;
    if let Some(p) = &a.model {
        let model = parse_model(&read(p)?, cnf.num_vars)?;
        let s = decode_model(&game, &model)?;
        let v = verify_strategy(&game, &s)?;
        decided = Some(if v.winning {
            Verdict::winning(Some(s), "model")
        } else {
            Verdict::losing("model refuted")
        });
    } else if a.check {
        decided = Some(match dpll(&cnf, budget(a.budget_nodes))? {
            None => Verdict::losing("unsatisfiable"),
            Some(model) => {
                let s = decode_model(&game, &model)?;
                Verdict::winning(Some(s), "satisfiable")
            }
        });
    }
    if let Some(p) = &a.out {
        r.file(p, &text)?;
    }
    if let Some(v) = decided {
        r.fields.insert("status".into(), json!(v.status));
        r.fields.insert("reason".into(), json!(v.reason));
        r.code = exit_code(v.status);
        r.summary = format!("{} ({})", v.status, v.reason);
        write_strategy(&mut r, a.strategy_out.as_deref(), &game, v.witness.as_ref())?;
    } else if a.out.is_none() {
        r.summary = text.trim_end().to_string();
        r.code = EXIT_WINNING;
    } else {
        r.code = EXIT_WINNING;
    }
    Ok(r)
}
