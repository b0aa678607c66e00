//! Command-line front end for `indel-cover`: ball sizes, bounds, code
//! construction, verification and exact search, with JSON reports and a
//! plain-text code-file format.

pub mod codefile;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indel_cover as ic;
use indel_cover::{Alphabet, Code, Direction, Word};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Core(#[from] ic::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(ic::Error::RetriesExhausted { .. } | ic::Error::BudgetExceeded { .. }) => 1,
            CliError::Core(ic::Error::NotCovering { .. }) => 1,
            _ => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "indelcover", version, about = "Covering codes for insertion and deletion channels")]
pub struct Cli {
    /// Worker threads for verification and enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print the report on one line instead of pretty-printed.
    #[arg(long, global = true)]
    pub compact: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dir {
    #[value(alias = "insertion")]
    Ins,
    #[value(alias = "deletion")]
    Del,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Ins => Direction::Insertion,
            Dir::Del => Direction::Deletion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Sphere,
    General,
    Closed,
    Weighted,
    Asymptotic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size (and optionally the elements) of an insertion or deletion ball.
    Balls(BallsArgs),
    /// Lower bounds on the size of covering codes.
    Bounds(BoundsArgs),
    /// Build a covering code and write it to a code file.
    Construct(ConstructArgs),
    /// Check whether a code file covers its target space.
    Verify(VerifyArgs),
    /// Exact minimum covering code by branch and bound.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct BallsArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub dir: Dir,
    /// Center word; required for deletion balls.
    #[arg(long)]
    pub center: Option<String>,
    /// Also list the ball elements.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long = "R")]
    pub radius: usize,
    #[arg(long)]
    pub dir: Dir,
    /// Defaults to `sphere` for insertions and `general` for deletions.
    #[arg(long)]
    pub kind: Option<Kind>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub method: Method,
    /// Output code file.
    #[arg(short = 'o', long = "out", global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// Sampling intensity, e.g. `3` or `5/2`.
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub max_retries: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Method {
    /// Varshamov-Tenengolts residue class.
    Vt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: u64,
    },
    /// Non-binary VT residue class.
    Nbvt {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: u64,
        #[arg(long, default_value_t = 0)]
        b: u64,
    },
    /// Greedy set cover.
    Greedy {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long = "R")]
        radius: usize,
        #[arg(long)]
        dir: Dir,
    },
    /// Randomized recursive single-insertion cover.
    #[command(name = "rand1ins")]
    Rand1Ins {
        #[command(flatten)]
        common: RandomArgs,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Randomized recursive R-insertion cover.
    #[command(name = "randRins")]
    RandRIns {
        #[command(flatten)]
        common: RandomArgs,
        #[arg(long = "R")]
        radius: usize,
    },
    /// Randomized recursive R-deletion cover.
    #[command(name = "randRdel")]
    RandRDel {
        #[command(flatten)]
        common: RandomArgs,
        #[arg(long = "R")]
        radius: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long = "R")]
    pub radius: usize,
    #[arg(long)]
    pub dir: Dir,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long = "R")]
    pub radius: usize,
    #[arg(long)]
    pub dir: Dir,
    #[arg(long, default_value_t = ic::search::DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
}

/// A finished command: its report and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, exit_code: 0 }
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Balls(a) => balls(a),
        Command::Bounds(a) => bounds(a),
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
    }
}

/// Runs `cli` on a pool of the requested size and renders the report.
pub fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let start = Instant::now();
    let outcome = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| usage(e.to_string()))?
            .install(|| run(&cli.command))?,
        None => run(&cli.command)?,
    };
    let value = outcome.report.to_value(Some(start.elapsed()));
    let text = if cli.compact {
        serde_json::to_string(&value)
    } else {
        serde_json::to_string_pretty(&value)
    }
    .expect("reports serialize");
    Ok((text, outcome.exit_code))
}

fn big(v: &BigUint) -> Value {
    v.to_string().into()
}

fn balls(a: &BallsArgs) -> Result<Outcome, CliError> {
    let dir = Direction::from(a.dir);
    let mut r = Report::new("balls");
    r.param("q", a.q).param("t", a.t).param("dir", dir.as_str());
    let center = match &a.center {
        Some(text) => {
            let w = Word::parse(text, Alphabet::new(a.q)?)?;
            if a.n.is_some_and(|n| n != w.len()) {
                return Err(usage(format!("--n disagrees with the center length {}", w.len())));
            }
            r.param("center", w.to_string());
            Some(w)
        }
        None => None,
    };
    let n = a.n.or(center.as_ref().map(Word::len)).ok_or_else(|| usage("give --n or --center"))?;
    r.param("n", n);
    match (&center, dir) {
        (None, Direction::Deletion) => return Err(usage("deletion balls depend on the center; give --center")),
        (None, Direction::Insertion) => {
            if a.list {
                return Err(usage("--list needs --center"));
            }
            r.output("size", big(&ic::insertion_ball_size(a.q, n, a.t)));
        }
        (Some(w), _) => {
            let spec = ic::BallSpec::new(w.clone(), a.t, dir)?;
            r.output("size", big(&spec.size()?));
            if a.list {
                let elems: Vec<Value> = spec.elements()?.iter().map(|e| e.to_string().into()).collect();
                r.output("elements", elems);
            }
        }
    }
    Ok(Outcome::ok(r))
}

fn bounds(a: &BoundsArgs) -> Result<Outcome, CliError> {
    let dir = Direction::from(a.dir);
    let kind = a.kind.unwrap_or(match dir {
        Direction::Insertion => Kind::Sphere,
        Direction::Deletion => Kind::General,
    });
    let (q, n, radius) = (a.q, a.n, a.radius);
    let b = match (dir, kind) {
        (Direction::Insertion, Kind::Sphere) => ic::insertion_lower_bound(q, n, radius)?,
        (Direction::Deletion, Kind::Sphere) => ic::deletion_lower_bound_runs_sum(q, n, radius)?,
        (Direction::Deletion, Kind::General) => ic::deletion_lower_bound_general(q, n, radius)?,
        (Direction::Deletion, Kind::Closed) => {
            if radius != 1 {
                return Err(usage("the closed form is for R=1 only"));
            }
            ic::deletion_lower_bound_r1_closed(q, n)?
        }
        (_, Kind::Weighted) => ic::generalized_weighted_bound_exact(q, n, radius, dir)?,
        (Direction::Insertion, Kind::Asymptotic) => ic::asymptotic_insertion_lower(q, n, radius)?,
        (Direction::Deletion, Kind::Asymptotic) => ic::asymptotic_deletion_lower(q, n, radius)?,
        (Direction::Insertion, _) => return Err(usage("insertion bounds: sphere, weighted or asymptotic")),
    };
    let mut r = Report::new("bounds");
    r.param("q", q).param("n", n).param("R", radius).param("dir", dir.as_str());
    r.output("bound", report::bound(&b));
    Ok(Outcome::ok(r))
}

fn parse_rational(text: &str, what: &str) -> Result<BigRational, CliError> {
    text.parse::<BigRational>()
        .map_err(|_| usage(format!("--{what} expects an integer or p/q, got {text:?}")))
}

fn builder_params(common: &RandomArgs, r: &mut Report) -> Result<ic::BuilderParams, CliError> {
    let mut p = ic::BuilderParams::with_seed(common.seed);
    if let Some(c) = &common.c {
        p.c = parse_rational(c, "c")?;
    }
    if let Some(m) = common.max_retries {
        p.max_retries = m;
    }
    r.param("q", common.q)
        .param("n", common.n)
        .param("seed", common.seed)
        .param("c", report::rational(&p.c))
        .param("max_retries", p.max_retries);
    Ok(p)
}

fn construct(a: &ConstructArgs) -> Result<Outcome, CliError> {
    let mut r = Report::new("construct");
    let (code, radius, dir) = match &a.method {
        Method::Vt { n, a: res } => {
            r.param("method", "vt").param("n", *n).param("a", *res);
            (ic::vt_code(*n, *res)?, 1, Direction::Deletion)
        }
        Method::Nbvt { q, n, a: res, b } => {
            r.param("method", "nbvt").param("q", *q).param("n", *n).param("a", *res).param("b", *b);
            (ic::nbvt_code(*q, *n, *res, *b)?, 1, Direction::Deletion)
        }
        Method::Greedy { q, n, radius, dir } => {
            let dir = Direction::from(*dir);
            r.param("method", "greedy")
                .param("q", *q)
                .param("n", *n)
                .param("R", *radius)
                .param("dir", dir.as_str());
            (ic::greedy_cover(*q, *n, *radius, dir)?, *radius, dir)
        }
        Method::Rand1Ins { common, beta, mu } => {
            r.param("method", "rand1ins");
            let mut p = builder_params(common, &mut r)?;
            if let Some(b) = beta {
                p.beta = parse_rational(b, "beta")?;
            }
            if let Some(m) = mu {
                p.mu_target = parse_rational(m, "mu")?;
            }
            r.param("beta", report::rational(&p.beta)).param("mu", report::rational(&p.mu_target));
            let code = ic::build_single_insertion_cover(common.q, common.n, &p)?;
            (code, 1, Direction::Insertion)
        }
        Method::RandRIns { common, radius } => {
            r.param("method", "randRins").param("R", *radius);
            let p = builder_params(common, &mut r)?;
            (ic::build_insertion_cover_r(common.q, common.n, *radius, &p)?, *radius, Direction::Insertion)
        }
        Method::RandRDel { common, radius } => {
            r.param("method", "randRdel").param("R", *radius);
            let p = builder_params(common, &mut r)?;
            (ic::build_deletion_cover_r(common.q, common.n, *radius, &p)?, *radius, Direction::Deletion)
        }
    };
    let cover = ic::is_covering(&code, radius, dir)?;
    r.output("size", code.len()).verification(&cover);
    if let Some(lb) = lower_bound(&code, radius, dir) {
        r.output("lower_bound", report::bound(&lb));
    }
    if let Some(path) = &a.out {
        codefile::save(path, &code)?;
        r.output("file", path.display().to_string());
    }
    Ok(Outcome {
        report: r,
        exit_code: if cover.covered { 0 } else { 1 },
    })
}

/// The rigorous lower bound a constructed code is compared against.
fn lower_bound(code: &Code, radius: usize, dir: Direction) -> Option<ic::BoundReport> {
    let (q, n) = (code.q() as u32, code.word_len());
    match dir {
        Direction::Insertion => ic::insertion_lower_bound(q, n, radius).ok(),
        Direction::Deletion => ic::deletion_lower_bound_general(q, n, radius).ok(),
    }
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let code = codefile::load(&a.file)?;
    let dir = Direction::from(a.dir);
    let cover = ic::is_covering(&code, a.radius, dir)?;
    let mut r = Report::new("verify");
    r.param("file", a.file.display().to_string())
        .param("q", code.q())
        .param("n", code.word_len())
        .param("R", a.radius)
        .param("dir", dir.as_str());
    r.verification(&cover);
    Ok(Outcome {
        report: r,
        exit_code: if cover.covered { 0 } else { 1 },
    })
}

fn words(code: &Code) -> Value {
    code.iter().map(|w| Value::from(w.to_string())).collect()
}

fn search(a: &SearchArgs) -> Result<Outcome, CliError> {
    let dir = Direction::from(a.dir);
    let outcome = ic::min_cover_exact(a.q, a.n, a.radius, dir, a.node_budget)?;
    let mut r = Report::new("search");
    r.param("q", a.q)
        .param("n", a.n)
        .param("R", a.radius)
        .param("dir", dir.as_str())
        .param("node_budget", a.node_budget);
    let (code, exit_code) = match &outcome {
        ic::SearchOutcome::Optimal(cert) => {
            r.output("status", "optimal")
                .output("k", cert.k)
                .output("lower_bound_used", report::bound(&cert.lower_bound_used))
                .output("search_nodes", cert.search_nodes);
            (&cert.optimal_code, 0)
        }
        ic::SearchOutcome::BudgetExhausted(iv) => {
            r.output("status", "budget_exhausted")
                .output("interval", json!([iv.lower, iv.upper]))
                .output("lower_bound_used", report::bound(&iv.lower_bound_used))
                .output("search_nodes", iv.search_nodes);
            (&iv.best_code, 1)
        }
    };
    r.output("code", words(code));
    let cover = ic::is_covering(code, a.radius, dir)?;
    r.verification(&cover);
    Ok(Outcome { report: r, exit_code })
}
