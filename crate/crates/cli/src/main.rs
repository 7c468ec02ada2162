//! `omnitonal` command line.
//!
//! Every command writes JSON, one object per line, each carrying a
//! versioned `schema` field; `census` can write CSV instead. Exit codes:
//! 0 success, 1 resource budget exceeded, 2 input error.

mod census;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use omnitonal::amoeba::{amoeba_verdict, AmoebaOptions, DEFAULT_NODE_BUDGET};
use omnitonal::coloring::{
    bal_k4_extremal, contains_balanced, ot_star_extremal, split_graph_coloring, tone_set, type_a_coloring,
    type_b_coloring,
};
use omnitonal::formulas;
use omnitonal::graph6::parse_graph6_lines;
use omnitonal::named::parse_named;
use omnitonal::oracle::{
    brute_force_bal, brute_force_bal_r, brute_force_ex, brute_force_ot, OracleOptions, DEFAULT_COLORING_BUDGET,
    DEFAULT_EX_NODE_BUDGET,
};
use omnitonal::spectra::tonal_report;
use omnitonal::{parse_graph6, Coloring, Error, Graph, Jobs};

const NAMED_HELP: &str = "Graph name: K{m}, K{p},{q}, P{k} (k edges), C{k}, S{k} (star K_{1,k}), \
split{p},{q}, paw (alias K13+pendant); optional suffixes +e (add least missing edge) and +pendant. \
Underscores and braces are ignored, so K_{1,4} works.";

#[derive(Parser)]
#[command(name = "omnitonal", version, about = "Balanceable, r-tonal and omnitonal graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cut/induced spectra and tonality verdicts for each input graph.
    Classify(ClassifyArgs),
    /// Edge-replacement connectivity of the copies of a graph over a range of n.
    Amoeba(AmoebaArgs),
    /// Exhaustive bal / bal_r / ot / ex for small n.
    Oracle(OracleArgs),
    /// Evaluate a closed-form value or bound.
    Formula(FormulaArgs),
    /// Classify a graph6 file into a CSV or JSON table.
    Census(census::CensusArgs),
    /// Generate a colouring of K_n or inspect one.
    Coloring(ColoringArgs),
}

#[derive(Args, Clone)]
struct GraphArgs {
    #[arg(long, help = NAMED_HELP)]
    named: Option<String>,
    /// Graph in graph6 format.
    #[arg(long, conflicts_with = "named")]
    graph6: Option<String>,
}

impl GraphArgs {
    fn graph(&self) -> Result<Graph, Failure> {
        match (&self.named, &self.graph6) {
            (Some(name), _) => Ok(parse_named(name)?),
            (None, Some(code)) => Ok(parse_graph6(code)?),
            (None, None) => Err(Failure::Input("give --named or --graph6".into())),
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    /// graph6 file (stdin when omitted and no --named is given).
    input: Option<PathBuf>,
    #[arg(long, help = NAMED_HELP)]
    named: Vec<String>,
    /// Worker threads; 0 uses every available core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct AmoebaArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Inclusive range of n, `a..b`; defaults to v(G)+1 .. v(G)+3.
    #[arg(long)]
    range: Option<String>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u128,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Bal,
    BalR,
    Ot,
    Ex,
}

#[derive(Args)]
struct OracleArgs {
    mode: OracleMode,
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    n: usize,
    /// Tone for bal-r.
    #[arg(long)]
    r: Option<usize>,
    /// With odd e(G), require both balanced patterns.
    #[arg(long)]
    strong: bool,
    #[arg(long, default_value_t = DEFAULT_COLORING_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = DEFAULT_EX_NODE_BUDGET)]
    ex_budget: u128,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Include elapsed time (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FormulaName {
    BalStar,
    BalPath,
    BalK4,
    OtStar,
    OtTreeBound,
    ErdosGallaiPathBound,
    KstBound,
    ZarankiewiczBound,
    RtzQ,
    RtzPhi,
    RtzM,
    ZeroSumPattern,
}

#[derive(Args)]
struct FormulaArgs {
    name: FormulaName,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    /// Edge count for zero_sum_pattern.
    #[arg(long)]
    e: Option<u64>,
}

#[derive(Args)]
struct ColoringArgs {
    #[command(subcommand)]
    kind: ColoringKind,
}

#[derive(Subcommand)]
enum ColoringKind {
    /// Red clique on t vertices.
    TypeA {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Red complete bipartite K_{t, n-t}.
    TypeB {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Red complete (p, n-p)-split graph, optionally plus one edge.
    Split {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        extra_edge: bool,
    },
    /// Extremal colouring for full tone coverage of K_{1,k} (n >= 4k).
    OtStar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Extremal colouring without a balanced K_4.
    BalK4 {
        #[arg(long)]
        n: usize,
    },
    /// Tone set of a colouring line (`n;hex`) with respect to a graph.
    Tones {
        #[arg(long)]
        line: String,
        #[command(flatten)]
        graph: GraphArgs,
    },
}

/// Why a command stopped.
pub(crate) enum Failure {
    Budget(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

#[derive(Serialize)]
pub(crate) struct Record<'a, T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

pub(crate) fn emit<T: Serialize>(out: &mut (impl Write + ?Sized), schema: &'static str, body: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, &Record { schema, body }).map_err(io::Error::other)?;
    out.write_all(b"\n")
}

fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Input(format!("range `{text}` is not of the form a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

pub(crate) fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path.filter(|p| p.as_os_str() != "-") {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn classify(args: ClassifyArgs, out: &mut impl Write) -> Result<(), Failure> {
    let mut graphs = Vec::new();
    let mut bad_lines = 0;
    for name in &args.named {
        graphs.push(parse_named(name)?);
    }
    if args.named.is_empty() || args.input.is_some() {
        let text = read_input(args.input.as_ref())?;
        for (line, parsed) in parse_graph6_lines(&text) {
            match parsed {
                Ok(g) => graphs.push(g),
                Err(e) => {
                    eprintln!("line {line}: {e}");
                    bad_lines += 1;
                }
            }
        }
    }
    let reports = omnitonal::par::map(&graphs, Jobs(args.jobs), tonal_report);
    for r in &reports {
        emit(out, "omnitonal.classify/1", r)?;
    }
    if bad_lines > 0 {
        return Err(Failure::Input(format!("{bad_lines} malformed line(s)")));
    }
    Ok(())
}

fn amoeba(args: AmoebaArgs, out: &mut impl Write) -> Result<(), Failure> {
    let g = args.graph.graph()?;
    let core = g.strip_isolated();
    let (a, b) = match &args.range {
        Some(r) => parse_range(r)?,
        None => (core.n() + 1, core.n() + 3),
    };
    let opts = AmoebaOptions { node_budget: args.node_budget, jobs: Jobs(args.jobs) };
    let verdict = amoeba_verdict(&core, a, b, &opts)?;
    emit(out, "omnitonal.amoeba/1", &verdict)?;
    Ok(())
}

#[derive(Serialize)]
struct Timed<'a, T: Serialize> {
    #[serde(flatten)]
    body: &'a T,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

fn oracle(args: OracleArgs, out: &mut impl Write) -> Result<(), Failure> {
    let g = args.graph.graph()?;
    let opts = OracleOptions { coloring_budget: args.budget, ex_node_budget: args.ex_budget, jobs: Jobs(args.jobs) };
    let res = match args.mode {
        OracleMode::Bal => brute_force_bal(args.n, &g, args.strong, &opts)?,
        OracleMode::BalR => {
            let r = args.r.ok_or_else(|| Failure::Input("bal-r needs --r".into()))?;
            brute_force_bal_r(args.n, &g, r, &opts)?
        }
        OracleMode::Ot => brute_force_ot(args.n, &g, &opts)?,
        OracleMode::Ex => brute_force_ex(args.n, &g, &opts)?,
    };
    let elapsed_ms = args.timing.then_some(res.elapsed.as_secs_f64() * 1e3);
    emit(out, "omnitonal.oracle/1", &Timed { body: &res, elapsed_ms })?;
    Ok(())
}

fn need(value: Option<u64>, flag: &str) -> Result<u64, Failure> {
    value.ok_or_else(|| Failure::Input(format!("this formula needs --{flag}")))
}

#[derive(Serialize)]
struct Scalar {
    name: &'static str,
    value: serde_json::Value,
}

fn formula(args: FormulaArgs, out: &mut impl Write) -> Result<(), Failure> {
    use FormulaName::*;
    let n = || need(args.n, "n");
    let k = || need(args.k, "k");
    let t = || need(args.t, "t");
    let schema = "omnitonal.formula/1";
    let fv = match args.name {
        BalStar => formulas::bal_star(n()?, k()?)?,
        BalPath => formulas::bal_path(n()?, k()?)?,
        BalK4 => formulas::bal_k4(n()?),
        OtStar => formulas::ot_star(n()?, k()?)?,
        OtTreeBound => formulas::ot_tree_bound(n()?, k()?)?,
        ErdosGallaiPathBound => formulas::erdos_gallai_path_bound(n()?, k()?)?,
        KstBound => formulas::kst_bound(n()?, t()?)?,
        ZarankiewiczBound => formulas::zarankiewicz_bound(n()?, t()?)?,
        RtzPhi => formulas::rtz_phi(n()?, t()?)?,
        RtzQ => {
            let q = formulas::rtz_q(t()?)?;
            emit(out, schema, &Scalar { name: "rtz_q", value: q.into() })?;
            return Ok(());
        }
        RtzM => {
            let (m, source) = formulas::rtz_m(t()?)?;
            let value = serde_json::json!({ "m": m.to_string(), "source": source });
            emit(out, schema, &Scalar { name: "rtz_m", value })?;
            return Ok(());
        }
        ZeroSumPattern => {
            let (r, b) = formulas::zero_sum_pattern(need(args.p, "p")?, need(args.q, "q")?, need(args.e, "e")?)?;
            let value = serde_json::json!({ "r": r, "b": b });
            emit(out, schema, &Scalar { name: "zero_sum_pattern", value })?;
            return Ok(());
        }
    };
    emit(out, schema, &fv)?;
    Ok(())
}

#[derive(Serialize)]
struct ColoringRecord {
    coloring: Coloring,
    red_edges: usize,
    blue_edges: usize,
}

#[derive(Serialize)]
struct TonesRecord {
    coloring: Coloring,
    graph6: String,
    tones: Vec<usize>,
    full: bool,
    balanced: bool,
}

fn coloring(args: ColoringArgs, out: &mut impl Write) -> Result<(), Failure> {
    let c = match args.kind {
        ColoringKind::TypeA { n, t } => type_a_coloring(n, t)?,
        ColoringKind::TypeB { n, t } => type_b_coloring(n, t)?,
        ColoringKind::Split { n, p, extra_edge } => split_graph_coloring(n, p, extra_edge)?,
        ColoringKind::OtStar { n, k } => ot_star_extremal(n, k)?,
        ColoringKind::BalK4 { n } => bal_k4_extremal(n)?,
        ColoringKind::Tones { line, graph } => {
            let c: Coloring = line.parse()?;
            let g = graph.graph()?;
            let tones = tone_set(&c, &g)?;
            let record = TonesRecord {
                coloring: c,
                graph6: omnitonal::to_graph6(&g),
                tones: tones.achieved(),
                full: tones.is_full(),
                balanced: contains_balanced(&c, &g, false)?.present,
            };
            emit(out, "omnitonal.tones/1", &record)?;
            return Ok(());
        }
    };
    let record = ColoringRecord { coloring: c, red_edges: c.red_count(), blue_edges: c.blue_count() };
    emit(out, "omnitonal.coloring/1", &record)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let started = Instant::now();
    let result = match cli.command {
        Command::Classify(a) => classify(a, &mut out),
        Command::Amoeba(a) => amoeba(a, &mut out),
        Command::Oracle(a) => oracle(a, &mut out),
        Command::Formula(a) => formula(a, &mut out),
        Command::Census(a) => census::run(a, &mut out, started),
        Command::Coloring(a) => coloring(a, &mut out),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
