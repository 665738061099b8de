mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;
use twinwidth::coloring::{self, PairKind};
use twinwidth::dominating::{self, DsOptions};
use twinwidth::families;
use twinwidth::ibp::{self, IntervalBicliquePartition};
use twinwidth::independent::{self, IsOptions};
use twinwidth::oracles;
use twinwidth::sequence::{verify_sequence, ContractionSequence};
use twinwidth::subiso;
use twinwidth::toolkit::{self, CandidatePool, GreedyConfig, TieBreak};
use twinwidth::{Error, Graph, Result};

/// Exit codes: 0 on success, 1 when the answer is a documented `NONE`
/// (no dominating set of the size, no pattern copy, not a cograph),
/// 2 on bad input or usage.
#[derive(Parser)]
#[command(
    name = "tww",
    version,
    about = "Contraction sequences of bounded red degree: verify them, construct them, \
             and run the solvers they enable"
)]
struct Cli {
    /// Re-validate solver tables after every step (slow, for debugging).
    #[arg(long, global = true)]
    assert_invariants: bool,

    /// Seed for randomized choices. Falls back to TWW_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Append a machine-readable run report to stdout.
    #[arg(long, global = true)]
    report: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a sequence against a graph and print the width it attains.
    Verify(VerifyArgs),
    /// Produce contraction sequences.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Run the sequence-driven solvers.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Color a graph using a sequence and a clique bound.
    Color(ColorArgs),
    /// Find two linear-size sets that are complete or anticomplete.
    Ehpair(GraphSeqArgs),
    /// Interval biclique partitions and distances computed over them.
    #[command(subcommand)]
    Paths(PathsCmd),
    /// Brute-force reference answers for small instances.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Time a solver over a generated instance family.
    Bench(BenchArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Sequence file; prefixes are allowed and report the width so far.
    #[arg(long)]
    seq: PathBuf,
}

#[derive(Args)]
struct GraphSeqArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seq: PathBuf,
}

#[derive(Subcommand)]
enum SeqCmd {
    /// Pick each contraction to minimize the resulting red degrees.
    Greedy(GreedyArgs),
    /// Exact minimum width by branch and bound (small graphs only).
    Exact(ExactArgs),
    /// Repeated twin contractions; fails exactly on non-cographs.
    Cograph(CographArgs),
    /// A blocky unit interval graph together with its width-2 sequence.
    UnitInterval(UnitIntervalArgs),
    /// Substitution power G^t with a sequence of the same width.
    Power(PowerArgs),
    /// Substitute one graph into a vertex of another.
    Substitute(SubstituteArgs),
}

#[derive(Args)]
struct GreedyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Write the sequence here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = PoolArg::AllPairs)]
    pool: PoolArg,
    /// Sampled pair count for the red-radius pool.
    #[arg(long, default_value_t = 32)]
    sample: usize,
    #[arg(long, value_enum, default_value_t = TieArg::LexSmallest)]
    tie: TieArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum PoolArg {
    AllPairs,
    RedRadius,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    LexSmallest,
    LexLargest,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Refuse graphs with more vertices than this.
    #[arg(long, default_value_t = 10)]
    cap: usize,
}

#[derive(Args)]
struct CographArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct UnitIntervalArgs {
    /// Interval length; vertices within distance len-1 are adjacent.
    #[arg(long)]
    len: usize,
    /// Number of contracted blocks; the graph has len * blocks vertices.
    #[arg(long)]
    blocks: usize,
    /// Where to write the generated graph.
    #[arg(long)]
    graph_out: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seq: PathBuf,
    /// Exponent; the result has n^t vertices.
    #[arg(short = 't', long)]
    exponent: u32,
    #[arg(long, default_value_t = 1_000_000)]
    cap: usize,
    #[arg(long)]
    graph_out: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SubstituteArgs {
    #[arg(long)]
    outer: PathBuf,
    #[arg(long)]
    outer_seq: PathBuf,
    /// Vertex of the outer graph to replace.
    #[arg(short = 'u', long)]
    vertex: usize,
    #[arg(long)]
    inner: PathBuf,
    #[arg(long)]
    inner_seq: PathBuf,
    #[arg(long)]
    graph_out: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Independent set of size min(k, alpha).
    Kis(KisArgs),
    /// Maximum independent set; cost grows with the stored state count.
    Mis(MisArgs),
    /// Clique of size min(k, omega), via the complement.
    Kclique(KcliqueArgs),
    /// k vertices pairwise at distance at least r.
    Scattered(ScatteredArgs),
    /// Dominating set of size at most k, or NONE.
    Kds(KdsArgs),
    /// Embed a pattern preserving its edges, or NONE.
    Subiso(SubisoArgs),
    /// Embed a pattern preserving edges and non-edges, or NONE.
    Indsub(SubisoArgs),
}

#[derive(Args)]
struct KisArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seq: PathBuf,
    #[arg(short)]
    k: usize,
    /// Weight file with one `<vertex> <weight>` line per weighted vertex;
    /// maximizes total weight among sets of size exactly min(k, alpha).
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Enumerate candidate sets by red walks instead of assembling them
    /// from stored entries. Much slower; a differential baseline.
    #[arg(long)]
    naive_enum: bool,
}

#[derive(Args)]
struct MisArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seq: PathBuf,
    /// Abort if the table ever holds more entries than this.
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
}

#[derive(Args)]
struct KcliqueArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seq: PathBuf,
    #[arg(short)]
    k: usize,
}

#[derive(Args)]
struct ScatteredArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Minimum pairwise distance.
    #[arg(short)]
    r: usize,
    #[arg(short)]
    k: usize,
    /// Sequence for the (r-1)-th power graph; a greedy one is computed
    /// when absent.
    #[arg(long)]
    power_seq: Option<PathBuf>,
}

#[derive(Args)]
struct KdsArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Sequence for the graph itself, or, with -r, for its r-th power.
    #[arg(long)]
    seq: Option<PathBuf>,
    #[arg(short)]
    k: usize,
    /// Dominate within distance r instead of 1.
    #[arg(short)]
    r: Option<usize>,
}

#[derive(Args)]
struct SubisoArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seq: PathBuf,
    /// Pattern graph in the same file format, one vertex per pattern node.
    #[arg(long)]
    pattern: PathBuf,
    /// Refuse patterns larger than this.
    #[arg(long, default_value_t = subiso::DEFAULT_PATTERN_CAP)]
    pattern_cap: usize,
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seq: PathBuf,
    /// Promise the graph triangle-free and use the flat coloring.
    #[arg(long, conflicts_with = "clique_bound")]
    tfree: bool,
    /// Color tuples under the promise that no clique has this many
    /// vertices. Without it (and without --tfree) the bound is computed
    /// by brute force for graphs of at most 25 vertices.
    #[arg(short = 't', long = "clique-bound")]
    clique_bound: Option<usize>,
}

#[derive(Subcommand)]
enum PathsCmd {
    /// Build the interval biclique partition of a graph.
    Ibp(IbpArgs),
    /// Breadth-first distances from one source, `INF` when unreachable.
    Sssp(SsspArgs),
    /// All-pairs distances, one `<u> <v> <dist>` line per pair.
    Apsp(PathsInputArgs),
    /// Largest finite distance, or `INF` on disconnected graphs.
    Diameter(PathsInputArgs),
}

#[derive(Args)]
struct IbpArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seq: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PathsInputArgs {
    /// Prebuilt partition file, as written by `paths ibp`.
    #[arg(long)]
    ibp: Option<PathBuf>,
    #[arg(long, requires = "seq")]
    graph: Option<PathBuf>,
    #[arg(long, requires = "graph")]
    seq: Option<PathBuf>,
}

#[derive(Args)]
struct SsspArgs {
    #[command(flatten)]
    input: PathsInputArgs,
    /// Source vertex (original id).
    #[arg(short)]
    source: usize,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Maximum independent set by subset enumeration.
    Alpha(OracleGraphArgs),
    /// Minimum dominating set by subset enumeration.
    Gamma(OracleGraphArgs),
    /// Chromatic number and a witness coloring.
    Chi(OracleGraphArgs),
    /// Maximum clique by subset enumeration.
    Omega(OracleGraphArgs),
    /// Exact twin-width; alias of `seq exact` that prints only the width.
    Tww(OracleTwwArgs),
    /// Breadth-first distances by plain adjacency scan.
    Bfs(OracleBfsArgs),
}

#[derive(Args)]
struct OracleGraphArgs {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct OracleTwwArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 10)]
    cap: usize,
    /// Write the witness sequence here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleBfsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(short)]
    source: usize,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Comma-separated instance sizes; empty list prints only the header.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    sizes: Vec<usize>,
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[arg(short, default_value_t = 5)]
    k: usize,
    /// Edge probability for the random-gnp family.
    #[arg(long, default_value_t = 0.05)]
    p: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    UnitInterval,
    GridSubgraph,
    RandomGnp,
    Clique,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Kis,
    Mis,
    Kds,
    Sssp,
    Diameter,
}

/// Whether the run produced a positive answer or a documented NONE.
enum Outcome {
    Answered,
    None,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Answered) => ExitCode::SUCCESS,
        Ok(Outcome::None) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify(a) => cmd_verify(cli, a),
        Command::Seq(c) => cmd_seq(cli, c),
        Command::Solve(c) => cmd_solve(cli, c),
        Command::Color(a) => cmd_color(cli, a),
        Command::Ehpair(a) => cmd_ehpair(cli, a),
        Command::Paths(c) => cmd_paths(cli, c),
        Command::Oracle(c) => cmd_oracle(cli, c),
        Command::Bench(a) => cmd_bench(cli, a),
    }
}

fn seed_of(cli: &Cli) -> u64 {
    cli.seed
        .or_else(|| std::env::var("TWW_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn print_ids(ids: &[usize]) {
    let mut out = String::new();
    for v in ids {
        let _ = writeln!(out, "{v}");
    }
    print!("{out}");
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn read_weights(path: &Path, n: usize) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    let mut w = vec![0.0; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            file: path.display().to_string(),
            line: idx + 1,
            msg,
        };
        let mut tok = line.split_whitespace();
        let v: usize = tok
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("bad vertex id".into()))?;
        let weight: f64 = tok
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("bad weight".into()))?;
        if v >= n {
            return Err(err(format!("vertex {v} out of range")));
        }
        w[v] = weight;
    }
    Ok(w)
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Result<Outcome> {
    let mut rep = cli.report.then(|| RunReport::new("verify"));
    let g = Graph::read_file(&a.graph)?;
    let seq = ContractionSequence::read_file(&a.seq)?;
    let d = verify_sequence(&g, &seq)?;
    println!("D {d}");
    if let Some(r) = rep.as_mut() {
        r.digest("graph", g.digest());
        r.digest("seq", seq.digest());
        r.param("steps", seq.len());
        r.result(format!("D {d}"));
        r.emit();
    }
    Ok(Outcome::Answered)
}

fn cmd_seq(cli: &Cli, c: &SeqCmd) -> Result<Outcome> {
    match c {
        SeqCmd::Greedy(a) => {
            let mut rep = cli.report.then(|| RunReport::new("seq greedy"));
            let g = Graph::read_file(&a.graph)?;
            let cfg = GreedyConfig {
                seed: seed_of(cli),
                pool: match a.pool {
                    PoolArg::AllPairs => CandidatePool::AllPairs,
                    PoolArg::RedRadius => CandidatePool::RedRadius2 { sample: a.sample },
                },
                tie_break: match a.tie {
                    TieArg::LexSmallest => TieBreak::LexSmallest,
                    TieArg::LexLargest => TieBreak::LexLargest,
                },
            };
            let seq = toolkit::greedy_sequence(&g, &cfg)?;
            write_out(a.output.as_deref(), &seq.to_text())?;
            if let Some(r) = rep.as_mut() {
                let d = verify_sequence(&g, &seq)?;
                r.digest("graph", g.digest());
                r.digest("seq", seq.digest());
                r.param("seed", cfg.seed);
                r.result(format!("D {d}"));
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        SeqCmd::Exact(a) => {
            let mut rep = cli.report.then(|| RunReport::new("seq exact"));
            let g = Graph::read_file(&a.graph)?;
            let (d, seq) = toolkit::exact_twin_width(&g, a.cap)?;
            write_out(a.output.as_deref(), &seq.to_text())?;
            if let Some(r) = rep.as_mut() {
                r.digest("graph", g.digest());
                r.digest("seq", seq.digest());
                r.result(format!("D {d}"));
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        SeqCmd::Cograph(a) => {
            let mut rep = cli.report.then(|| RunReport::new("seq cograph"));
            let g = Graph::read_file(&a.graph)?;
            let found = toolkit::cograph_sequence(&g)?;
            let outcome = match &found {
                Some(seq) => {
                    write_out(a.output.as_deref(), &seq.to_text())?;
                    Outcome::Answered
                }
                None => {
                    println!("NONE");
                    Outcome::None
                }
            };
            if let Some(r) = rep.as_mut() {
                r.digest("graph", g.digest());
                r.result(if found.is_some() { "COGRAPH" } else { "NONE" });
                r.emit();
            }
            Ok(outcome)
        }
        SeqCmd::UnitInterval(a) => {
            let mut rep = cli.report.then(|| RunReport::new("seq unit-interval"));
            let (g, seq) = toolkit::unit_interval_sequence(a.len, a.blocks)?;
            g.write_file(&a.graph_out)?;
            write_out(a.output.as_deref(), &seq.to_text())?;
            if let Some(r) = rep.as_mut() {
                let d = verify_sequence(&g, &seq)?;
                r.digest("graph", g.digest());
                r.digest("seq", seq.digest());
                r.param("len", a.len);
                r.param("blocks", a.blocks);
                r.result(format!("D {d}"));
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        SeqCmd::Power(a) => {
            let mut rep = cli.report.then(|| RunReport::new("seq power"));
            let g = Graph::read_file(&a.graph)?;
            let seq = ContractionSequence::read_file(&a.seq)?;
            let (gt, seqt) = toolkit::recursive_power(&g, &seq, a.exponent, a.cap)?;
            gt.write_file(&a.graph_out)?;
            write_out(a.output.as_deref(), &seqt.to_text())?;
            if let Some(r) = rep.as_mut() {
                r.digest("graph", gt.digest());
                r.digest("seq", seqt.digest());
                r.param("t", a.exponent);
                r.result(format!("N {}", gt.n()));
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        SeqCmd::Substitute(a) => {
            let mut rep = cli.report.then(|| RunReport::new("seq substitute"));
            let outer = Graph::read_file(&a.outer)?;
            let outer_seq = ContractionSequence::read_file(&a.outer_seq)?;
            let inner = Graph::read_file(&a.inner)?;
            let inner_seq = ContractionSequence::read_file(&a.inner_seq)?;
            let (g, seq) = toolkit::substitute(&outer, &outer_seq, a.vertex, &inner, &inner_seq)?;
            g.write_file(&a.graph_out)?;
            write_out(a.output.as_deref(), &seq.to_text())?;
            if let Some(r) = rep.as_mut() {
                let d = verify_sequence(&g, &seq)?;
                r.digest("graph", g.digest());
                r.digest("seq", seq.digest());
                r.param("u", a.vertex);
                r.result(format!("D {d}"));
                r.emit();
            }
            Ok(Outcome::Answered)
        }
    }
}

fn cmd_solve(cli: &Cli, c: &SolveCmd) -> Result<Outcome> {
    match c {
        SolveCmd::Kis(a) => {
            let mut rep = cli.report.then(|| RunReport::new("solve kis"));
            let g = Graph::read_file(&a.graph)?;
            let seq = ContractionSequence::read_file(&a.seq)?;
            let opts = IsOptions {
                naive_enum: a.naive_enum,
                assert_invariants: cli.assert_invariants,
            };
            let mut weight_line = None;
            let sol = match &a.weights {
                Some(wpath) => {
                    let w = read_weights(wpath, g.n())?;
                    let sol = independent::weighted_k_independent_set(&g, &w, &seq, a.k)?;
                    let total: f64 = sol.iter().map(|&v| w[v]).sum();
                    weight_line = Some(format!("WEIGHT {total}"));
                    sol
                }
                None => independent::k_independent_set_with(&g, &seq, a.k, &opts)?,
            };
            print_ids(&sol);
            println!("SIZE {}", sol.len());
            if let Some(line) = &weight_line {
                println!("{line}");
            }
            if let Some(r) = rep.as_mut() {
                r.digest("graph", g.digest());
                r.digest("seq", seq.digest());
                r.param("k", a.k);
                r.result(format!("SIZE {}", sol.len()));
                if let Some(line) = &weight_line {
                    r.result(line);
                }
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        SolveCmd::Mis(a) => {
            let mut rep = cli.report.then(|| RunReport::new("solve mis"));
            let g = Graph::read_file(&a.graph)?;
            let seq = ContractionSequence::read_file(&a.seq)?;
            let opts = IsOptions {
                naive_enum: false,
                assert_invariants: cli.assert_invariants,
            };
            let sol = independent::max_independent_set_with(&g, &seq, a.budget, &opts)?;
            print_ids(&sol);
            println!("SIZE {}", sol.len());
            if let Some(r) = rep.as_mut() {
                r.digest("graph", g.digest());
                r.digest("seq", seq.digest());
                r.param("budget", a.budget);
                r.result(format!("SIZE {}", sol.len()));
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        SolveCmd::Kclique(a) => {
            let mut rep = cli.report.then(|| RunReport::new("solve kclique"));
            let g = Graph::read_file(&a.graph)?;
            let seq = ContractionSequence::read_file(&a.seq)?;
            let sol = independent::k_clique(&g, &seq, a.k)?;
            print_ids(&sol);
            println!("SIZE {}", sol.len());
            if let Some(r) = rep.as_mut() {
                r.digest("graph", g.digest());
                r.digest("seq", seq.digest());
                r.param("k", a.k);
                r.result(format!("SIZE {}", sol.len()));
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        SolveCmd::Scattered(a) => {
            let mut rep = cli.report.then(|| RunReport::new("solve scattered"));
            let g = Graph::read_file(&a.graph)?;
            let power_seq = a
                .power_seq
                .as_deref()
                .map(ContractionSequence::read_file)
                .transpose()?;
            let sol = independent::r_scattered_set(&g, a.r, a.k, power_seq.as_ref())?;
            print_ids(&sol);
            println!("SIZE {}", sol.len());
            if let Some(r) = rep.as_mut() {
                r.digest("graph", g.digest());
                r.param("r", a.r);
                r.param("k", a.k);
                r.result(format!("SIZE {}", sol.len()));
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        SolveCmd::Kds(a) => {
            let mut rep = cli.report.then(|| RunReport::new("solve kds"));
            let g = Graph::read_file(&a.graph)?;
            let seq = a
                .seq
                .as_deref()
                .map(ContractionSequence::read_file)
                .transpose()?;
            let found = match a.r {
                None => {
                    let seq = seq
                        .as_ref()
                        .ok_or_else(|| Error::InvalidInput("kds without -r needs --seq".into()))?;
                    let opts = DsOptions {
                        assert_invariants: cli.assert_invariants,
                    };
                    dominating::k_dominating_set_with(&g, seq, a.k, &opts)?
                }
                Some(r) => dominating::k_r_dominating_set(&g, r, a.k, seq.as_ref())?,
            };
            let outcome = match &found {
                Some(sol) => {
                    print_ids(sol);
                    println!("SIZE {}", sol.len());
                    Outcome::Answered
                }
                None => {
                    println!("NONE");
                    Outcome::None
                }
            };
            if let Some(r) = rep.as_mut() {
                r.digest("graph", g.digest());
                r.param("k", a.k);
                r.result(match &found {
                    Some(sol) => format!("SIZE {}", sol.len()),
                    None => "NONE".to_string(),
                });
                r.emit();
            }
            Ok(outcome)
        }
        SolveCmd::Subiso(a) => solve_pattern(cli, a, false),
        SolveCmd::Indsub(a) => solve_pattern(cli, a, true),
    }
}

fn solve_pattern(cli: &Cli, a: &SubisoArgs, induced: bool) -> Result<Outcome> {
    let name = if induced {
        "solve indsub"
    } else {
        "solve subiso"
    };
    let mut rep = cli.report.then(|| RunReport::new(name));
    let g = Graph::read_file(&a.graph)?;
    let seq = ContractionSequence::read_file(&a.seq)?;
    let h = Graph::read_file(&a.pattern)?;
    let found = subiso::subgraph_isomorphism_with(&g, &seq, &h, induced, a.pattern_cap)?;
    let outcome = match &found {
        Some(image) => {
            print_ids(image);
            println!("SIZE {}", image.len());
            Outcome::Answered
        }
        None => {
            println!("NONE");
            Outcome::None
        }
    };
    if let Some(r) = rep.as_mut() {
        r.digest("graph", g.digest());
        r.digest("seq", seq.digest());
        r.digest("pattern", h.digest());
        r.result(match &found {
            Some(image) => format!("SIZE {}", image.len()),
            None => "NONE".to_string(),
        });
        r.emit();
    }
    Ok(outcome)
}

fn cmd_color(cli: &Cli, a: &ColorArgs) -> Result<Outcome> {
    let mut rep = cli.report.then(|| RunReport::new("color"));
    let g = Graph::read_file(&a.graph)?;
    let seq = ContractionSequence::read_file(&a.seq)?;
    let assignment = if a.tfree {
        coloring::color_triangle_free(&g, &seq)?
    } else {
        let t = match a.clique_bound {
            Some(t) => t,
            None => {
                if g.n() > 25 {
                    return Err(Error::InvalidInput(
                        "graphs over 25 vertices need --tfree or --clique-bound".into(),
                    ));
                }
                (oracles::brute_omega(&g)?.len() + 1).max(3)
            }
        };
        coloring::color_kt_free(&g, &seq, t)?
    };
    print!("{}", assignment.to_text());
    if let Some(r) = rep.as_mut() {
        r.digest("graph", g.digest());
        r.digest("seq", seq.digest());
        r.counter("palette", assignment.palette_size() as u64);
        r.counter("tuple_len", assignment.tuple_len() as u64);
        r.counter("max_entry", u64::from(assignment.max_entry()));
        r.emit();
    }
    Ok(Outcome::Answered)
}

fn cmd_ehpair(cli: &Cli, a: &GraphSeqArgs) -> Result<Outcome> {
    let mut rep = cli.report.then(|| RunReport::new("ehpair"));
    let g = Graph::read_file(&a.graph)?;
    let seq = ContractionSequence::read_file(&a.seq)?;
    let pair = coloring::eh_pair(&g, &seq)?;
    let kind = match pair.kind {
        PairKind::Complete => "COMPLETE",
        PairKind::Anticomplete => "ANTICOMPLETE",
    };
    println!("X {}", join_ids(&pair.x));
    println!("Y {}", join_ids(&pair.y));
    println!("KIND {kind}");
    if let Some(r) = rep.as_mut() {
        r.digest("graph", g.digest());
        r.digest("seq", seq.digest());
        r.counter("x_size", pair.x.len() as u64);
        r.counter("y_size", pair.y.len() as u64);
        r.result(kind);
        r.emit();
    }
    Ok(Outcome::Answered)
}

fn load_partition(input: &PathsInputArgs) -> Result<IntervalBicliquePartition> {
    match (&input.ibp, &input.graph, &input.seq) {
        (Some(path), _, _) => IntervalBicliquePartition::read_file(path),
        (None, Some(gpath), Some(spath)) => {
            let g = Graph::read_file(gpath)?;
            let seq = ContractionSequence::read_file(spath)?;
            ibp::build_ibp(&g, &seq)
        }
        _ => Err(Error::InvalidInput(
            "pass --ibp, or --graph together with --seq".into(),
        )),
    }
}

fn cmd_paths(cli: &Cli, c: &PathsCmd) -> Result<Outcome> {
    match c {
        PathsCmd::Ibp(a) => {
            let mut rep = cli.report.then(|| RunReport::new("paths ibp"));
            let g = Graph::read_file(&a.graph)?;
            let seq = ContractionSequence::read_file(&a.seq)?;
            let part = ibp::build_ibp(&g, &seq)?;
            write_out(a.output.as_deref(), &part.to_text())?;
            if let Some(r) = rep.as_mut() {
                r.digest("graph", g.digest());
                r.digest("seq", seq.digest());
                r.digest("ibp", part.digest());
                r.counter("pieces", part.bicliques().len() as u64);
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        PathsCmd::Sssp(a) => {
            let mut rep = cli.report.then(|| RunReport::new("paths sssp"));
            let part = load_partition(&a.input)?;
            let (paths, stats) = part.sssp_with_stats(a.source)?;
            print!("{}", paths.to_text());
            if let Some(r) = rep.as_mut() {
                let reached = paths.distances().iter().flatten().count();
                r.digest("ibp", part.digest());
                r.param("source", a.source);
                r.result(format!("REACHED {reached}"));
                r.counter("pieces", part.bicliques().len() as u64);
                r.counter("side_deletions", stats.side_deletions as u64);
                r.counter("queries", stats.queries as u64);
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        PathsCmd::Apsp(a) => {
            let mut rep = cli.report.then(|| RunReport::new("paths apsp"));
            let part = load_partition(a)?;
            let matrix = part.apsp()?;
            let mut out = String::new();
            for (u, row) in matrix.iter().enumerate() {
                for (v, entry) in row.iter().enumerate() {
                    match entry {
                        Some(x) => {
                            let _ = writeln!(out, "{u} {v} {x}");
                        }
                        None => {
                            let _ = writeln!(out, "{u} {v} INF");
                        }
                    }
                }
            }
            print!("{out}");
            if let Some(r) = rep.as_mut() {
                r.digest("ibp", part.digest());
                r.counter("pieces", part.bicliques().len() as u64);
                r.emit();
            }
            Ok(Outcome::Answered)
        }
        PathsCmd::Diameter(a) => {
            let mut rep = cli.report.then(|| RunReport::new("paths diameter"));
            let part = load_partition(a)?;
            let answer = part.diameter()?;
            let line = match answer {
                Some(d) => d.to_string(),
                None => "INF".to_string(),
            };
            println!("{line}");
            if let Some(r) = rep.as_mut() {
                r.digest("ibp", part.digest());
                r.result(&line);
                r.counter("pieces", part.bicliques().len() as u64);
                r.emit();
            }
            Ok(Outcome::Answered)
        }
    }
}

fn cmd_oracle(cli: &Cli, c: &OracleCmd) -> Result<Outcome> {
    match c {
        OracleCmd::Alpha(a) => {
            let g = Graph::read_file(&a.graph)?;
            let sol = oracles::brute_alpha(&g)?;
            print_ids(&sol);
            println!("SIZE {}", sol.len());
            oracle_report(cli, "oracle alpha", &g, &format!("SIZE {}", sol.len()));
            Ok(Outcome::Answered)
        }
        OracleCmd::Gamma(a) => {
            let g = Graph::read_file(&a.graph)?;
            let sol = oracles::brute_gamma(&g)?;
            print_ids(&sol);
            println!("SIZE {}", sol.len());
            oracle_report(cli, "oracle gamma", &g, &format!("SIZE {}", sol.len()));
            Ok(Outcome::Answered)
        }
        OracleCmd::Omega(a) => {
            let g = Graph::read_file(&a.graph)?;
            let sol = oracles::brute_omega(&g)?;
            print_ids(&sol);
            println!("SIZE {}", sol.len());
            oracle_report(cli, "oracle omega", &g, &format!("SIZE {}", sol.len()));
            Ok(Outcome::Answered)
        }
        OracleCmd::Chi(a) => {
            let g = Graph::read_file(&a.graph)?;
            let colors = oracles::brute_chi(&g)?;
            let mut out = String::new();
            for (v, c) in colors.iter().enumerate() {
                let _ = writeln!(out, "{v} {c}");
            }
            print!("{out}");
            let distinct = colors
                .iter()
                .collect::<std::collections::BTreeSet<_>>()
                .len();
            println!("COLORS {distinct}");
            oracle_report(cli, "oracle chi", &g, &format!("COLORS {distinct}"));
            Ok(Outcome::Answered)
        }
        OracleCmd::Tww(a) => {
            let g = Graph::read_file(&a.graph)?;
            let (d, seq) = toolkit::exact_twin_width(&g, a.cap)?;
            println!("D {d}");
            if let Some(path) = &a.output {
                seq.write_file(path)?;
            }
            oracle_report(cli, "oracle tww", &g, &format!("D {d}"));
            Ok(Outcome::Answered)
        }
        OracleCmd::Bfs(a) => {
            let g = Graph::read_file(&a.graph)?;
            let dist = oracles::bfs_distances(&g, a.source)?;
            let mut out = String::new();
            for (v, entry) in dist.iter().enumerate() {
                match entry {
                    Some(x) => {
                        let _ = writeln!(out, "{v} {x}");
                    }
                    None => {
                        let _ = writeln!(out, "{v} INF");
                    }
                }
            }
            print!("{out}");
            oracle_report(cli, "oracle bfs", &g, "DONE");
            Ok(Outcome::Answered)
        }
    }
}

fn oracle_report(cli: &Cli, command: &str, g: &Graph, result: &str) {
    if cli.report {
        let mut r = RunReport::new(command);
        r.digest("graph", g.digest());
        r.result(result);
        r.emit();
    }
}

fn cmd_bench(cli: &Cli, a: &BenchArgs) -> Result<Outcome> {
    println!("family,problem,n,seed,time_ms,value,pieces");
    let seed = seed_of(cli);
    for &size in &a.sizes {
        let row = bench_one(a, size, seed)?;
        println!("{row}");
    }
    Ok(Outcome::Answered)
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::UnitInterval => "unit-interval",
        FamilyArg::GridSubgraph => "grid-subgraph",
        FamilyArg::RandomGnp => "random-gnp",
        FamilyArg::Clique => "clique",
    }
}

fn problem_name(p: ProblemArg) -> &'static str {
    match p {
        ProblemArg::Kis => "kis",
        ProblemArg::Mis => "mis",
        ProblemArg::Kds => "kds",
        ProblemArg::Sssp => "sssp",
        ProblemArg::Diameter => "diameter",
    }
}

fn bench_one(a: &BenchArgs, size: usize, seed: u64) -> Result<String> {
    let fam = family_name(a.family);
    let prob = problem_name(a.problem);

    // The clique family skips graph construction entirely; its partition is
    // closed-form, which is what makes the large sizes reachable.
    if matches!(a.family, FamilyArg::Clique) {
        let part = ibp::clique_chain(size)?;
        let pieces = part.bicliques().len();
        let (ms, value) = match a.problem {
            ProblemArg::Sssp => {
                let t0 = Instant::now();
                let paths = part.sssp(0)?;
                let ms = t0.elapsed().as_millis();
                (ms, paths.distances().iter().flatten().count().to_string())
            }
            ProblemArg::Diameter => {
                let t0 = Instant::now();
                let answer = part.diameter()?;
                let ms = t0.elapsed().as_millis();
                (ms, answer.map_or("INF".to_string(), |d| d.to_string()))
            }
            _ => {
                return Err(Error::InvalidInput(
                    "the clique family only benches sssp and diameter".into(),
                ))
            }
        };
        return Ok(format!("{fam},{prob},{size},{seed},{ms},{value},{pieces}"));
    }

    let (g, seq) = match a.family {
        FamilyArg::UnitInterval => {
            let blocks = (size / 4).max(1);
            toolkit::unit_interval_sequence(4, blocks)?
        }
        FamilyArg::GridSubgraph => {
            let side = (size as f64).sqrt().round().max(1.0) as usize;
            let g = families::grid(side, side);
            let cfg = GreedyConfig {
                seed,
                pool: CandidatePool::RedRadius2 { sample: 32 },
                tie_break: TieBreak::LexSmallest,
            };
            let seq = toolkit::greedy_sequence(&g, &cfg)?;
            (g, seq)
        }
        FamilyArg::RandomGnp => {
            let g = families::gnp(size, a.p, seed);
            let cfg = GreedyConfig {
                seed,
                pool: CandidatePool::RedRadius2 { sample: 32 },
                tie_break: TieBreak::LexSmallest,
            };
            let seq = toolkit::greedy_sequence(&g, &cfg)?;
            (g, seq)
        }
        FamilyArg::Clique => unreachable!("handled above"),
    };
    let n = g.n();

    let (ms, value, pieces) = match a.problem {
        ProblemArg::Kis => {
            let t0 = Instant::now();
            let sol = independent::k_independent_set(&g, &seq, a.k)?;
            (
                t0.elapsed().as_millis(),
                sol.len().to_string(),
                String::new(),
            )
        }
        ProblemArg::Mis => {
            let t0 = Instant::now();
            let sol = independent::max_independent_set(&g, &seq, 1_000_000)?;
            (
                t0.elapsed().as_millis(),
                sol.len().to_string(),
                String::new(),
            )
        }
        ProblemArg::Kds => {
            let t0 = Instant::now();
            let found = dominating::k_dominating_set(&g, &seq, a.k)?;
            let value = found.map_or("NONE".to_string(), |s| s.len().to_string());
            (t0.elapsed().as_millis(), value, String::new())
        }
        ProblemArg::Sssp => {
            let part = ibp::build_ibp(&g, &seq)?;
            let t0 = Instant::now();
            let paths = part.sssp(0)?;
            let ms = t0.elapsed().as_millis();
            let reached = paths.distances().iter().flatten().count();
            (ms, reached.to_string(), part.bicliques().len().to_string())
        }
        ProblemArg::Diameter => {
            let part = ibp::build_ibp(&g, &seq)?;
            let t0 = Instant::now();
            let answer = part.diameter()?;
            let ms = t0.elapsed().as_millis();
            let value = answer.map_or("INF".to_string(), |d| d.to_string());
            (ms, value, part.bicliques().len().to_string())
        }
    };
    Ok(format!("{fam},{prob},{n},{seed},{ms},{value},{pieces}"))
}
