use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use pdo_core::stats::{write_level_stats, write_pattern_census, write_space_reports};
use pdo_core::{
    build_recursive, build_simple, default_r, make_schedule, pattern_census, recursive_r_division, verify_equivalence,
    AnyOracle, BruteOracle, EmbeddedGraph, Error, GenSpec, PairSource, ParameterSchedule, ScheduleMode, VertexId,
    DEFAULT_LEAF,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEFAULT_GRAPH: &str = "graph.txt";
const DEFAULT_ORACLE: &str = "oracle.pdo";

#[derive(Parser)]
#[command(name = "pdo", version, about = "Exact distance oracles for unweighted planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an embedded planar graph
    Gen(GenArgs),
    /// Build an oracle file from a graph
    Build(BuildArgs),
    /// Answer one distance query
    Query(QueryArgs),
    /// Compare an oracle with BFS ground truth
    Verify(VerifyArgs),
    /// Decomposition, pattern or space statistics as CSV
    Stats(StatsArgs),
    /// Query latency and step-count histograms as CSV
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    /// Output file, `-` for standard output
    #[arg(long, short, global = true, default_value = DEFAULT_GRAPH)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Family {
    /// rows x cols grid
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Grid with one diagonal per cell
    Trigrid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Random triangulation with edges deleted
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = pdo_core::generators::DEFAULT_DELETE_PROBABILITY)]
        delete_probability: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Simple,
    Recursive,
}

#[derive(Args)]
struct OracleParams {
    #[arg(long, value_enum, default_value = "simple")]
    oracle: OracleKind,
    /// Region size of the simple oracle (default: ceil(n^(1/4)))
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 0.25, allow_negative_numbers = true)]
    epsilon: f64,
    #[arg(long, default_value_t = ScheduleMode::Aggressive)]
    mode: ScheduleMode,
    /// Leaf threshold of the recursive oracle
    #[arg(long, default_value_t = DEFAULT_LEAF)]
    leaf: usize,
}

impl OracleParams {
    fn schedule(&self, n: usize) -> pdo_core::Result<ParameterSchedule> {
        make_schedule(n, self.epsilon, self.mode, self.leaf)
    }

    /// Rejects bad flags before any file is read.
    fn validate(&self) -> pdo_core::Result<()> {
        match self.oracle {
            OracleKind::Recursive => self.schedule(1).map(|_| ()),
            OracleKind::Simple if self.r == Some(0) => Err(Error::InvalidDivisionParameter { r: 0, n: 0 }),
            OracleKind::Simple => Ok(()),
        }
    }

    fn levels(&self, n: usize) -> pdo_core::Result<Vec<usize>> {
        Ok(match self.oracle {
            OracleKind::Simple => vec![self.r.unwrap_or_else(|| default_r(n))],
            OracleKind::Recursive => self.schedule(n)?.levels,
        })
    }

    fn build(&self, graph: &EmbeddedGraph) -> pdo_core::Result<AnyOracle> {
        let n = graph.vertex_count();
        Ok(match self.oracle {
            OracleKind::Simple => AnyOracle::Simple(build_simple(graph, self.r.unwrap_or_else(|| default_r(n)))?),
            OracleKind::Recursive => {
                let s = self.schedule(n)?;
                info!("schedule {:?}", s.levels);
                AnyOracle::Recursive(build_recursive(graph, &s)?)
            }
        })
    }
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, short, default_value = DEFAULT_GRAPH)]
    graph: PathBuf,
    #[command(flatten)]
    params: OracleParams,
    #[arg(long, short, default_value = DEFAULT_ORACLE)]
    out: PathBuf,
}

#[derive(Args)]
struct QueryArgs {
    s: u64,
    t: u64,
    #[arg(long, short, default_value = DEFAULT_ORACLE)]
    file: PathBuf,
    /// Print one line per query step
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, short, default_value = DEFAULT_GRAPH)]
    graph: PathBuf,
    #[arg(long, short, default_value = DEFAULT_ORACLE)]
    file: PathBuf,
    /// `all`, or a number of seeded random pairs
    #[arg(long, default_value = "all", value_parser = parse_pairs)]
    pairs: Pairs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsKind {
    Decomposition,
    Patterns,
    Space,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long, value_enum)]
    what: StatsKind,
    #[arg(long, short, default_value = DEFAULT_GRAPH)]
    graph: PathBuf,
    #[command(flatten)]
    params: OracleParams,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, short, default_value = DEFAULT_ORACLE)]
    file: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    queries: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy)]
enum Pairs {
    All,
    Sampled(usize),
}

fn parse_pairs(value: &str) -> Result<Pairs, String> {
    match value {
        "all" => Ok(Pairs::All),
        count => count
            .parse()
            .map(Pairs::Sampled)
            .map_err(|_| format!("expected `all` or a count, got `{count}`")),
    }
}

/// Usage errors exit 2, data errors 1, mismatches 3.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::EpsilonOutOfRange(_)
        | Error::InvalidLeafThreshold(_)
        | Error::InvalidDivisionParameter { .. }
        | Error::NonDecreasingSchedule { .. }
        | Error::ZeroDimension { .. }
        | Error::TooFewVertices(_)
        | Error::VertexOutOfRange { .. } => 2,
        Error::Mismatch { .. } => 3,
        _ => 1,
    }
}

fn read_graph(path: &Path) -> pdo_core::Result<EmbeddedGraph> {
    EmbeddedGraph::read(BufReader::new(fs::File::open(path)?))
}

fn read_oracle(path: &Path) -> pdo_core::Result<AnyOracle> {
    AnyOracle::from_bytes(&fs::read(path)?)
}

fn gen(args: GenArgs) -> pdo_core::Result<()> {
    let spec = match args.family {
        Family::Grid { rows, cols } => GenSpec::Grid { rows, cols },
        Family::Trigrid { rows, cols } => GenSpec::TriangulatedGrid { rows, cols },
        Family::Random {
            n,
            seed,
            delete_probability,
        } => GenSpec::RandomPlanar {
            n,
            seed,
            delete_probability,
        },
    };
    let text = spec.generate()?.to_text();
    if args.out.as_os_str() == "-" {
        io::stdout().write_all(text.as_bytes())?;
    } else {
        fs::write(&args.out, text)?;
    }
    Ok(())
}

fn build(args: BuildArgs) -> pdo_core::Result<()> {
    args.params.validate()?;
    let graph = read_graph(&args.graph)?;
    let start = Instant::now();
    let oracle = args.params.build(&graph)?;
    let report = oracle.as_dyn().space_report();
    info!(
        "built {} oracle in {:.2} s, {} words",
        report.oracle,
        start.elapsed().as_secs_f64(),
        report.total()
    );
    fs::write(&args.out, oracle.to_bytes())?;
    Ok(())
}

fn query(args: QueryArgs) -> pdo_core::Result<()> {
    let oracle = read_oracle(&args.file)?;
    let o = oracle.as_dyn();
    let n = o.vertex_count();
    let [s, t] = [args.s, args.t].map(|v| {
        if v < n as u64 {
            Ok(v as VertexId)
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n })
        }
    });
    let (s, t) = (s?, t?);
    let (d, trace) = o.query_traced(s, t);
    println!("{d}");
    if args.trace {
        for (i, step) in trace.steps.iter().enumerate() {
            println!("step {i}: {step}");
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> pdo_core::Result<()> {
    let pairs = match args.pairs {
        Pairs::All => PairSource::All,
        Pairs::Sampled(count) => PairSource::Sampled { count, seed: args.seed },
    };
    let graph = read_graph(&args.graph)?;
    let oracle = read_oracle(&args.file)?;
    let brute = BruteOracle::new(graph.into());
    let report = verify_equivalence(oracle.as_dyn(), &brute, pairs)?;
    report.write_csv(io::stdout().lock())
}

fn stats(args: StatsArgs) -> pdo_core::Result<()> {
    args.params.validate()?;
    let graph = read_graph(&args.graph)?;
    let n = graph.vertex_count();
    let out = io::stdout().lock();
    match args.what {
        StatsKind::Decomposition => {
            let tree = recursive_r_division(&graph, &args.params.levels(n)?)?;
            write_level_stats(out, &tree.stats())
        }
        StatsKind::Patterns => {
            let tree = recursive_r_division(&graph, &args.params.levels(n)?)?;
            let census = pattern_census(&graph, &tree.regions()[1..])?;
            write_pattern_census(out, &census)
        }
        StatsKind::Space => {
            let oracle = args.params.build(&graph)?;
            write_space_reports(out, &[(n, oracle.as_dyn().space_report())])
        }
    }
}

fn bench(args: BenchArgs) -> pdo_core::Result<()> {
    let oracle = read_oracle(&args.file)?;
    let o = oracle.as_dyn();
    let n = o.vertex_count() as VertexId;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let pairs: Vec<(VertexId, VertexId)> = (0..args.queries).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    // latency buckets are powers of two in nanoseconds
    let mut latency = vec![0u64; 64];
    let mut steps = vec![0u64; oracle.depth() + 3];
    let mut sink = 0u64;
    for &(s, t) in &pairs {
        let start = Instant::now();
        sink = sink.wrapping_add(o.query(s, t) as u64);
        let ns = start.elapsed().as_nanos().max(1) as u64;
        latency[63 - ns.leading_zeros() as usize] += 1;
        steps[o.query_traced(s, t).1.step_count()] += 1;
    }
    std::hint::black_box(sink);
    let mut out = io::stdout().lock();
    writeln!(out, "histogram,bucket,count")?;
    for (b, &c) in latency.iter().enumerate().filter(|(_, &c)| c > 0) {
        writeln!(out, "latency_ns,{},{c}", 1u64 << b)?;
    }
    for (k, &c) in steps.iter().enumerate() {
        writeln!(out, "steps,{k},{c}")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Some(threads) = std::env::var("PDO_THREADS").ok().and_then(|v| v.parse().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Build(a) => build(a),
        Command::Query(a) => query(a),
        Command::Verify(a) => verify(a),
        Command::Stats(a) => stats(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
