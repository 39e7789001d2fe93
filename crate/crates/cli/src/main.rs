use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use plap::bench::{edge_sweep, write_records, SweepConfig};
use plap::generate;
use plap::screening::{default_grid, parse_grid, scaled_curve};
use plap::tensor::tensor_check;
use plap::{
    criterion_sweep, find_eigenpairs, fmt_f64, read_graph_file, solve_max, verify_eigenpair, write_graph,
    MultistartConfig, PParam, Sign, SignedGraph, SolverConfig, Verdict,
};

/// p-Laplacian eigenpairs of signed weighted graphs.
#[derive(Parser, Debug)]
#[command(name = "plap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph file.
    Gen(GenArgs),
    /// Largest eigenpair of the signless p-Laplacian by power iteration.
    SolveMax(SolveMaxArgs),
    /// Relative residual of a candidate eigenpair.
    Verify(VerifyArgs),
    /// All eigenpairs for even p by multistart Newton.
    FindAll(FindAllArgs),
    /// Compare the tensor contraction with the operator.
    TensorCheck(TensorCheckArgs),
    /// Forbidden-subgraph screening of G' against G.
    Criterion(CriterionArgs),
    /// Largest eigenvalue across a p grid.
    SweepP(SweepPArgs),
    /// Time solve-max on random graphs across an edge-count range.
    Bench(BenchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Path,
    Cycle,
    Complete,
    Empty,
    Star,
    Hypercube,
    Gnm,
    Join,
}

#[derive(clap::Args, Debug)]
struct GenArgs {
    #[arg(long = "type", value_enum)]
    kind: Kind,
    /// Vertex count (path, cycle, complete, empty, gnm).
    #[arg(long)]
    n: Option<usize>,
    /// Star degree or hypercube dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Edge count (gnm).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Signature for every edge.
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
    sigma: Option<Sign>,
    /// First operand of a join.
    #[arg(long)]
    left: Option<PathBuf>,
    /// Second operand of a join.
    #[arg(long)]
    right: Option<PathBuf>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct SolveMaxArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1e-10)]
    eps: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    /// Initial vector file, or `ones`.
    #[arg(long, default_value = "ones")]
    f0: String,
    /// Write the bracket trace CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    /// Comma-separated values, one per vertex.
    #[arg(long, allow_hyphen_values = true)]
    f: String,
}

#[derive(clap::Args, Debug)]
struct FindAllArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 2000)]
    starts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    newton_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    dedupe_tol: f64,
}

#[derive(clap::Args, Debug)]
struct TensorCheckArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(clap::Args, Debug)]
struct CriterionArgs {
    /// Host graph.
    #[arg(long)]
    g: PathBuf,
    /// Candidate subgraph.
    #[arg(long)]
    gprime: PathBuf,
    /// `start:stop:step` or a comma list; defaults to 1.05:5:0.05.
    #[arg(long)]
    p_grid: Option<String>,
    /// Report file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct SweepPArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    p_grid: String,
    /// Add a `lambda_over_2p` column.
    #[arg(long)]
    scaled: bool,
}

#[derive(clap::Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    n: usize,
    /// `start:stop:steps`, inclusive.
    #[arg(long)]
    edges: String,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Solves per point; the fastest is kept.
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    /// Solve grid points concurrently (timings overlap).
    #[arg(long)]
    concurrent: bool,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Bad command-line input detected after clap's own parsing.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s.trim() {
        "+1" | "1" => Ok(Sign::Plus),
        "-1" => Ok(Sign::Minus),
        _ => Err(format!("expected +1 or -1, got '{s}'")),
    }
}

fn parse_values(text: &str) -> Result<Vec<f64>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().with_context(|| format!("not a number: '{t}'")))
        .collect()
}

fn pparam(p: f64) -> Result<PParam> {
    Ok(PParam::new(p)?)
}

fn read_graph(path: &Path) -> Result<SignedGraph> {
    read_graph_file(path).with_context(|| format!("reading {}", path.display()))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn need<T>(value: Option<T>, flag: &str, kind: Kind) -> Result<T> {
    value.ok_or_else(|| usage(format!("--type {kind:?} requires --{flag}").to_lowercase()))
}

fn gen(args: GenArgs) -> Result<ExitCode> {
    let k = args.kind;
    let g = match k {
        Kind::Path => generate::path(need(args.n, "n", k)?)?,
        Kind::Cycle => generate::cycle(need(args.n, "n", k)?)?,
        Kind::Complete => generate::complete(need(args.n, "n", k)?)?,
        Kind::Empty => generate::empty(need(args.n, "n", k)?)?,
        Kind::Star => generate::star(need(args.d, "d", k)?)?,
        Kind::Hypercube => {
            let d = need(args.d, "d", k)?;
            generate::hypercube(u32::try_from(d).map_err(|_| usage("--d is too large"))?)?
        }
        Kind::Gnm => generate::gnm(need(args.n, "n", k)?, need(args.m, "m", k)?, args.seed)?,
        Kind::Join => {
            let left = read_graph(&need(args.left, "left", k)?)?;
            let right = read_graph(&need(args.right, "right", k)?)?;
            generate::join(&left, &right)
        }
    };
    let g = match args.sigma {
        Some(s) => g.with_signature(s),
        None => g,
    };
    let mut out = output(args.out.as_deref())?;
    out.write_all(write_graph(&g).as_bytes())?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn solve_max_cmd(args: SolveMaxArgs) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let mut cfg = SolverConfig::default().with_eps(args.eps).with_max_iter(args.max_iter);
    if args.f0 != "ones" {
        let text = std::fs::read_to_string(&args.f0).with_context(|| format!("reading {}", args.f0))?;
        cfg = cfg.with_f0(parse_values(&text)?);
    }
    if args.trace.is_some() {
        cfg = cfg.with_trace();
    }
    let sol = solve_max(&g, pparam(args.p)?, &cfg)?;
    if let Some(path) = &args.trace {
        let mut out = output(Some(path))?;
        sol.trace.write_csv(&mut out)?;
        out.flush()?;
    }
    println!("lambda {}", fmt_f64(sol.pair.lambda));
    println!("residual {}", fmt_f64(sol.pair.residual));
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let f = parse_values(&args.f)?;
    if f.len() != g.n() {
        bail!("--f has {} values but the graph has {} vertices", f.len(), g.n());
    }
    let r = verify_eigenpair(&g, pparam(args.p)?, args.lambda, &f)?;
    println!("residual {}", fmt_f64(r));
    Ok(ExitCode::SUCCESS)
}

fn find_all(args: FindAllArgs) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let cfg = MultistartConfig {
        n_starts: args.starts,
        seed: args.seed,
        newton_tol: args.newton_tol,
        dedupe_tol: args.dedupe_tol,
        ..Default::default()
    };
    let list = find_eigenpairs(&g, args.p, &cfg)?;
    let mut out = output(None)?;
    let cols: Vec<String> = (1..=g.n()).map(|i| format!("f_{i}")).collect();
    writeln!(out, "lambda,residual,{}", cols.join(","))?;
    for pair in &list.pairs {
        let f: Vec<String> = pair.f.iter().map(|&x| fmt_f64(x)).collect();
        writeln!(out, "{},{},{}", fmt_f64(pair.lambda), fmt_f64(pair.residual), f.join(","))?;
    }
    writeln!(
        out,
        "# found {} distinct eigenpairs ({} of {} starts converged)",
        list.pairs.len(),
        list.converged_count,
        list.starts_used
    )?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn tensor_check_cmd(args: TensorCheckArgs) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let c = tensor_check(&g, args.p, args.trials, args.seed)?;
    match c.naive {
        Some(d) => println!("naive_deviation {}", fmt_f64(d)),
        None => println!("naive_deviation skipped (graph too large for enumeration)"),
    }
    println!("laplacian_deviation {}", fmt_f64(c.laplacian));
    Ok(ExitCode::SUCCESS)
}

fn criterion_cmd(args: CriterionArgs) -> Result<ExitCode> {
    let g = read_graph(&args.g)?;
    let gp = read_graph(&args.gprime)?;
    let grid = match &args.p_grid {
        Some(s) => parse_grid(s)?,
        None => default_grid(),
    };
    let report = criterion_sweep(&g, &gp, &grid)?;
    let mut out = output(args.out.as_deref())?;
    report.write_csv(&mut out)?;
    out.flush()?;
    Ok(match report.verdict {
        Verdict::NotSubgraph => ExitCode::from(3),
        Verdict::Inconclusive => ExitCode::SUCCESS,
    })
}

fn sweep_p(args: SweepPArgs) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let curve = scaled_curve(&g, &parse_grid(&args.p_grid)?)?;
    let mut out = output(None)?;
    if args.scaled {
        writeln!(out, "p,lambda,lambda_over_2p")?;
    } else {
        writeln!(out, "p,lambda")?;
    }
    for (p, lambda, scaled) in curve {
        if args.scaled {
            writeln!(out, "{},{},{}", fmt_f64(p), fmt_f64(lambda), fmt_f64(scaled))?;
        } else {
            writeln!(out, "{},{}", fmt_f64(p), fmt_f64(lambda))?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let parts: Vec<&str> = args.edges.split(':').collect();
    let [a, b, steps] = parts.as_slice() else {
        return Err(usage(format!("--edges expects start:stop:steps, got '{}'", args.edges)));
    };
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| usage(format!("--edges: not a count: '{s}'")));
    let cfg = SweepConfig {
        n: args.n,
        m_start: num(a)?,
        m_stop: num(b)?,
        steps: num(steps)?,
        p: pparam(args.p)?,
        seed: args.seed,
        concurrent: args.concurrent,
        repeats: args.repeats,
        solver: SolverConfig::default(),
    };
    let records = edge_sweep(&cfg)?;
    let mut out = output(args.out.as_deref())?;
    write_records(&records, &mut out)?;
    if args.concurrent {
        writeln!(out, "# timing,concurrent")?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::SolveMax(a) => solve_max_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::FindAll(a) => find_all(a),
        Command::TensorCheck(a) => tensor_check_cmd(a),
        Command::Criterion(a) => criterion_cmd(a),
        Command::SweepP(a) => sweep_p(a),
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
