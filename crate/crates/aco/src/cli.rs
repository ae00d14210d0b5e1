//! `aco gen | partition | solve | bench`.
//!
//! Exit codes: 0 on success, 1 when a generator, partitioner or solve
//! fails, 2 for usage errors (bad flags, unreadable or malformed inputs).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use aco_core::partition::DEFAULT_BETA;
use aco_core::problem::VOTER_RHO;
use aco_core::{
    build_cluster, degree_stats, generate_bipartite, ground_voter_model, metrics, random_quadratic,
    to_hypergraph, AdmmConfig, BipartiteGraph, GeneratorConfig, Scheme, StopRule, SubproblemSpec,
    VoterConfig,
};
use clap::{Args, CommandFactory, Parser, Subcommand};

use crate::experiment::{self, Axis, Grid, VoterBench};
use crate::io::{self, FormatError};
use crate::report::{self, MetricsRow};

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const TABLE_ALPHAS: [f64; 5] = [2.0, 2.2, 2.4, 2.6, 2.8];
const TABLE_LAMBDAS: [f64; 5] = [1.5, 2.0, 2.5, 3.0, 3.5];

#[derive(Debug, Parser)]
#[command(name = "aco", version, about = "ADMM consensus optimization on a simulated vertex-cut cluster")]
pub struct Cli {
    /// File of `key = value` lines, one per long flag of the subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a power-law bipartite graph or a voter-model problem.
    Gen(GenArgs),
    /// Partition graphs and write one metrics row per (scheme, M, seed).
    Partition(PartitionArgs),
    /// Run ADMM on a graph and problem and write the per-superstep report.
    Solve(SolveArgs),
    /// Partition grid plus voter payload comparison, as CSV and Markdown.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output directory. Defaults to `<runs-root>/run-<unix time>-seed<seed>`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "DIR", default_value = "runs")]
    pub runs_root: PathBuf,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct GenArgs {
    /// Directory receiving `graph.txt` (and `problem.txt`).
    #[arg(long, value_name = "DIR", required = true)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 100_000)]
    pub consensus: usize,
    /// Power-law support cap. Defaults to min(|C| - 1, 100000).
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Also write random strictly convex quadratics for the graph.
    #[arg(long, conflicts_with = "voter")]
    pub qp: bool,
    /// Ground the voter model instead of the power-law generator.
    #[arg(long)]
    pub voter: bool,
    #[arg(long, default_value_t = 1000)]
    pub persons: usize,
    #[arg(long, default_value_t = 2)]
    pub parties: usize,
    /// Fraction of persons with an observed registration.
    #[arg(long, default_value_t = 0.5)]
    pub registered: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct PartitionArgs {
    /// Partition this graph file instead of generating the grid.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_values_t = TABLE_ALPHAS)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = TABLE_LAMBDAS)]
    pub lambda: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub consensus: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [32])]
    pub machines: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "random,greedy,hyper", value_parser = parse_scheme)]
    pub schemes: Vec<Scheme>,
    #[arg(long, value_delimiter = ',', default_values_t = [1])]
    pub seeds: Vec<u64>,
    /// Every machine holds at most beta·|S|/M subproblems (hyper only).
    #[arg(long, default_value_t = DEFAULT_BETA)]
    pub beta: f64,
    /// Also write each assignment (graph-file input only).
    #[arg(long, requires = "graph")]
    pub save_assignments: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct SolveArgs {
    #[arg(long, value_name = "FILE", required_unless_present = "voter", requires = "problem")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "graph")]
    pub problem: Option<PathBuf>,
    /// Ground a voter instance in memory instead of reading files.
    #[arg(long, conflicts_with_all = ["graph", "problem"])]
    pub voter: bool,
    #[arg(long, default_value_t = 10_000)]
    pub persons: usize,
    /// Read the placement from a file instead of partitioning.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["scheme", "machines"])]
    pub assignment: Option<PathBuf>,
    #[arg(long, default_value = "hyper", value_parser = parse_scheme)]
    pub scheme: Scheme,
    #[arg(long, default_value_t = 8)]
    pub machines: usize,
    #[arg(long, default_value_t = DEFAULT_BETA)]
    pub beta: f64,
    /// Step size. Defaults to 0.1 for voter problems, 1 otherwise.
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long, default_value_t = 1e-4)]
    pub eps_primal: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub eps_dual: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_iters: u64,
    /// `full` or `fraction(F)`.
    #[arg(long, default_value = "full", value_parser = parse_stop)]
    pub stop: StopRule,
    /// Run every subproblem every superstep.
    #[arg(long)]
    pub no_local_convergence: bool,
    /// Seed for the placement (and the voter instance).
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = TABLE_ALPHAS)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = TABLE_LAMBDAS)]
    pub lambda: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub consensus: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 8, 16, 32])]
    pub machines: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "random,greedy,hyper", value_parser = parse_scheme)]
    pub schemes: Vec<Scheme>,
    #[arg(long, value_delimiter = ',', default_values_t = [1])]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_BETA)]
    pub beta: f64,
    /// Voter instance size for the payload comparison; 0 skips it.
    #[arg(long, default_value_t = 10_000)]
    pub persons: usize,
    #[arg(long, default_value_t = 8)]
    pub voter_machines: usize,
    #[arg(long, default_value_t = 1000)]
    pub max_iters: u64,
    #[arg(long, default_value = "fraction(0.99)", value_parser = parse_stop)]
    pub stop: StopRule,
    #[command(flatten)]
    pub output: Output,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.trim().parse().map_err(|e| format!("{e}"))
}

/// `full`, `fraction(F)` or `fraction:F`.
pub fn parse_stop(s: &str) -> Result<StopRule, String> {
    let s = s.trim();
    if s == "full" {
        return Ok(StopRule::Full);
    }
    let inner = s
        .strip_prefix("fraction(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| s.strip_prefix("fraction:"))
        .ok_or_else(|| format!("expected `full` or `fraction(F)`, got `{s}`"))?;
    let f: f64 = inner.trim().parse().map_err(|_| format!("bad fraction `{inner}`"))?;
    if !(f > 0.0 && f <= 1.0) {
        return Err(format!("fraction must lie in (0, 1], got {f}"));
    }
    Ok(StopRule::Fraction(f))
}

fn stop_text(stop: StopRule) -> String {
    match stop {
        StopRule::Full => "full".into(),
        StopRule::Fraction(f) => format!("fraction({f})"),
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
        }
    }
}

fn usage(m: impl std::fmt::Display) -> CliError {
    CliError::Usage(m.to_string())
}

fn failure(m: impl std::fmt::Display) -> CliError {
    CliError::Failure(m.to_string())
}

/// Reading inputs: missing or malformed files are usage errors.
fn input<T>(r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(usage)
}

/// Writing outputs: failures are computational.
fn output<T>(r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(failure)
}

fn non_empty<T>(list: &[T], flag: &str) -> Result<(), CliError> {
    if list.is_empty() {
        Err(usage(format!("--{flag} needs at least one value")))
    } else {
        Ok(())
    }
}

/// Creates the run directory.
fn run_dir(out: &Output, seed: u64) -> Result<PathBuf, CliError> {
    let dir = match &out.out {
        Some(d) => d.clone(),
        None => {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            out.runs_root.join(format!("run-{secs}-seed{seed}"))
        }
    };
    fs::create_dir_all(&dir).map_err(|e| failure(format!("cannot create {}: {e}", dir.display())))?;
    Ok(dir)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    output(io::write_text(path, text))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn cmd_gen(a: &GenArgs) -> Result<(), CliError> {
    let dir = a.out.as_ref().ok_or_else(|| usage("--out is required"))?;
    fs::create_dir_all(dir).map_err(|e| failure(format!("cannot create {}: {e}", dir.display())))?;
    let (g, specs, header) = if a.voter {
        let cfg = VoterConfig {
            num_parties: a.parties,
            registered_fraction: a.registered,
            ..VoterConfig::new(a.persons, a.seed)
        };
        cfg.validate().map_err(usage)?;
        let inst = ground_voter_model(&cfg).map_err(failure)?;
        let header = vec![format!(
            "model=voter persons={} parties={} registered={} seed={}",
            a.persons, a.parties, a.registered, a.seed
        )];
        (inst.graph, Some(inst.specs), header)
    } else {
        let mut cfg = GeneratorConfig::new(a.alpha, a.lambda, a.consensus, a.seed);
        if let Some(d) = a.max_degree {
            cfg.max_degree = d;
        }
        cfg.validate().map_err(usage)?;
        let g = generate_bipartite(&cfg).map_err(failure)?;
        let header = vec![format!(
            "model=powerlaw alpha={} lambda={} consensus={} max_degree={} seed={}",
            a.alpha, a.lambda, a.consensus, cfg.max_degree, a.seed
        )];
        let specs = a.qp.then(|| random_quadratic(&g, a.seed));
        (g, specs, header)
    };
    write(&dir.join("graph.txt"), &io::format_graph(&g, &header))?;
    if let Some(specs) = &specs {
        write(&dir.join("problem.txt"), &io::format_problem(specs, &header))?;
    }
    let s = degree_stats(&g);
    println!(
        "subproblems={} consensus={} edges={} ratio={:.4} mean_subproblem_degree={:.4} mean_consensus_degree={:.4} max_consensus_degree={}",
        s.num_subproblems,
        s.num_consensus,
        s.num_edges,
        s.ratio,
        s.mean_subproblem_degree,
        s.mean_consensus_degree,
        s.max_consensus_degree
    );
    Ok(())
}

fn cmd_partition(a: &PartitionArgs) -> Result<(), CliError> {
    non_empty(&a.schemes, "schemes")?;
    non_empty(&a.machines, "machines")?;
    non_empty(&a.seeds, "seeds")?;
    let rows = match &a.graph {
        Some(path) => {
            let text = input(io::read_text(path))?;
            let g = input(io::parse_graph(&text))?;
            let prov = io::read_provenance(&text);
            let num = |k| io::provenance_value(&prov, k).and_then(|v| v.parse().ok());
            let mut rows = Vec::new();
            for &seed in &a.seeds {
                rows.extend(experiment::partition_cells(
                    &g,
                    &a.machines,
                    &a.schemes,
                    a.beta,
                    seed,
                    num("alpha"),
                    num("lambda"),
                    |w| eprintln!("warning: {w}"),
                ));
            }
            if a.save_assignments {
                let dir = run_dir(&a.output, a.seeds[0])?;
                for &seed in &a.seeds {
                    save_assignments(&dir, &g, a, seed)?;
                }
            }
            rows
        }
        None => {
            non_empty(&a.alpha, "alpha")?;
            non_empty(&a.lambda, "lambda")?;
            let grid = Grid {
                alphas: a.alpha.clone(),
                lambdas: a.lambda.clone(),
                num_consensus: a.consensus,
                machines: a.machines.clone(),
                schemes: a.schemes.clone(),
                seeds: a.seeds.clone(),
                beta: a.beta,
            };
            check_grid(&grid)?;
            grid.run(|m| eprintln!("{m}")).map_err(failure)?.0
        }
    };
    let dir = run_dir(&a.output, a.seeds[0])?;
    write(&dir.join("partition.csv"), &report::metrics_csv(&rows))
}

fn save_assignments(dir: &Path, g: &BipartiteGraph, a: &PartitionArgs, seed: u64) -> Result<(), CliError> {
    let h = to_hypergraph(g);
    for &m in &a.machines {
        for &scheme in &a.schemes {
            // Infeasible cells are already reported in the metrics.
            if let Ok(asg) = experiment::place(g, &h, scheme, m, a.beta, seed) {
                let path = dir.join(format!("assignment-{scheme}-m{m}-seed{seed}.txt"));
                output(io::write_assignment(&path, g, &asg))?;
            }
        }
    }
    Ok(())
}

/// Up-front checks so a bad parameter fails before any work is done.
fn check_grid(grid: &Grid) -> Result<(), CliError> {
    for &alpha in &grid.alphas {
        for &lambda in &grid.lambdas {
            grid.generator(alpha, lambda, 0).validate().map_err(usage)?;
        }
    }
    if let Some(&m) = grid.machines.iter().find(|&&m| m == 0 || m > aco_core::partition::MAX_MACHINES) {
        return Err(usage(format!("machine count {m} outside 1..={}", aco_core::partition::MAX_MACHINES)));
    }
    if grid.beta.is_nan() || grid.beta < 1.0 {
        return Err(usage(format!("--beta must be >= 1, got {}", grid.beta)));
    }
    Ok(())
}

fn cmd_solve(a: &SolveArgs) -> Result<(), CliError> {
    let (g, specs, voter, source) = if a.voter {
        let inst = ground_voter_model(&VoterConfig::new(a.persons, a.seed)).map_err(usage)?;
        (inst.graph, inst.specs, true, format!("voter persons={}", a.persons))
    } else {
        let (gp, pp) = (a.graph.as_ref().unwrap(), a.problem.as_ref().unwrap());
        let g = input(io::read_graph(gp))?;
        let text = input(io::read_text(pp))?;
        let specs: Vec<SubproblemSpec> = input(io::parse_problem(&text))?;
        let prov = io::read_provenance(&text);
        let voter = io::provenance_value(&prov, "model") == Some("voter");
        (g, specs, voter, gp.display().to_string())
    };
    let assignment = match &a.assignment {
        Some(path) => input(io::read_assignment(path, &g))?,
        None => {
            let h = to_hypergraph(&g);
            experiment::place(&g, &h, a.scheme, a.machines, a.beta, a.seed).map_err(failure)?
        }
    };
    let admm = AdmmConfig {
        rho: a.rho.unwrap_or(if voter { VOTER_RHO } else { 1.0 }),
        eps_primal: a.eps_primal,
        eps_dual: a.eps_dual,
        local_convergence: !a.no_local_convergence,
    };
    admm.validate().map_err(usage)?;
    let dir = run_dir(&a.output, a.seed)?;

    let start = Instant::now();
    let mut cluster = build_cluster(&g, &assignment, &specs, admm).map_err(usage)?;
    let run = cluster.run(a.max_iters, a.stop).map_err(failure)?;
    let wall = start.elapsed().as_secs_f64();

    let m = metrics(&g, &assignment);
    write(&dir.join("run.csv"), &report::run_csv(&run))?;
    let summary = report::summary_block(&[
        ("input", source.into()),
        ("scheme", assignment.scheme().as_str().into()),
        ("machines", assignment.machines().into()),
        ("replication_factor", m.replication_factor.into()),
        ("seed", a.seed.into()),
        ("rho", admm.rho.into()),
        ("eps_primal", admm.eps_primal.into()),
        ("eps_dual", admm.eps_dual.into()),
        ("local_convergence", admm.local_convergence.into()),
        ("stop", stop_text(a.stop).into()),
        ("max_iters", a.max_iters.into()),
        ("iterations", run.iterations().into()),
        ("stopped", run.stopped.into()),
        ("frac_converged", run.final_fraction().into()),
        ("total_payload", run.total_payload().into()),
        ("objective", run.objective.into()),
        ("wall_seconds", wall.into()),
    ]);
    write(&dir.join("summary.json"), &summary)?;
    print!("{summary}");
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> Result<(), CliError> {
    non_empty(&a.schemes, "schemes")?;
    non_empty(&a.machines, "machines")?;
    non_empty(&a.seeds, "seeds")?;
    non_empty(&a.alpha, "alpha")?;
    non_empty(&a.lambda, "lambda")?;
    let grid = Grid {
        alphas: a.alpha.clone(),
        lambdas: a.lambda.clone(),
        num_consensus: a.consensus,
        machines: a.machines.clone(),
        schemes: a.schemes.clone(),
        seeds: a.seeds.clone(),
        beta: a.beta,
    };
    check_grid(&grid)?;
    let bench = VoterBench {
        persons: a.persons,
        seed: a.seeds[0],
        machines: a.voter_machines,
        beta: a.beta,
        admm: AdmmConfig { rho: VOTER_RHO, ..AdmmConfig::default() },
        max_iters: a.max_iters,
        stop: a.stop,
    };
    let dir = run_dir(&a.output, a.seeds[0])?;

    let (rows, graphs) = grid.run(|m| eprintln!("{m}")).map_err(failure)?;
    let cells = experiment::aggregate(&rows, &graphs);
    write(&dir.join("partition.csv"), &report::metrics_csv(&rows))?;
    for axis in Axis::ALL {
        write(&dir.join(axis.file_name()), &experiment::plot_csv(&cells, axis))?;
    }

    let voter = if a.persons > 0 {
        eprintln!("voter: {} persons, M={}", a.persons, a.voter_machines);
        let v = experiment::voter_payloads(&bench, &a.schemes).map_err(failure)?;
        write(&dir.join("payload_vs_iter.csv"), &experiment::payload_csv(&v.2, &bench))?;
        Some(v)
    } else {
        None
    };
    let md = markdown(&grid, &rows, &cells, &bench, voter.as_ref());
    write(&dir.join("report.md"), &md)?;
    print!("{md}");
    Ok(())
}

fn fmt_opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "n/a".into(), |v| format!("{v:.digits$}"))
}

fn markdown(
    grid: &Grid,
    rows: &[MetricsRow],
    cells: &[experiment::CellStats],
    bench: &VoterBench,
    voter: Option<&(usize, usize, Vec<experiment::PayloadRun>)>,
) -> String {
    use std::fmt::Write as _;
    let mut md = String::from("# Partitioning benchmark\n\n");
    let seeds: Vec<String> = grid.seeds.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(
        md,
        "Power-law graphs with |C| = {}, seeds {}, balance beta = {}. Replication factor is the mean over seeds.\n",
        grid.num_consensus,
        seeds.join(", "),
        grid.beta
    );
    let failed = rows.iter().filter(|r| r.metrics.is_none()).count();
    if failed > 0 {
        let _ = writeln!(md, "{failed} cells could not be placed; see partition.csv.\n");
    }
    for &m in &grid.machines {
        let _ = writeln!(md, "## M = {m}\n");
        let mut head = String::from("| alpha | lambda | \\|S\\|/\\|C\\| |");
        let mut rule = String::from("|---|---|---|");
        for s in &grid.schemes {
            let _ = write!(head, " {s} |");
            rule.push_str("---|");
        }
        head.push_str(" hyper < greedy < random |");
        rule.push_str("---|");
        let _ = writeln!(md, "{head}\n{rule}");
        for &alpha in &grid.alphas {
            for &lambda in &grid.lambdas {
                let ratio =
                    cells.iter().find(|c| c.alpha == alpha && c.lambda == lambda).and_then(|c| c.ratio);
                let _ = write!(md, "| {alpha} | {lambda} | {} |", fmt_opt(ratio, 2));
                for &s in &grid.schemes {
                    let _ =
                        write!(md, " {} |", fmt_opt(experiment::cell_mean(cells, s, m, alpha, lambda), 3));
                }
                let order = match experiment::strictly_ordered(cells, m, alpha, lambda) {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "n/a",
                };
                let _ = writeln!(md, " {order} |");
            }
        }
        md.push('\n');
    }
    if let Some((subs, cons, runs)) = voter {
        let _ = writeln!(
            md,
            "## Voter model payload\n\n{} persons (|S| = {subs}, |C| = {cons}, ratio {:.2}), M = {}, rho = {}, stop {}.\n",
            bench.persons,
            *subs as f64 / *cons as f64,
            bench.machines,
            bench.admm.rho,
            stop_text(bench.stop)
        );
        let _ = writeln!(
            md,
            "| scheme | RF | iterations | frac converged | cum payload |\n|---|---|---|---|---|"
        );
        for r in runs {
            let _ = writeln!(
                md,
                "| {} | {:.4} | {} | {:.4} | {} |",
                r.scheme,
                r.replication_factor,
                r.report.iterations(),
                r.report.final_fraction(),
                r.report.total_payload()
            );
        }
        match experiment::payload_ratio(runs) {
            Some(ratio) => {
                let _ = writeln!(md, "\nPayload ratio hyper/greedy: {ratio:.4}");
            }
            None => {
                let _ = writeln!(md, "\nPayload ratio hyper/greedy: n/a (needs both schemes)");
            }
        }
    }
    md
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match crate::config::expand(args, &Cli::command()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("usage error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Partition(a) => cmd_partition(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
