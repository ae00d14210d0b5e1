//! Partition grids, their aggregates and the voter payload comparison.

use std::cmp::Ordering;
use std::fmt::Write as _;

use aco_core::partition::HyperConfig;
use aco_core::{
    build_cluster, degree_stats, generate_bipartite, ground_voter_model, metrics, partition_greedy,
    partition_hyper, partition_random, to_hypergraph, AdmmConfig, AdmmError, Assignment, BipartiteGraph,
    GeneratorConfig, GraphError, Hypergraph, PartitionError, ProblemError, RunReport, Scheme, StopRule,
    VoterConfig,
};

use crate::report::MetricsRow;

/// Places `g` on `machines` machines. `h` is the hypergraph view of `g`,
/// needed only by [`Scheme::Hyper`].
pub fn place(
    g: &BipartiteGraph,
    h: &Hypergraph,
    scheme: Scheme,
    machines: usize,
    beta: f64,
    seed: u64,
) -> Result<Assignment, PartitionError> {
    match scheme {
        Scheme::Random => partition_random(g, machines, seed),
        Scheme::Greedy => partition_greedy(g, machines),
        Scheme::Hyper => partition_hyper(h, machines, &HyperConfig::new(beta, seed)),
    }
}

/// Metrics rows for every (M, scheme) cell of one graph. Cells the scheme
/// cannot place are kept with empty metrics and reported through `warn`.
#[allow(clippy::too_many_arguments)]
pub fn partition_cells(
    g: &BipartiteGraph,
    machines: &[usize],
    schemes: &[Scheme],
    beta: f64,
    seed: u64,
    alpha: Option<f64>,
    lambda: Option<f64>,
    mut warn: impl FnMut(String),
) -> Vec<MetricsRow> {
    let h = to_hypergraph(g);
    let mut rows = Vec::with_capacity(machines.len() * schemes.len());
    for &m in machines {
        for &scheme in schemes {
            let metrics = match place(g, &h, scheme, m, beta, seed) {
                Ok(a) => Some(metrics(g, &a)),
                Err(e) => {
                    warn(format!("{scheme} M={m} seed={seed}: {e}"));
                    None
                }
            };
            rows.push(MetricsRow { scheme, machines: m, alpha, lambda, metrics, seed });
        }
    }
    rows
}

/// One generated graph of a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphSummary {
    pub alpha: f64,
    pub lambda: f64,
    pub seed: u64,
    pub num_subproblems: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub alphas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub num_consensus: usize,
    pub machines: Vec<usize>,
    pub schemes: Vec<Scheme>,
    pub seeds: Vec<u64>,
    pub beta: f64,
}

impl Grid {
    pub fn generator(&self, alpha: f64, lambda: f64, seed: u64) -> GeneratorConfig {
        GeneratorConfig::new(alpha, lambda, self.num_consensus, seed)
    }

    /// Generates every (alpha, lambda, seed) graph and partitions it. Row
    /// order: alpha, lambda, seed, M, scheme.
    pub fn run(
        &self,
        mut progress: impl FnMut(&str),
    ) -> Result<(Vec<MetricsRow>, Vec<GraphSummary>), GraphError> {
        let mut rows = Vec::new();
        let mut graphs = Vec::new();
        for &alpha in &self.alphas {
            for &lambda in &self.lambdas {
                for &seed in &self.seeds {
                    let g = generate_bipartite(&self.generator(alpha, lambda, seed))?;
                    let stats = degree_stats(&g);
                    graphs.push(GraphSummary {
                        alpha,
                        lambda,
                        seed,
                        num_subproblems: g.num_subproblems(),
                        ratio: stats.ratio,
                    });
                    progress(&format!(
                        "alpha={alpha} lambda={lambda} seed={seed}: |S|={} |E|={}",
                        g.num_subproblems(),
                        g.num_edges()
                    ));
                    rows.extend(partition_cells(
                        &g,
                        &self.machines,
                        &self.schemes,
                        self.beta,
                        seed,
                        Some(alpha),
                        Some(lambda),
                        |w| progress(&format!("warning: {w}")),
                    ));
                }
            }
        }
        Ok((rows, graphs))
    }
}

/// Replication factor of one (scheme, M, alpha, lambda) cell over seeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellStats {
    pub scheme: Scheme,
    pub machines: usize,
    pub alpha: f64,
    pub lambda: f64,
    /// Mean `|S|/|C|` of the cell's graphs, when known.
    pub ratio: Option<f64>,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub seeds: usize,
}

fn key_cmp(a: &MetricsRow, b: &MetricsRow) -> Ordering {
    a.scheme
        .cmp(&b.scheme)
        .then(a.machines.cmp(&b.machines))
        .then(a.alpha.unwrap_or(f64::NAN).total_cmp(&b.alpha.unwrap_or(f64::NAN)))
        .then(a.lambda.unwrap_or(f64::NAN).total_cmp(&b.lambda.unwrap_or(f64::NAN)))
}

/// Groups placed rows by (scheme, M, alpha, lambda). Rows without metrics
/// or without generator parameters are skipped.
pub fn aggregate(rows: &[MetricsRow], graphs: &[GraphSummary]) -> Vec<CellStats> {
    let mut placed: Vec<&MetricsRow> =
        rows.iter().filter(|r| r.metrics.is_some() && r.alpha.is_some() && r.lambda.is_some()).collect();
    placed.sort_by(|a, b| key_cmp(a, b));
    let mut cells = Vec::new();
    for group in placed.chunk_by(|a, b| key_cmp(a, b) == Ordering::Equal) {
        let first = group[0];
        let (alpha, lambda) = (first.alpha.unwrap(), first.lambda.unwrap());
        let rf: Vec<f64> = group.iter().map(|r| r.metrics.as_ref().unwrap().replication_factor).collect();
        let ratios: Vec<f64> = graphs
            .iter()
            .filter(|s| s.alpha == alpha && s.lambda == lambda && group.iter().any(|r| r.seed == s.seed))
            .map(|s| s.ratio)
            .collect();
        cells.push(CellStats {
            scheme: first.scheme,
            machines: first.machines,
            alpha,
            lambda,
            ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
            mean: rf.iter().sum::<f64>() / rf.len() as f64,
            min: rf.iter().copied().fold(f64::INFINITY, f64::min),
            max: rf.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            seeds: rf.len(),
        });
    }
    cells
}

/// Which axis a plot CSV sweeps; the other parameters key the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Machines,
    Alpha,
    Lambda,
    Ratio,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::Machines, Axis::Alpha, Axis::Lambda, Axis::Ratio];

    pub fn file_name(self) -> &'static str {
        match self {
            Axis::Machines => "rf_vs_m.csv",
            Axis::Alpha => "rf_vs_alpha.csv",
            Axis::Lambda => "rf_vs_lambda.csv",
            Axis::Ratio => "rf_vs_ratio.csv",
        }
    }
}

/// Plot-ready CSV: one row per cell, series columns first, the swept value
/// next, sorted so every series is contiguous and ascending in `axis`.
pub fn plot_csv(cells: &[CellStats], axis: Axis) -> String {
    let mut sorted: Vec<&CellStats> = cells.iter().collect();
    let tail = "rf_mean,rf_min,rf_max,seeds";
    let header = match axis {
        Axis::Machines => format!("scheme,alpha,lambda,M,{tail}"),
        Axis::Alpha => format!("scheme,M,lambda,alpha,{tail}"),
        Axis::Lambda => format!("scheme,M,alpha,lambda,{tail}"),
        Axis::Ratio => format!("scheme,M,alpha,lambda,ratio,{tail}"),
    };
    sorted.sort_by(|a, b| {
        let head = a.scheme.cmp(&b.scheme);
        match axis {
            Axis::Machines => head
                .then(a.alpha.total_cmp(&b.alpha))
                .then(a.lambda.total_cmp(&b.lambda))
                .then(a.machines.cmp(&b.machines)),
            Axis::Alpha => head
                .then(a.machines.cmp(&b.machines))
                .then(a.lambda.total_cmp(&b.lambda))
                .then(a.alpha.total_cmp(&b.alpha)),
            Axis::Lambda => head
                .then(a.machines.cmp(&b.machines))
                .then(a.alpha.total_cmp(&b.alpha))
                .then(a.lambda.total_cmp(&b.lambda)),
            Axis::Ratio => head
                .then(a.machines.cmp(&b.machines))
                .then(a.ratio.unwrap_or(f64::NAN).total_cmp(&b.ratio.unwrap_or(f64::NAN))),
        }
    });
    let mut out = header;
    out.push('\n');
    for c in sorted {
        let stats = format!("{},{},{},{}", c.mean, c.min, c.max, c.seeds);
        let _ = match axis {
            Axis::Machines => writeln!(out, "{},{},{},{},{stats}", c.scheme, c.alpha, c.lambda, c.machines),
            Axis::Alpha => writeln!(out, "{},{},{},{},{stats}", c.scheme, c.machines, c.lambda, c.alpha),
            Axis::Lambda => writeln!(out, "{},{},{},{},{stats}", c.scheme, c.machines, c.alpha, c.lambda),
            Axis::Ratio => writeln!(
                out,
                "{},{},{},{},{},{stats}",
                c.scheme,
                c.machines,
                c.alpha,
                c.lambda,
                c.ratio.map_or_else(String::new, |r| r.to_string())
            ),
        };
    }
    out
}

/// Mean RF of `scheme` in the cell, if that cell was placed.
pub fn cell_mean(
    cells: &[CellStats],
    scheme: Scheme,
    machines: usize,
    alpha: f64,
    lambda: f64,
) -> Option<f64> {
    cells
        .iter()
        .find(|c| c.scheme == scheme && c.machines == machines && c.alpha == alpha && c.lambda == lambda)
        .map(|c| c.mean)
}

/// `Some(true)` when hyper < greedy < random in the cell, `None` when one
/// of the three is missing.
pub fn strictly_ordered(cells: &[CellStats], machines: usize, alpha: f64, lambda: f64) -> Option<bool> {
    let get = |s| cell_mean(cells, s, machines, alpha, lambda);
    let (h, g, r) = (get(Scheme::Hyper)?, get(Scheme::Greedy)?, get(Scheme::Random)?);
    Some(h < g && g < r)
}

#[derive(Debug, thiserror::Error)]
pub enum PayloadError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Admm(#[from] AdmmError),
}

/// One solve of the voter instance under one placement.
#[derive(Debug, Clone, PartialEq)]
pub struct PayloadRun {
    pub scheme: Scheme,
    pub replication_factor: f64,
    pub report: RunReport,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoterBench {
    pub persons: usize,
    pub seed: u64,
    pub machines: usize,
    pub beta: f64,
    pub admm: AdmmConfig,
    pub max_iters: u64,
    pub stop: StopRule,
}

/// Grounds the voter instance once and solves it under each scheme.
pub fn voter_payloads(
    bench: &VoterBench,
    schemes: &[Scheme],
) -> Result<(usize, usize, Vec<PayloadRun>), PayloadError> {
    let inst = ground_voter_model(&VoterConfig::new(bench.persons, bench.seed))?;
    let g = &inst.graph;
    let h = to_hypergraph(g);
    let mut runs = Vec::with_capacity(schemes.len());
    for &scheme in schemes {
        let a = place(g, &h, scheme, bench.machines, bench.beta, bench.seed)?;
        let rf = metrics(g, &a).replication_factor;
        let mut cluster = build_cluster(g, &a, &inst.specs, bench.admm)?;
        let report = cluster.run(bench.max_iters, bench.stop)?;
        runs.push(PayloadRun { scheme, replication_factor: rf, report });
    }
    Ok((g.num_subproblems(), g.num_consensus(), runs))
}

/// `cum_payload(hyper) / cum_payload(greedy)` at the end of both runs.
pub fn payload_ratio(runs: &[PayloadRun]) -> Option<f64> {
    let total = |s| runs.iter().find(|r| r.scheme == s).map(|r| r.report.total_payload() as f64);
    let (h, g) = (total(Scheme::Hyper)?, total(Scheme::Greedy)?);
    (g > 0.0).then(|| h / g)
}

pub fn payload_csv(runs: &[PayloadRun], bench: &VoterBench) -> String {
    let mut out = String::from("scheme,M,persons,seed,iter,frac_converged,cum_payload\n");
    for r in runs {
        for s in &r.report.steps {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.scheme, bench.machines, bench.persons, bench.seed, s.iter, s.frac_converged, s.cum_payload
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use aco_core::PartitionMetrics;

    fn row(scheme: Scheme, alpha: f64, seed: u64, rf: f64) -> MetricsRow {
        MetricsRow {
            scheme,
            machines: 4,
            alpha: Some(alpha),
            lambda: Some(2.0),
            metrics: Some(PartitionMetrics {
                scheme,
                machines: 4,
                replication_factor: rf,
                soed: None,
                cut_hyperedges: 0,
                max_edges: 0,
                min_edges: 0,
                max_subproblems: 0,
                min_subproblems: 0,
                imbalance: 1.0,
            }),
            seed,
        }
    }

    #[test]
    fn cells_average_over_seeds() {
        let rows = [
            row(Scheme::Greedy, 2.0, 1, 1.5),
            row(Scheme::Greedy, 2.0, 2, 2.5),
            row(Scheme::Hyper, 2.0, 1, 1.25),
            row(Scheme::Greedy, 2.4, 1, 1.75),
        ];
        let cells = aggregate(&rows, &[]);
        assert_eq!(cells.len(), 3);
        let g = cells.iter().find(|c| c.scheme == Scheme::Greedy && c.alpha == 2.0).unwrap();
        assert_eq!((g.mean, g.min, g.max, g.seeds), (2.0, 1.5, 2.5, 2));
        assert_eq!(strictly_ordered(&cells, 4, 2.0, 2.0), None);

        let csv = plot_csv(&cells, Axis::Alpha);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "scheme,M,lambda,alpha,rf_mean,rf_min,rf_max,seeds");
        assert_eq!(lines[1], "greedy,4,2,2,2,1.5,2.5,2");
        assert_eq!(lines[2], "greedy,4,2,2.4,1.75,1.75,1.75,1");
    }
}
