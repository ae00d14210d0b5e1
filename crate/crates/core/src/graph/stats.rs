use super::BipartiteGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub num_subproblems: usize,
    pub num_consensus: usize,
    pub num_edges: usize,
    pub min_subproblem_degree: usize,
    pub max_subproblem_degree: usize,
    pub mean_subproblem_degree: f64,
    pub min_consensus_degree: usize,
    pub max_consensus_degree: usize,
    pub mean_consensus_degree: f64,
    /// `|S| / |C|`.
    pub ratio: f64,
}

/// Degree summary in the shape of a synthetic-dataset table row. Empty
/// sides report zero for min/max/mean.
pub fn degree_stats(g: &BipartiteGraph) -> DegreeStats {
    let (s, c, e) = (g.num_subproblems(), g.num_consensus(), g.num_edges());
    let sub = (0..s).map(|i| g.subproblem_degree(i));
    let con = (0..c).map(|l| g.consensus_degree(l));
    let mean = |n: usize| if n == 0 { 0.0 } else { e as f64 / n as f64 };
    DegreeStats {
        num_subproblems: s,
        num_consensus: c,
        num_edges: e,
        min_subproblem_degree: sub.clone().min().unwrap_or(0),
        max_subproblem_degree: sub.max().unwrap_or(0),
        mean_subproblem_degree: mean(s),
        min_consensus_degree: con.clone().min().unwrap_or(0),
        max_consensus_degree: con.max().unwrap_or(0),
        mean_consensus_degree: mean(c),
        ratio: if c == 0 { 0.0 } else { s as f64 / c as f64 },
    }
}
