//! CSV rows and summary blocks written by the command line.

use std::fmt::Write as _;

use aco_core::{PartitionMetrics, RunReport, Scheme};

pub const METRICS_HEADER: &str = "scheme,M,alpha,lambda,rf,soed,imbalance,seed";
pub const RUN_HEADER: &str = "iter,active_subproblems,frac_converged,max_primal,max_dual,cum_payload";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

/// One partition cell. `metrics` is `None` when the scheme could not place
/// the graph (infeasible balance); the value columns are then left empty.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub scheme: Scheme,
    pub machines: usize,
    pub alpha: Option<f64>,
    pub lambda: Option<f64>,
    pub metrics: Option<PartitionMetrics>,
    pub seed: u64,
}

impl MetricsRow {
    pub fn csv(&self) -> String {
        let m = self.metrics.as_ref();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.scheme,
            self.machines,
            opt(self.alpha),
            opt(self.lambda),
            opt(m.map(|m| m.replication_factor)),
            opt(m.and_then(|m| m.soed)),
            opt(m.map(|m| m.imbalance)),
            self.seed
        )
    }
}

pub fn metrics_csv(rows: &[MetricsRow]) -> String {
    let mut out = String::from(METRICS_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

pub fn run_csv(report: &RunReport) -> String {
    let mut out = String::from(RUN_HEADER);
    out.push('\n');
    for s in &report.steps {
        let _ = writeln!(
            out,
            "{},{},{},{:e},{:e},{}",
            s.iter, s.active_subproblems, s.frac_converged, s.max_primal, s.max_dual, s.cum_payload
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as u64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

/// Flat JSON object, one key per line, keys in the given order.
pub fn summary_block(fields: &[(&str, Value)]) -> String {
    let mut out = String::from("{\n");
    for (k, (key, value)) in fields.iter().enumerate() {
        let rendered = match value {
            Value::Num(v) if v.is_finite() => format!("{v:?}"),
            Value::Num(_) => "null".to_string(),
            Value::Int(v) => v.to_string(),
            Value::Bool(v) => v.to_string(),
            Value::Text(s) => format!("{s:?}"),
        };
        let comma = if k + 1 < fields.len() { "," } else { "" };
        let _ = writeln!(out, "  \"{key}\": {rendered}{comma}");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use aco_core::StepReport;

    #[test]
    fn run_rows() {
        let step = StepReport {
            iter: 1,
            active_subproblems: 2,
            updated_consensus: 1,
            frac_converged: 0.5,
            max_primal: 0.25,
            max_dual: 1e-5,
            payload: 3,
            cum_payload: 3,
        };
        let report =
            RunReport { steps: vec![step], stopped: false, objective: 2.0, machine_payload: vec![3] };
        assert_eq!(run_csv(&report), format!("{RUN_HEADER}\n1,2,0.5,2.5e-1,1e-5,3\n"));
    }

    #[test]
    fn summary_is_json_shaped() {
        let s =
            summary_block(&[("objective", 2.0.into()), ("scheme", "hyper".into()), ("x", f64::NAN.into())]);
        assert_eq!(s, "{\n  \"objective\": 2.0,\n  \"scheme\": \"hyper\",\n  \"x\": null\n}\n");
    }
}
