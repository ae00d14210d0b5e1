//! Line-oriented text formats for graphs, assignments and problems.
//!
//! Every format accepts `#` comment lines anywhere. A leading block of
//! `# key=value ...` comments records how a file was produced and can be
//! read back with [`read_provenance`].

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use aco_core::problem::HingePower;
use aco_core::{
    Assignment, BipartiteGraph, GraphError, Objective, PartitionError, ProblemError, Scheme, SubproblemSpec,
};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid assignment: {0}")]
    Assignment(#[from] PartitionError),
    #[error("invalid problem: {0}")]
    Problem(#[from] ProblemError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> FormatError + '_ {
    move |source| FormatError::Io { path: path.display().to_string(), source }
}

/// Non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
}

fn field<T: FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T, FormatError> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token.parse().map_err(|_| parse_err(line, format!("bad {what} `{token}`")))
}

/// `key=value` pairs from the leading comment block.
pub fn read_provenance(text: &str) -> Vec<(String, String)> {
    text.lines()
        .take_while(|l| l.trim_start().starts_with('#'))
        .flat_map(|l| l.trim_start().trim_start_matches('#').split_whitespace())
        .filter_map(|tok| tok.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

pub fn provenance_value<'a>(prov: &'a [(String, String)], key: &str) -> Option<&'a str> {
    prov.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn write_header(out: &mut String, header: &[String]) {
    for line in header {
        let _ = writeln!(out, "# {line}");
    }
}

pub fn format_graph(g: &BipartiteGraph, header: &[String]) -> String {
    let mut out = String::new();
    write_header(&mut out, header);
    let _ = writeln!(out, "bipartite {} {} {}", g.num_subproblems(), g.num_consensus(), g.num_edges());
    for i in 0..g.num_subproblems() {
        let mut sep = "";
        for l in g.neighbors(i) {
            let _ = write!(out, "{sep}{l}");
            sep = " ";
        }
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph, FormatError> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing `bipartite` header"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("bipartite") {
        return Err(parse_err(hl, "expected `bipartite <|S|> <|C|> <|E|>`"));
    }
    let num_sub: usize = field(hl, tok.next(), "|S|")?;
    let num_con: usize = field(hl, tok.next(), "|C|")?;
    let num_edges: usize = field(hl, tok.next(), "|E|")?;
    if tok.next().is_some() {
        return Err(parse_err(hl, "trailing fields in header"));
    }

    let mut rows = Vec::with_capacity(num_sub);
    let mut last_line = hl;
    let mut edges = 0usize;
    for (ln, line) in lines {
        last_line = ln;
        if rows.len() == num_sub {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_err(ln, format!("more than {num_sub} subproblem rows")));
        }
        let mut row: Vec<u32> = Vec::new();
        for t in line.split_whitespace() {
            let l: u32 = field(ln, Some(t), "consensus id")?;
            if l as usize >= num_con {
                return Err(parse_err(ln, format!("consensus id {l} out of range (|C| = {num_con})")));
            }
            if row.last().is_some_and(|&p| p >= l) {
                return Err(parse_err(ln, "consensus ids must be strictly ascending"));
            }
            row.push(l);
        }
        edges += row.len();
        if edges > num_edges {
            return Err(parse_err(ln, format!("more than {num_edges} edges")));
        }
        rows.push(row);
    }
    if rows.len() < num_sub {
        return Err(parse_err(
            last_line + 1,
            format!("expected {num_sub} subproblem rows, found {}", rows.len()),
        ));
    }
    if edges != num_edges {
        return Err(parse_err(hl, format!("header declares {num_edges} edges, body has {edges}")));
    }
    Ok(BipartiteGraph::from_adjacency(num_con, rows)?)
}

pub fn format_assignment(g: &BipartiteGraph, a: &Assignment) -> String {
    let mut out = String::with_capacity(g.num_edges() * 16);
    let _ = writeln!(out, "assignment {} {}", a.machines(), a.scheme());
    for (e, i, l) in g.edges() {
        let _ = writeln!(out, "{i} {l} {}", a.edge_owner(e));
    }
    out
}

/// Reads an assignment of `g`. Edge lines must follow the graph's edge
/// order (subproblem-major, ascending consensus).
pub fn parse_assignment(text: &str, g: &BipartiteGraph) -> Result<Assignment, FormatError> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing `assignment` header"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("assignment") {
        return Err(parse_err(hl, "expected `assignment <M> <scheme>`"));
    }
    let machines: usize = field(hl, tok.next(), "machine count")?;
    let scheme: Scheme = field(hl, tok.next(), "scheme")?;

    let mut expected = g.edges();
    let mut owners = Vec::with_capacity(g.num_edges());
    let mut last_line = hl;
    for (ln, line) in lines {
        last_line = ln;
        if line.trim().is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let i: usize = field(ln, tok.next(), "subproblem")?;
        let l: usize = field(ln, tok.next(), "consensus")?;
        let m: u16 = field(ln, tok.next(), "machine")?;
        match expected.next() {
            Some((_, ei, el)) if (ei, el) == (i, l) => owners.push(m),
            Some((_, ei, el)) => {
                return Err(parse_err(ln, format!("edge ({i}, {l}) where the graph has ({ei}, {el})")))
            }
            None => return Err(parse_err(ln, format!("more than {} edges", g.num_edges()))),
        }
    }
    if owners.len() < g.num_edges() {
        return Err(parse_err(
            last_line + 1,
            format!("expected {} edges, found {}", g.num_edges(), owners.len()),
        ));
    }
    Ok(Assignment::from_edge_owners(g, machines, scheme, owners)?)
}

pub fn format_problem(specs: &[SubproblemSpec], header: &[String]) -> String {
    let mut out = String::new();
    write_header(&mut out, header);
    for s in specs {
        let _ = writeln!(out, "{s}");
    }
    out
}

fn floats<'a>(
    tok: &mut impl Iterator<Item = &'a str>,
    ln: usize,
    count: usize,
    what: &str,
) -> Result<Vec<f64>, FormatError> {
    (0..count).map(|_| field(ln, tok.next(), what)).collect()
}

fn parse_spec(ln: usize, line: &str) -> Result<SubproblemSpec, FormatError> {
    let mut tok = line.split_whitespace();
    let kind = tok.next().ok_or_else(|| parse_err(ln, "empty subproblem line"))?;
    let n: usize = field(ln, tok.next(), "slot count")?;
    let slots = (0..n).map(|_| field(ln, tok.next(), "slot id")).collect::<Result<Vec<u32>, _>>()?;
    let objective = match kind {
        "quad" => {
            let q = floats(&mut tok, ln, n * n, "Q entry")?;
            let c = floats(&mut tok, ln, n, "c entry")?;
            Objective::Quadratic { q, c }
        }
        "hinge" => {
            let weight = field(ln, tok.next(), "weight")?;
            let p: u32 = field(ln, tok.next(), "power")?;
            let power = HingePower::from_exponent(p)
                .ok_or_else(|| parse_err(ln, format!("hinge power must be 1 or 2, got {p}")))?;
            let b = field(ln, tok.next(), "offset")?;
            let a = floats(&mut tok, ln, n, "coefficient")?;
            Objective::Hinge { weight, a, b, power }
        }
        "simplex" => Objective::Simplex { dimension: field(ln, tok.next(), "dimension")? },
        other => return Err(parse_err(ln, format!("unknown subproblem kind `{other}`"))),
    };
    if tok.next().is_some() {
        return Err(parse_err(ln, "trailing fields"));
    }
    Ok(SubproblemSpec::new(slots, objective))
}

/// Reads one spec per non-comment line and validates each.
pub fn parse_problem(text: &str) -> Result<Vec<SubproblemSpec>, FormatError> {
    let mut specs = Vec::new();
    for (ln, line) in data_lines(text) {
        if line.trim().is_empty() {
            continue;
        }
        let spec = parse_spec(ln, line)?;
        spec.validate(specs.len())?;
        specs.push(spec);
    }
    Ok(specs)
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(io_err(path))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    w.write_all(text.as_bytes()).and_then(|_| w.flush()).map_err(io_err(path))
}

pub fn read_graph(path: &Path) -> Result<BipartiteGraph, FormatError> {
    parse_graph(&read_text(path)?)
}

pub fn write_graph(path: &Path, g: &BipartiteGraph, header: &[String]) -> Result<(), FormatError> {
    write_text(path, &format_graph(g, header))
}

pub fn read_assignment(path: &Path, g: &BipartiteGraph) -> Result<Assignment, FormatError> {
    parse_assignment(&read_text(path)?, g)
}

pub fn write_assignment(path: &Path, g: &BipartiteGraph, a: &Assignment) -> Result<(), FormatError> {
    write_text(path, &format_assignment(g, a))
}

pub fn read_problem(path: &Path) -> Result<Vec<SubproblemSpec>, FormatError> {
    parse_problem(&read_text(path)?)
}

pub fn write_problem(path: &Path, specs: &[SubproblemSpec], header: &[String]) -> Result<(), FormatError> {
    write_text(path, &format_problem(specs, header))
}
