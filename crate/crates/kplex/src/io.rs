//! Text formats: DIMACS clique files, weighted edge lists and partition
//! dumps. All vertex labels in text are 1-based.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use kplex_core::{Duplicates, GraphError, Solution, WeightedGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Other(String),
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceFormat {
    Dimacs,
    Edgelist,
}

impl InstanceFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceFormat::Dimacs => "dimacs",
            InstanceFormat::Edgelist => "edgelist",
        }
    }

    /// `.clq`/`.col`/`.dimacs` files are DIMACS, anything else an edge list.
    pub fn guess(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("clq" | "col" | "dimacs") => InstanceFormat::Dimacs,
            _ => InstanceFormat::Edgelist,
        }
    }
}

fn parse_vertex(tok: &str, line: usize, n: Option<usize>) -> Result<usize, ParseError> {
    let id: usize = tok
        .parse()
        .map_err(|_| at(line, format!("invalid vertex id `{tok}`")))?;
    if id == 0 {
        return Err(at(line, "vertex ids start at 1"));
    }
    if let Some(n) = n {
        if id > n {
            return Err(at(line, format!("vertex {id} out of range 1..={n}")));
        }
    }
    Ok(id - 1)
}

/// Parses a DIMACS ASCII clique file (`c`, `p edge n m`, `e u v` lines).
/// All weights are set to 1. Repeated edges, in either orientation, are
/// collapsed.
pub fn parse_dimacs(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        match tag {
            "c" => {}
            "p" => {
                if n.is_some() {
                    return Err(at(line, "second problem line"));
                }
                let kind = tokens.next();
                if !matches!(kind, Some("edge" | "col")) {
                    return Err(at(line, "expected `p edge <n> <m>`"));
                }
                let count = |tok: Option<&str>| -> Result<usize, ParseError> {
                    tok.and_then(|t| t.parse().ok())
                        .ok_or_else(|| at(line, "expected `p edge <n> <m>`"))
                };
                n = Some(count(tokens.next())?);
                count(tokens.next())?;
                if tokens.next().is_some() {
                    return Err(at(line, "trailing tokens after problem line"));
                }
            }
            "e" => {
                let Some(nv) = n else {
                    return Err(at(line, "edge before problem line"));
                };
                let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
                    return Err(at(line, "expected `e <u> <v>`"));
                };
                let u = parse_vertex(a, line, Some(nv))?;
                let v = parse_vertex(b, line, Some(nv))?;
                if u == v {
                    return Err(at(line, format!("self-loop on vertex {}", u + 1)));
                }
                edges.push((u, v, 1.0));
            }
            other => return Err(at(line, format!("unexpected line tag `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| ParseError::Other("missing `p edge` problem line".into()))?;
    Ok(WeightedGraph::build(n, edges, Duplicates::Collapse)?)
}

/// Parses a whitespace-separated `<u> <v> <w>` edge list. `#` starts a
/// comment. An optional first data line `<n> <m>` fixes the vertex count;
/// without it `n` is the largest id seen.
pub fn parse_weighted_edge_list(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut seen_data = false;
    let mut edges = Vec::new();
    let mut pairs = HashSet::new();
    let mut max_id = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let first_data = !seen_data;
        seen_data = true;
        match tokens.len() {
            2 if first_data => {
                let parse = |t: &str| -> Result<usize, ParseError> {
                    t.parse()
                        .map_err(|_| at(line, format!("invalid header count `{t}`")))
                };
                header = Some((parse(tokens[0])?, parse(tokens[1])?, line));
            }
            3 => {
                let limit = header.map(|(n, _, _)| n);
                let u = parse_vertex(tokens[0], line, limit)?;
                let v = parse_vertex(tokens[1], line, limit)?;
                let w: f64 = tokens[2]
                    .parse()
                    .map_err(|_| at(line, format!("invalid weight `{}`", tokens[2])))?;
                if u == v {
                    return Err(at(line, format!("self-loop on vertex {}", u + 1)));
                }
                if !w.is_finite() || w <= 0.0 {
                    return Err(at(
                        line,
                        format!("weight must be positive, got {}", tokens[2]),
                    ));
                }
                if !pairs.insert((u.min(v), u.max(v))) {
                    return Err(at(
                        line,
                        format!("duplicate edge {{{}, {}}}", u.min(v) + 1, u.max(v) + 1),
                    ));
                }
                max_id = max_id.max(u + 1).max(v + 1);
                edges.push((u, v, w));
            }
            _ => return Err(at(line, "expected `<u> <v> <weight>`")),
        }
    }
    let n = match header {
        Some((n, m, line)) => {
            if m != edges.len() {
                return Err(at(
                    line,
                    format!("header declares {m} edges, file has {}", edges.len()),
                ));
            }
            n
        }
        None => max_id,
    };
    Ok(WeightedGraph::from_edges(n, edges)?)
}

/// Writes `g` as an edge list with an `<n> <m>` header. Weights use the
/// shortest representation that reads back to the same `f64`.
pub fn write_edge_list(g: &WeightedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.weight).unwrap();
    }
    out
}

/// Reads an instance file. `dimacs_weights` replaces the unit weights of a
/// DIMACS file by the `((i + j) mod 200) + 1` rule.
pub fn load_instance(
    path: &Path,
    format: InstanceFormat,
    dimacs_weights: bool,
) -> anyhow::Result<WeightedGraph> {
    use anyhow::Context;
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let g = match format {
        InstanceFormat::Dimacs => parse_dimacs(&text),
        InstanceFormat::Edgelist => parse_weighted_edge_list(&text),
    }
    .with_context(|| format!("cannot parse {}", path.display()))?;
    Ok(if dimacs_weights {
        g.with_dimacs_weights()
    } else {
        g
    })
}

/// Header values written above the block lines of a partition dump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DumpHeader {
    pub k: usize,
    pub feasible: bool,
    pub weight: f64,
    pub objective: f64,
}

/// One `P<j>: v1 v2 ...` line per block, blocks in canonical order.
pub fn write_partition(s: &Solution, header: &DumpHeader) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "# k={} feasible={} weight={} objective={}",
        header.k, header.feasible, header.weight, header.objective
    )
    .unwrap();
    for (j, block) in s.canonical_blocks().iter().enumerate() {
        write!(out, "P{}:", j + 1).unwrap();
        for v in block {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Reads a partition dump for a graph with `n` vertices. Every vertex must
/// appear in exactly one block. `#` lines are ignored.
pub fn parse_partition(text: &str, n: usize) -> Result<Solution, ParseError> {
    let mut labels: Vec<Option<usize>> = vec![None; n];
    let mut used = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (name, members) = trimmed
            .split_once(':')
            .ok_or_else(|| at(line, "expected `P<j>: <v1> <v2> ...`"))?;
        let block: usize = name
            .strip_prefix('P')
            .and_then(|j| j.trim().parse().ok())
            .ok_or_else(|| at(line, format!("invalid block name `{name}`")))?;
        if !used.insert(block) {
            return Err(at(line, format!("block P{block} listed twice")));
        }
        let mut empty = true;
        for tok in members.split_whitespace() {
            empty = false;
            let v = parse_vertex(tok, line, Some(n))?;
            if labels[v].is_some() {
                return Err(at(line, format!("vertex {} assigned twice", v + 1)));
            }
            labels[v] = Some(block);
        }
        if empty {
            return Err(at(line, format!("block P{block} is empty")));
        }
    }
    let missing: Vec<String> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_none())
        .map(|(v, _)| (v + 1).to_string())
        .take(10)
        .collect();
    if !missing.is_empty() {
        return Err(ParseError::Other(format!(
            "vertices not assigned to any block: {}",
            missing.join(" ")
        )));
    }
    let labels: Vec<usize> = labels.into_iter().map(Option::unwrap).collect();
    Ok(Solution::from_labels(&labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_triangle() {
        let g = parse_dimacs("c tiny\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!((g.n(), g.edge_count(), g.w_total()), (3, 3, 3.0));
    }

    #[test]
    fn dimacs_collapses_reversed_duplicates() {
        let g = parse_dimacs("p edge 2 1\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn dimacs_errors_name_the_line() {
        let err = |t: &str| parse_dimacs(t).unwrap_err().to_string();
        assert_eq!(
            err("p edge 2 1\ne 1 3\n"),
            "line 2: vertex 3 out of range 1..=2"
        );
        assert_eq!(
            err("c x\np edge 2 1\ne 2 2\n"),
            "line 3: self-loop on vertex 2"
        );
        assert_eq!(err("p edges 2\n"), "line 1: expected `p edge <n> <m>`");
        assert_eq!(err("e 1 2\n"), "line 1: edge before problem line");
        assert_eq!(
            err("p edge 2 1\nx 1 2\n"),
            "line 2: unexpected line tag `x`"
        );
        assert_eq!(err("c only\n"), "missing `p edge` problem line");
    }

    #[test]
    fn edge_list_cases() {
        let g = parse_weighted_edge_list("1 2 2.5\n").unwrap();
        assert_eq!((g.n(), g.w_total()), (2, 2.5));

        let g = parse_weighted_edge_list("# K3\n1 2 1\n2 3 1\n1 3 1 # last\n").unwrap();
        assert_eq!((g.n(), g.edge_count(), g.w_total()), (3, 3, 3.0));

        let err = parse_weighted_edge_list("1 2 1\n1 2 2\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: duplicate edge {1, 2}");
        let err = parse_weighted_edge_list("1 2 1\n2 1 2\n").unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 2, .. }));
        assert!(matches!(
            parse_weighted_edge_list("1 2 0\n").unwrap_err(),
            ParseError::Line { line: 1, .. }
        ));
        assert!(matches!(
            parse_weighted_edge_list("1 2 -3\n").unwrap_err(),
            ParseError::Line { line: 1, .. }
        ));
        assert!(matches!(
            parse_weighted_edge_list("3 3 1\n").unwrap_err(),
            ParseError::Line { line: 1, .. }
        ));
    }

    #[test]
    fn edge_list_header_allows_isolated_vertices() {
        let g = parse_weighted_edge_list("5 1\n1 2 1\n").unwrap();
        assert_eq!(g.n(), 5);
        assert!(parse_weighted_edge_list("5 2\n1 2 1\n").is_err());
        assert!(parse_weighted_edge_list("2 1\n1 3 1\n").is_err());
    }

    #[test]
    fn partition_dump_round_trip() {
        let s = Solution::from_labels(&[1, 0, 1, 2]);
        let header = DumpHeader {
            k: 1,
            feasible: true,
            weight: 3.0,
            objective: 4.5,
        };
        let text = write_partition(&s, &header);
        assert_eq!(
            text,
            "# k=1 feasible=true weight=3 objective=4.5\nP1: 1 3\nP2: 2\nP3: 4\n"
        );
        let back = parse_partition(&text, 4).unwrap();
        assert_eq!(back.canonical_blocks(), s.canonical_blocks());
    }

    #[test]
    fn partition_dump_errors() {
        assert!(parse_partition("P1: 1 2\n", 3).is_err());
        assert!(parse_partition("P1: 1 2\nP2: 2 3\n", 3).is_err());
        assert!(parse_partition("P1: 1 4\n", 3).is_err());
        assert!(parse_partition("Q1: 1 2 3\n", 3).is_err());
        assert!(parse_partition("P1: 1\nP1: 2 3\n", 3).is_err());
        assert!(parse_partition("P1:\nP2: 1 2 3\n", 3).is_err());
    }
}
