//! Plain-text edge-list format.
//!
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v>
//! m <u> <v>
//! ```
//!
//! Ids are 0-based. `m` lines are optional and name matched pairs.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Matching};

/// A parsed instance: the graph and, if any `m` lines were present, a matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub matching: Option<Matching>,
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_nat(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut pairs = Vec::new();
    let mut pair_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut toks = s.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                let n = parse_nat(toks.next(), line, "vertex count")?;
                let m = parse_nat(toks.next(), line, "edge count")?;
                header = Some((n, m));
            }
            "e" | "m" => {
                let Some((n, _)) = header else {
                    return Err(parse_err(line, "edge before header"));
                };
                let u = parse_nat(toks.next(), line, "endpoint")?;
                let v = parse_nat(toks.next(), line, "endpoint")?;
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("vertex {} out of range", u.max(v))));
                }
                if tag == "e" {
                    edges.push((u, v));
                } else {
                    pairs.push((u, v));
                    pair_lines.push(line);
                }
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing header `p <n> <m>`"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let graph = Graph::new(n, edges).map_err(|e| parse_err(0, e.to_string()))?;
    let matching = if pairs.is_empty() {
        None
    } else {
        let mut mm = Matching::empty(n);
        for (&(u, v), &line) in pairs.iter().zip(&pair_lines) {
            if graph.find_edge(u, v).is_none() {
                return Err(parse_err(line, format!("matched pair ({u}, {v}) is not an edge")));
            }
            if !mm.is_free(u) || !mm.is_free(v) {
                return Err(parse_err(line, "vertex matched twice"));
            }
            mm.set_pair(u, v);
        }
        Some(mm)
    };
    Ok(Instance { graph, matching })
}

/// Canonical text form: sorted edges, then sorted matched pairs.
pub fn write_instance(graph: &Graph, matching: Option<&Matching>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", graph.n(), graph.m());
    for (u, v) in graph.sorted_edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    if let Some(m) = matching {
        for (u, v) in m.pairs() {
            let _ = writeln!(out, "m {u} {v}");
        }
    }
    out
}
