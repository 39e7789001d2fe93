//! The `pgraph` text format.
//!
//! ```text
//! pgraph 1            # magic + version
//! n 4
//! v 1 2.0 1.0         # v <label> <mu> <kappa>
//! e 1 2 1.0 +1        # e <i> <j> <w> <sigma>
//! ```
//!
//! Labels are 1-based, `#` starts a comment, and vertices without a `v`
//! line get `mu = 1`, `kappa = 0`.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Edge, GraphError, Sign, SignedGraph};

pub const MAGIC: &str = "pgraph";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GraphError },
    #[error("unsupported pgraph version {0} (expected {VERSION})")]
    VersionMismatch(u32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("bad {what} '{tok}'")))
}

fn label(tok: Option<&str>, line: usize, n: usize) -> Result<usize, ParseError> {
    let v: usize = field(tok, line, "vertex label")?;
    if v == 0 || v > n {
        return Err(ParseError::Invalid { line, source: GraphError::BadLabel { label: v, n } });
    }
    Ok(v - 1)
}

pub fn parse_graph(text: &str) -> Result<SignedGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some(MAGIC) {
        return Err(syntax(ln, format!("expected '{MAGIC} <version>'")));
    }
    let version: u32 = field(toks.next(), ln, "version")?;
    if version != VERSION {
        return Err(ParseError::VersionMismatch(version));
    }

    let (ln, count) = lines.next().ok_or_else(|| syntax(ln, "missing 'n' line"))?;
    let mut toks = count.split_whitespace();
    if toks.next() != Some("n") {
        return Err(syntax(ln, "expected 'n <count>'"));
    }
    let n: usize = field(toks.next(), ln, "vertex count")?;

    let mut mu = vec![1.0; n];
    let mut kappa = vec![0.0; n];
    let mut vseen = vec![false; n];
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_lines = Vec::new();
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("v") => {
                let v = label(toks.next(), ln, n)?;
                if std::mem::replace(&mut vseen[v], true) {
                    return Err(syntax(ln, format!("vertex {} listed twice", v + 1)));
                }
                mu[v] = field(toks.next(), ln, "mu")?;
                kappa[v] = field(toks.next(), ln, "kappa")?;
            }
            Some("e") => {
                let i = label(toks.next(), ln, n)?;
                let j = label(toks.next(), ln, n)?;
                let w: f64 = field(toks.next(), ln, "weight")?;
                let s: i32 = field(toks.next(), ln, "signature")?;
                let sigma = Sign::from_i32(s).ok_or_else(|| syntax(ln, format!("signature must be +1 or -1, got {s}")))?;
                edges.push(Edge::new(i, j, w, sigma));
                edge_lines.push(ln);
            }
            Some(tag) => return Err(syntax(ln, format!("unknown record '{tag}'"))),
            None => unreachable!(),
        }
        if let Some(extra) = toks.next() {
            return Err(syntax(ln, format!("unexpected trailing field '{extra}'")));
        }
    }

    SignedGraph::new(mu, kappa, edges).map_err(|e| {
        let line = match &e {
            GraphError::NonpositiveMeasure(v, _) | GraphError::NonFinitePotential(v, _) => {
                // locate the v line if any, else point at the header
                text.lines()
                    .position(|l| {
                        let mut t = l.split_whitespace();
                        t.next() == Some("v") && t.next().and_then(|s| s.parse::<usize>().ok()) == Some(*v)
                    })
                    .map_or(1, |k| k + 1)
            }
            GraphError::SelfLoop(a) => first_edge_line(&edge_lines, text, |i, j| i == *a && j == *a),
            GraphError::NonpositiveWeight(a, b, _) => first_edge_line(&edge_lines, text, |i, j| i == *a && j == *b),
            GraphError::DuplicateEdge(a, b) => {
                // the second occurrence is the offender
                let hits: Vec<usize> = edge_lines
                    .iter()
                    .copied()
                    .filter(|&ln| endpoints(text, ln).is_some_and(|(i, j)| (i, j) == (*a, *b)))
                    .collect();
                hits.last().copied().unwrap_or(1)
            }
            _ => 1,
        };
        ParseError::Invalid { line, source: e }
    })
}

fn endpoints(text: &str, ln: usize) -> Option<(usize, usize)> {
    let l = text.lines().nth(ln - 1)?;
    let mut t = l.split_whitespace().skip(1);
    Some((t.next()?.parse().ok()?, t.next()?.parse().ok()?))
}

fn first_edge_line(edge_lines: &[usize], text: &str, pred: impl Fn(usize, usize) -> bool) -> usize {
    edge_lines
        .iter()
        .copied()
        .find(|&ln| endpoints(text, ln).is_some_and(|(i, j)| pred(i, j)))
        .unwrap_or(1)
}

/// Serializes with shortest round-trip float formatting, so
/// `parse_graph(&write_graph(g)) == g`.
pub fn write_graph(g: &SignedGraph) -> String {
    let mut s = String::new();
    writeln!(s, "{MAGIC} {VERSION}").unwrap();
    writeln!(s, "n {}", g.n()).unwrap();
    for (v, (m, k)) in g.mu().iter().zip(g.kappa()).enumerate() {
        if *m != 1.0 || *k != 0.0 {
            writeln!(s, "v {} {:?} {:?}", v + 1, m, k).unwrap();
        }
    }
    for e in g.edges() {
        writeln!(s, "e {} {} {:?} {}", e.i + 1, e.j + 1, e.w, e.sigma).unwrap();
    }
    s
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<SignedGraph, ParseError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph_file(g: &SignedGraph, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, write_graph(g))
}
