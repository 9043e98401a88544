//! Plain-text serialization: edge lists, stored subgraphs, and fractional
//! edge-weight files.
//!
//! Graph files start with `n m` followed by one `u v` line per edge with
//! `0 <= u < v < n`. The canonical writer emits edges in lexicographic
//! order, so `write(parse(t)) == t` for canonical inputs and parsing a
//! written graph reproduces it with identical edge indices.
//!
//! A stored subgraph is a `# subgraph of <digest>` header followed by one
//! host edge index per line; the digest ties it to the canonical text of its
//! host graph. Weight files carry one nonnegative rational (`p/q` or a bare
//! integer) per edge index per line.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError, SpanningSubgraph};

/// Errors raised while reading serialized artifacts.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("bad graph text: {0}")]
    Graph(#[from] GraphError),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("subgraph digest {found} does not match host graph digest {expected}")]
    DigestMismatch { expected: String, found: String },
    #[error("edge index {0} out of range for {1} edges")]
    EdgeOutOfRange(u32, usize),
    #[error("weight {0} outside [0, 1]")]
    WeightOutOfRange(String),
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
}

fn bad(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Malformed { line: line + 1, msg: msg.into() }
}

/// Parses the `n m` / `u v` edge-list format. Edge indices follow file order.
pub fn parse_edge_list(text: &str) -> Result<Graph, IoError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or_else(|| bad(0, "empty graph file"))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(ln, "header must be `n m`"))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(ln, "header must be `n m`"))?;
    if parts.next().is_some() {
        return Err(bad(ln, "header must be exactly `n m`"));
    }
    let mut pairs = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut parts = line.split_whitespace();
        let u: u32 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(ln, "edge line must be `u v`"))?;
        let v: u32 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(ln, "edge line must be `u v`"))?;
        if parts.next().is_some() {
            return Err(bad(ln, "edge line must be exactly `u v`"));
        }
        if u >= v {
            return Err(bad(ln, format!("edges must satisfy u < v, got {u} {v}")));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(bad(0, format!("header promises {m} edges, found {}", pairs.len())));
    }
    Ok(Graph::new(n, &pairs)?)
}

/// Canonical serialization: edges sorted lexicographically.
pub fn write_edge_list(g: &Graph) -> String {
    let mut edges: Vec<(u32, u32)> = g.edges().to_vec();
    edges.sort_unstable();
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// A short stable digest of the canonical graph text (FNV-1a, 64-bit hex);
/// used to tie stored subgraphs to their host graph.
pub fn graph_digest(g: &Graph) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in write_edge_list(g).bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

/// Serializes a subgraph as its host digest plus selected edge indices.
pub fn write_subgraph(h: &SpanningSubgraph<'_>) -> String {
    let mut out = format!("# subgraph of {}\n", graph_digest(h.parent()));
    for e in h.selected_edges() {
        out.push_str(&format!("{e}\n"));
    }
    out
}

/// Reads a stored subgraph back over its host graph, checking the digest.
pub fn parse_subgraph<'g>(host: &'g Graph, text: &str) -> Result<SpanningSubgraph<'g>, IoError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or_else(|| bad(0, "empty subgraph file"))?;
    let found = header
        .strip_prefix("# subgraph of ")
        .map(str::trim)
        .ok_or_else(|| bad(ln, "missing `# subgraph of <digest>` header"))?;
    let expected = graph_digest(host);
    if found != expected {
        return Err(IoError::DigestMismatch { expected, found: found.to_string() });
    }
    let mut h = SpanningSubgraph::empty(host);
    for (ln, line) in lines {
        let e: u32 = line
            .trim()
            .parse()
            .map_err(|_| bad(ln, format!("bad edge index `{}`", line.trim())))?;
        if e as usize >= host.edge_count() {
            return Err(IoError::EdgeOutOfRange(e, host.edge_count()));
        }
        h.insert(e);
    }
    Ok(h)
}

/// Parses one rational per edge index per line (`p/q` or a bare integer),
/// each in `[0, 1]`.
pub fn parse_weights(text: &str, expected: usize) -> Result<Vec<BigRational>, IoError> {
    let mut weights = Vec::with_capacity(expected);
    for (ln, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let value = match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad(ln, "bad numerator"))?;
                let q: BigInt = q.trim().parse().map_err(|_| bad(ln, "bad denominator"))?;
                if q.is_zero() {
                    return Err(bad(ln, "zero denominator"));
                }
                BigRational::new(p, q)
            }
            None => {
                let p: BigInt = t.parse().map_err(|_| bad(ln, "bad weight"))?;
                BigRational::from_integer(p)
            }
        };
        if value < BigRational::zero() || value > BigRational::one() {
            return Err(IoError::WeightOutOfRange(t.to_string()));
        }
        weights.push(value);
    }
    if weights.len() != expected {
        return Err(IoError::WeightCount { expected, found: weights.len() });
    }
    Ok(weights)
}

/// Serializes weights in the `p/q` form accepted by [`parse_weights`].
pub fn write_weights(weights: &[BigRational]) -> String {
    let mut out = String::new();
    for w in weights {
        out.push_str(&format!("{}/{}\n", w.numer(), w.denom()));
    }
    out
}
