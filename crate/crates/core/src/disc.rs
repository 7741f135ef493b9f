//! Edges between punctures on the convexly punctured disc and how pairs of them sit.
//!
//! Punctures `1..n` are placed clockwise around the boundary.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::edge_count;

/// The edge `e_ij`, `i < j`, with its lexicographic position among all edges for `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeIndex {
    pub rank: usize,
    pub i: usize,
    pub j: usize,
    pub n: usize,
}

/// Accepts the endpoints in either order.
pub fn edge_rank(i: usize, j: usize, n: usize) -> Result<EdgeIndex> {
    let (i, j) = (i.min(j), i.max(j));
    if i == 0 || j > n || i == j {
        return Err(Error::OutOfRange(format!("e({i},{j}) is not an edge for n = {n}")));
    }
    let rank = (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
    Ok(EdgeIndex { rank, i, j, n })
}

pub fn rank_edge(r: usize, n: usize) -> Result<EdgeIndex> {
    if r >= edge_count(n) {
        return Err(Error::OutOfRange(format!("edge rank {r} for n = {n}")));
    }
    let mut rest = r;
    for i in 1..n {
        let row = n - i;
        if rest < row {
            return Ok(EdgeIndex { rank: r, i, j: i + 1 + rest, n });
        }
        rest -= row;
    }
    unreachable!("rank bounded by edge count")
}

/// All edges for `n` in lexicographic order.
pub fn all_edges(n: usize) -> Vec<EdgeIndex> {
    (0..edge_count(n)).map(|r| rank_edge(r, n).expect("rank in range")).collect()
}

impl EdgeIndex {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        edge_rank(i, j, n)
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.i == x || self.j == x
    }

    pub fn shared_endpoint(&self, other: &EdgeIndex) -> Option<usize> {
        if self.i == other.i && self.j == other.j {
            return None;
        }
        [self.i, self.j].into_iter().find(|&x| other.contains(x))
    }

    /// Parses `"e12"`, `"e_12"`, `"e(10,12)"` or `"e10,12"`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("bad edge {s:?}"));
        let body = s.trim().strip_prefix('e').ok_or_else(bad)?;
        let body = body.strip_prefix('_').unwrap_or(body);
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let (i, j) = if let Some((a, b)) = body.split_once(',') {
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        } else if body.len() == 2 && body.bytes().all(|b| b.is_ascii_digit()) {
            let bytes = body.as_bytes();
            ((bytes[0] - b'0') as usize, (bytes[1] - b'0') as usize)
        } else {
            return Err(bad());
        };
        edge_rank(i, j, n)
    }

    pub fn to_json(&self) -> Value {
        json!([self.i, self.j])
    }

    pub fn from_json(value: &Value, n: usize) -> Result<Self> {
        let pair = value
            .as_array()
            .filter(|a| a.len() == 2)
            .and_then(|a| Some((a[0].as_u64()? as usize, a[1].as_u64()? as usize)))
            .ok_or_else(|| Error::Parse(format!("edge must be [i, j], got {value}")))?;
        edge_rank(pair.0, pair.1, n)
    }
}

impl fmt::Display for EdgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 9 {
            write!(f, "e{}{}", self.i, self.j)
        } else {
            write!(f, "e({},{})", self.i, self.j)
        }
    }
}

/// How an ordered pair of edges `(e, f)` sits in the disc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgePairClass {
    Identical,
    Crossing,
    Noncrossing,
    /// `f` is to the right of `e`.
    Clockwise,
    /// `f` is to the left of `e`.
    Counterclockwise,
}

impl fmt::Display for EdgePairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgePairClass::Identical => "identical",
            EdgePairClass::Crossing => "crossing",
            EdgePairClass::Noncrossing => "noncrossing",
            EdgePairClass::Clockwise => "clockwise",
            EdgePairClass::Counterclockwise => "counterclockwise",
        })
    }
}

fn is_rotation_of_sorted(u: usize, v: usize, w: usize) -> bool {
    (u < v && v < w) || (v < w && w < u) || (w < u && u < v)
}

pub fn classify_pair(e: &EdgeIndex, f: &EdgeIndex) -> EdgePairClass {
    if e.i == f.i && e.j == f.j {
        return EdgePairClass::Identical;
    }
    match e.shared_endpoint(f) {
        Some(v) => {
            let u = if e.i == v { e.j } else { e.i };
            let w = if f.i == v { f.j } else { f.i };
            if is_rotation_of_sorted(u, v, w) {
                EdgePairClass::Clockwise
            } else {
                EdgePairClass::Counterclockwise
            }
        }
        None => {
            let (a, b, c, d) = (e.i, e.j, f.i, f.j);
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                EdgePairClass::Crossing
            } else {
                EdgePairClass::Noncrossing
            }
        }
    }
}

/// The edge closing the triangle spanned by two edges with one common endpoint.
pub fn third_edge(e: &EdgeIndex, f: &EdgeIndex) -> Result<EdgeIndex> {
    if e.i == f.i && e.j == f.j {
        return Err(Error::IdenticalEdges);
    }
    let v = e.shared_endpoint(f).ok_or(Error::NoSharedEndpoint)?;
    let u = if e.i == v { e.j } else { e.i };
    let w = if f.i == v { f.j } else { f.i };
    edge_rank(u, w, e.n.max(f.n))
}

/// Edges with both endpoints in `block`, lexicographic.
pub fn block_edges(block: &[usize], n: usize) -> Result<Vec<EdgeIndex>> {
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::with_capacity(edge_count(sorted.len()));
    for (k, &a) in sorted.iter().enumerate() {
        for &b in &sorted[k + 1..] {
            out.push(edge_rank(a, b, n)?);
        }
    }
    Ok(out)
}
