//! Distance representations and the three set predicates: resolving,
//! doubly resolving and strong resolving. Also the mutually maximally
//! distant (MMD) pairs used as the lower-bound structure for strong sets.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DistanceMatrix, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("the vertex set is empty")]
    EmptySet,
    #[error("a doubly resolving set needs at least two vertices, got {0}")]
    SetTooSmall(usize),
    #[error("vertex {index} out of range for {n} vertices")]
    OutOfRange { index: Vertex, n: usize },
    #[error("vertex {0} listed twice")]
    Duplicate(Vertex),
}

/// Which resolvability notion a set or search refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Resolving,
    Doubly,
    Strong,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Resolving => "resolving",
            Kind::Doubly => "doubly",
            Kind::Strong => "strong",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "resolving" => Ok(Kind::Resolving),
            "doubly" => Ok(Kind::Doubly),
            "strong" => Ok(Kind::Strong),
            _ => Err(format!("unknown kind {s:?} (expected resolving, doubly or strong)")),
        }
    }
}

/// Ordered set of distinct vertices. Order fixes the coordinate order of
/// representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(members: Vec<Vertex>, n: usize) -> Result<Self, KernelError> {
        let mut seen = vec![false; n];
        for &v in &members {
            if v >= n {
                return Err(KernelError::OutOfRange { index: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(KernelError::Duplicate(v));
            }
        }
        Ok(VertexSet(members))
    }

    /// Wraps members already known to be distinct and in range.
    pub(crate) fn from_trusted(members: Vec<Vertex>) -> Self {
        VertexSet(members)
    }

    pub fn members(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.0.iter().map(|&v| g.label(v)).collect()
    }
}

impl std::ops::Deref for VertexSet {
    type Target = [Vertex];

    fn deref(&self) -> &[Vertex] {
        &self.0
    }
}

/// Distance tuple `r(v|Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation(pub Vec<u8>);

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub fn representation(v: Vertex, q: &[Vertex], d: &DistanceMatrix) -> Result<Representation, KernelError> {
    if q.is_empty() {
        return Err(KernelError::EmptySet);
    }
    let row = d.row(v);
    Ok(Representation(q.iter().map(|&w| row[w]).collect()))
}

/// Two vertices that a candidate set fails to separate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub u: Vertex,
    pub v: Vertex,
    /// For doubly resolving: the constant `λ` with `r(u|Q) - r(v|Q) = λ·1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<i32>,
}

/// First pair `(u, v)`, `u < v`, with equal representations, scanning `v`
/// in increasing order.
pub fn resolving_violation(q: &[Vertex], d: &DistanceMatrix) -> Result<Option<Violation>, KernelError> {
    if q.is_empty() {
        return Err(KernelError::EmptySet);
    }
    let mut seen: HashMap<Vec<u8>, Vertex> = HashMap::with_capacity(d.n());
    for v in 0..d.n() {
        let key: Vec<u8> = q.iter().map(|&w| d.get(v, w)).collect();
        if let Some(&u) = seen.get(&key) {
            return Ok(Some(Violation { u, v, lambda: None }));
        }
        seen.insert(key, v);
    }
    Ok(None)
}

pub fn is_resolving(q: &[Vertex], d: &DistanceMatrix) -> Result<bool, KernelError> {
    resolving_violation(q, d).map(|o| o.is_none())
}

/// First pair whose representation difference is a constant vector.
///
/// Keys each vertex by `r(v|Q) - d(v, q_1)·1`; two vertices collide exactly
/// when their difference vector is constant. All pairs of `V(G)` are
/// examined, including pairs that meet `Q`.
pub fn doubly_violation(q: &[Vertex], d: &DistanceMatrix) -> Result<Option<Violation>, KernelError> {
    if q.len() < 2 {
        return Err(KernelError::SetTooSmall(q.len()));
    }
    let mut seen: HashMap<Vec<i16>, Vertex> = HashMap::with_capacity(d.n());
    for v in 0..d.n() {
        let base = d.get(v, q[0]) as i16;
        let key: Vec<i16> = q[1..].iter().map(|&w| d.get(v, w) as i16 - base).collect();
        if let Some(&u) = seen.get(&key) {
            let lambda = d.get(u, q[0]) as i32 - d.get(v, q[0]) as i32;
            return Ok(Some(Violation { u, v, lambda: Some(lambda) }));
        }
        seen.insert(key, v);
    }
    Ok(None)
}

pub fn is_doubly_resolving(q: &[Vertex], d: &DistanceMatrix) -> Result<bool, KernelError> {
    doubly_violation(q, d).map(|o| o.is_none())
}

/// Whether `Q` doubly resolves the specific pair `(u, v)`, i.e. the
/// difference `r(u|Q) - r(v|Q)` is non-constant.
pub fn doubly_resolves_pair(u: Vertex, v: Vertex, q: &[Vertex], d: &DistanceMatrix) -> bool {
    let diff = |w: Vertex| d.get(u, w) as i32 - d.get(v, w) as i32;
    let first = diff(q[0]);
    q[1..].iter().any(|&w| diff(w) != first)
}

/// `w` strongly resolves `u, v` when `u` lies on a shortest `v`-`w` path
/// or `v` lies on a shortest `u`-`w` path.
#[inline]
pub fn strongly_resolves(w: Vertex, u: Vertex, v: Vertex, d: &DistanceMatrix) -> bool {
    let (uw, vw, uv) = (d.get(u, w) as u16, d.get(v, w) as u16, d.get(u, v) as u16);
    uw == uv + vw || vw == uv + uw
}

pub fn strong_violation(q: &[Vertex], d: &DistanceMatrix) -> Result<Option<Violation>, KernelError> {
    if q.is_empty() {
        return Err(KernelError::EmptySet);
    }
    for u in 0..d.n() {
        for v in u + 1..d.n() {
            if !q.iter().any(|&w| strongly_resolves(w, u, v, d)) {
                return Ok(Some(Violation { u, v, lambda: None }));
            }
        }
    }
    Ok(None)
}

pub fn is_strong_resolving(q: &[Vertex], d: &DistanceMatrix) -> Result<bool, KernelError> {
    strong_violation(q, d).map(|o| o.is_none())
}

/// Dispatches to the predicate for `kind`, returning the first failing pair.
pub fn violation(kind: Kind, q: &[Vertex], d: &DistanceMatrix) -> Result<Option<Violation>, KernelError> {
    match kind {
        Kind::Resolving => resolving_violation(q, d),
        Kind::Doubly => doubly_violation(q, d),
        Kind::Strong => strong_violation(q, d),
    }
}

pub fn satisfies(kind: Kind, q: &[Vertex], d: &DistanceMatrix) -> Result<bool, KernelError> {
    violation(kind, q, d).map(|o| o.is_none())
}

/// Whether `kind` separates the specific pair `(u, v)` with the set `q`.
pub fn separates_pair(kind: Kind, u: Vertex, v: Vertex, q: &[Vertex], d: &DistanceMatrix) -> bool {
    match kind {
        Kind::Resolving => q.iter().any(|&w| d.get(u, w) != d.get(v, w)),
        Kind::Doubly => q.len() >= 2 && doubly_resolves_pair(u, v, q, d),
        Kind::Strong => q.iter().any(|&w| strongly_resolves(w, u, v, d)),
    }
}

/// No neighbour of `u` is farther from `v` than `u` itself.
pub fn maximally_distant_from(u: Vertex, v: Vertex, g: &Graph, d: &DistanceMatrix) -> bool {
    let duv = d.get(v, u);
    g.neighbors(u).iter().all(|&w| d.get(v, w) <= duv)
}

/// Sorted unordered pairs `(u, v)`, `u < v`, that are mutually maximally
/// distant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmdPairs(pub Vec<(Vertex, Vertex)>);

impl MmdPairs {
    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.0.binary_search(&(u.min(v), u.max(v))).is_ok()
    }
}

pub fn mmd_pairs(g: &Graph, d: &DistanceMatrix) -> MmdPairs {
    let n = g.n_vertices();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if maximally_distant_from(u, v, g, d) && maximally_distant_from(v, u, g, d) {
                pairs.push((u, v));
            }
        }
    }
    MmdPairs(pairs)
}
