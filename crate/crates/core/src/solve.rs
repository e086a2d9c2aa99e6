//! Exact minimum resolving, doubly resolving and strong resolving sets.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cover::CoverSearch;
use crate::graph::{all_pairs_distances, DistanceMatrix, Graph, GraphError, Vertex};
use crate::kernel::{is_strong_resolving, mmd_pairs, satisfies, separates_pair, Kind, VertexSet};
use crate::search::{Engine, SearchMode, SizeOutcome};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(
        "{kind} search exceeded the budget of {budget} nodes; minimum is at least {lower_bound}, \
         best known set has {} vertices",
        upper_bound.len()
    )]
    BudgetExceeded { kind: Kind, budget: u64, lower_bound: usize, upper_bound: VertexSet },
    #[error("a doubly resolving set needs at least two vertices")]
    TooFewVertices,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Candidate evaluations allowed before giving up.
    pub budget: u64,
    /// Worker threads; 1 runs the partitions in order on the calling thread.
    pub jobs: usize,
    pub mode: SearchMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET, jobs: 1, mode: SearchMode::Pruned }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumeration,
    VertexCover,
    EnumerationFallback,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Enumeration => "enumeration",
            Method::VertexCover => "vertex-cover",
            Method::EnumerationFallback => "enumeration-fallback",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub kind: Kind,
    pub size: usize,
    /// Lexicographically smallest minimum set.
    pub witness: VertexSet,
    /// The witness passed its predicate and the lower bound is proven, either
    /// by exhausting every smaller size or, for strong sets, by the
    /// vertex-cover bound. False only when the vertex-cover candidate failed
    /// and enumeration took over.
    pub certificate_checked: bool,
    pub nodes_explored: u64,
    pub method: Method,
}

/// Graph on the same vertices whose edges are the MMD pairs.
#[derive(Debug, Clone)]
pub struct SrGraph {
    pub graph: Graph,
}

pub fn build_sr_graph(g: &Graph) -> Result<SrGraph, SolveError> {
    let d = all_pairs_distances(g)?;
    Ok(sr_graph_from(g, &d))
}

fn sr_graph_from(g: &Graph, d: &DistanceMatrix) -> SrGraph {
    let pairs = mmd_pairs(g, d).0;
    let graph =
        Graph::new(g.n_vertices(), pairs, Some(g.labels().to_vec())).expect("MMD pairs are distinct non-loop pairs");
    SrGraph { graph }
}

/// Exact minimum vertex cover, lexicographically smallest among minimums.
pub fn min_vertex_cover(g: &Graph, budget: u64) -> Result<VertexSet, SolveError> {
    CoverSearch::new(g, budget).solve().map(|(c, _)| VertexSet::from_trusted(c)).map_err(|_| {
        SolveError::BudgetExceeded {
            kind: Kind::Strong,
            budget,
            lower_bound: 0,
            upper_bound: VertexSet::from_trusted((0..g.n_vertices()).collect()),
        }
    })
}

pub fn min_resolving(g: &Graph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    let d = all_pairs_distances(g)?;
    enumerate(g, &d, Kind::Resolving, 1, 0, opts)
}

pub fn min_doubly_resolving(g: &Graph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    if g.n_vertices() < 2 {
        return Err(SolveError::TooFewVertices);
    }
    let d = all_pairs_distances(g)?;
    // every doubly resolving set is resolving, so beta is a lower bound
    let beta = enumerate(g, &d, Kind::Resolving, 1, 0, opts).map_err(|e| match e {
        SolveError::BudgetExceeded { budget, lower_bound, .. } => SolveError::BudgetExceeded {
            kind: Kind::Doubly,
            budget,
            lower_bound: lower_bound.max(2),
            upper_bound: greedy_with(g, &d, Kind::Doubly),
        },
        other => other,
    })?;
    let mut r = enumerate(g, &d, Kind::Doubly, beta.size.max(2), beta.nodes_explored, opts)?;
    r.nodes_explored += beta.nodes_explored;
    Ok(r)
}

pub fn min_strong_resolving(g: &Graph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    let d = all_pairs_distances(g)?;
    if g.n_vertices() == 1 {
        return Ok(trivial(Kind::Strong));
    }
    let sr = sr_graph_from(g, &d);
    let (cover, nodes) = CoverSearch::new(&sr.graph, opts.budget).solve().map_err(|_| SolveError::BudgetExceeded {
        kind: Kind::Strong,
        budget: opts.budget,
        lower_bound: 1,
        upper_bound: greedy_with(g, &d, Kind::Strong),
    })?;
    if !cover.is_empty() && is_strong_resolving(&cover, &d).unwrap_or(false) {
        return Ok(SolveResult {
            kind: Kind::Strong,
            size: cover.len(),
            witness: VertexSet::from_trusted(cover),
            certificate_checked: true,
            nodes_explored: nodes,
            method: Method::VertexCover,
        });
    }
    // each MMD pair needs a member, so the cover size stays a lower bound
    let mut r = enumerate(g, &d, Kind::Strong, cover.len().max(1), nodes, opts)?;
    r.nodes_explored += nodes;
    r.certificate_checked = false;
    r.method = Method::EnumerationFallback;
    Ok(r)
}

pub fn solve(g: &Graph, kind: Kind, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    match kind {
        Kind::Resolving => min_resolving(g, opts),
        Kind::Doubly => min_doubly_resolving(g, opts),
        Kind::Strong => min_strong_resolving(g, opts),
    }
}

fn trivial(kind: Kind) -> SolveResult {
    SolveResult {
        kind,
        size: 0,
        witness: VertexSet::default(),
        certificate_checked: true,
        nodes_explored: 0,
        method: Method::Enumeration,
    }
}

/// Tries sizes `from`, `from + 1`, ... until a set is found. `spent` nodes
/// have already been charged against the budget.
fn enumerate(
    g: &Graph,
    d: &DistanceMatrix,
    kind: Kind,
    from: usize,
    spent: u64,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    let n = g.n_vertices();
    if n == 1 && kind == Kind::Resolving {
        return Ok(trivial(kind));
    }
    let engine = Engine::new(d, kind, opts.mode);
    let mut nodes = 0u64;
    let jobs = opts.jobs.max(1);
    for s in from..=n {
        let left = opts.budget.saturating_sub(spent + nodes);
        match engine.search_size(s, left, jobs) {
            SizeOutcome::Found { witness, nodes: c } => {
                debug_assert!(satisfies(kind, &witness, d).unwrap_or(false));
                return Ok(SolveResult {
                    kind,
                    size: s,
                    witness: VertexSet::from_trusted(witness),
                    certificate_checked: true,
                    nodes_explored: nodes + c,
                    method: Method::Enumeration,
                });
            }
            SizeOutcome::Exhausted { nodes: c } => nodes += c,
            SizeOutcome::OverBudget => {
                return Err(SolveError::BudgetExceeded {
                    kind,
                    budget: opts.budget,
                    lower_bound: s,
                    upper_bound: greedy_with(g, d, kind),
                })
            }
        }
    }
    unreachable!("the whole vertex set satisfies every predicate")
}

/// A valid set of the requested kind built by repeatedly adding the vertex
/// that separates the most still-unseparated pairs.
pub fn greedy_upper_bound(g: &Graph, kind: Kind) -> Result<VertexSet, SolveError> {
    let d = all_pairs_distances(g)?;
    Ok(greedy_with(g, &d, kind))
}

fn greedy_with(g: &Graph, d: &DistanceMatrix, kind: Kind) -> VertexSet {
    let n = g.n_vertices();
    let mut open: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut chosen: Vec<Vertex> = Vec::new();
    if kind == Kind::Doubly && n >= 2 {
        // a single landmark never doubly resolves anything; seed with the
        // first vertex so the pair criterion becomes meaningful
        chosen.push(0);
    }
    let sep = |q: &[Vertex], u: Vertex, v: Vertex| separates_pair(kind, u, v, q, d);
    open.retain(|&(u, v)| !sep(&chosen, u, v));
    while !open.is_empty() {
        let mut best: Option<(usize, Vertex)> = None;
        let mut trial = chosen.clone();
        trial.push(0);
        for w in (0..n).filter(|w| !chosen.contains(w)) {
            *trial.last_mut().unwrap() = w;
            let gain = open.iter().filter(|&&(u, v)| sep(&trial, u, v)).count();
            if best.is_none_or(|(b, _)| gain > b) {
                best = Some((gain, w));
            }
        }
        let Some((gain, mut w)) = best else { break };
        if gain == 0 {
            // no single vertex helps; both ends of an open pair always do
            let (u, v) = open[0];
            w = if chosen.contains(&u) { v } else { u };
        }
        chosen.push(w);
        open.retain(|&(u, v)| !sep(&chosen, u, v));
    }
    chosen.sort_unstable();
    debug_assert!(chosen.is_empty() || satisfies(kind, &chosen, d).unwrap_or(false));
    VertexSet::from_trusted(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_cycle, build_path};

    #[test]
    fn cycles_and_paths() {
        let o = SolveOptions::default();
        let c5 = build_cycle(5).unwrap();
        assert_eq!(min_resolving(&c5, &o).unwrap().witness.members(), &[0, 1]);
        assert_eq!(min_doubly_resolving(&c5, &o).unwrap().size, 2);
        let c6 = build_cycle(6).unwrap();
        let s = min_strong_resolving(&c6, &o).unwrap();
        assert_eq!((s.size, s.method), (3, Method::VertexCover));
        let p4 = build_path(4).unwrap();
        assert_eq!(min_resolving(&p4, &o).unwrap().witness.members(), &[0]);
        assert_eq!(min_strong_resolving(&p4, &o).unwrap().size, 1);
    }

    #[test]
    fn sr_graph_small() {
        let c4 = build_sr_graph(&build_cycle(4).unwrap()).unwrap();
        assert_eq!(c4.graph.edges(), &[(0, 2), (1, 3)]);
        let p3 = build_sr_graph(&build_path(3).unwrap()).unwrap();
        assert_eq!(p3.graph.edges(), &[(0, 2)]);
    }

    #[test]
    fn greedy_is_valid() {
        for g in [build_cycle(5).unwrap(), build_path(4).unwrap(), build_cycle(8).unwrap()] {
            let d = all_pairs_distances(&g).unwrap();
            for kind in [Kind::Resolving, Kind::Doubly, Kind::Strong] {
                let s = greedy_upper_bound(&g, kind).unwrap();
                assert!(satisfies(kind, &s, &d).unwrap(), "{kind} on {} vertices", g.n_vertices());
            }
        }
    }

    #[test]
    fn budget_reports_bounds() {
        let g = build_cycle(9).unwrap();
        let o = SolveOptions { budget: 3, ..SolveOptions::default() };
        match min_doubly_resolving(&g, &o) {
            Err(SolveError::BudgetExceeded { lower_bound, upper_bound, .. }) => {
                assert!(lower_bound >= 2);
                let d = all_pairs_distances(&g).unwrap();
                assert!(satisfies(Kind::Doubly, &upper_bound, &d).unwrap());
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
