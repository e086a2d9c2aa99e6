//! Metric dimension, doubly resolving and strong resolving sets of
//! cycle-path products, the graphs `H(n)` and `L(n)`, and small general
//! graphs.
//!
//! Graphs are built by [`families`], distances come from
//! [`graph::all_pairs_distances`], set predicates live in [`kernel`] and the
//! exact minimum searches in [`solve`]. [`claims`] checks the published
//! values for each family at small parameters.

pub mod claims;
mod cover;
pub mod families;
pub mod graph;
pub mod kernel;
pub mod search;
pub mod solve;

pub use graph::{all_pairs_distances, read_edge_list, write_edge_list, DistanceMatrix, Graph, GraphError, Vertex};
pub use kernel::{Kind, Representation, VertexSet, Violation};
pub use search::SearchMode;
pub use solve::{
    build_sr_graph, greedy_upper_bound, min_doubly_resolving, min_resolving, min_strong_resolving, min_vertex_cover,
    solve, Method, SolveError, SolveOptions, SolveResult, SrGraph,
};
