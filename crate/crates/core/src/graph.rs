//! Simple undirected labelled graphs, BFS distance matrices and the
//! plain-text edge-list format.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

/// Index of a vertex inside a [`Graph`] (0-based).
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex index {index} out of range for {n} vertices")]
    Index { index: usize, n: usize },
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(Vertex, Vertex),
    #[error("graph has {0} vertices; at most 255 hops are representable")]
    TooLarge(usize),
}

/// Immutable simple undirected graph with unique display labels.
///
/// Edges are stored canonically as `(min, max)` pairs sorted
/// lexicographically, so two graphs with the same edge set compare equal
/// regardless of the order the edges were supplied in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph, validating indices, self-loops and duplicate edges.
    /// Missing labels default to `x1..xn`.
    pub fn new<I>(n: usize, edges: I, labels: Option<Vec<String>>) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut canon = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::Index { index: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }

        let labels = match labels {
            Some(l) => {
                assert_eq!(l.len(), n, "label count must match vertex count");
                l
            }
            None => default_labels(n),
        };
        let mut seen = HashMap::with_capacity(n);
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { edges: canon, adj, labels })
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, lexicographic on `(min, max)`.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks a vertex up by its display label.
    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label)
    }

    /// Returns a copy of the graph with new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self, GraphError> {
        Graph::new(self.n_vertices(), self.edges.iter().copied(), Some(labels))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices();
        if n == 0 {
            return true;
        }
        bfs(self, 0).iter().all(|d| d.is_some())
    }

    /// Two-colours the graph by BFS; `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.n_vertices();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &w in &self.adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    /// Sorted degree sequence (ascending).
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn bfs(g: &Graph, s: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n_vertices()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs hop distances, stored row-major as `u8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u8>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u8 {
        self.d[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: Vertex) -> &[u8] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u8 {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// Runs one BFS per source. Fails on disconnected input.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix, GraphError> {
    let n = g.n_vertices();
    if n > 256 {
        return Err(GraphError::TooLarge(n));
    }
    let mut d = vec![0u8; n * n];
    for s in 0..n {
        for (v, dv) in bfs(g, s).into_iter().enumerate() {
            match dv {
                Some(x) => d[s * n + v] = x as u8,
                None => return Err(GraphError::Disconnected(s, v)),
            }
        }
    }
    Ok(DistanceMatrix { n, d })
}

/// Serialises as `n m`, one `u v` line per canonical edge, then one
/// `u label` line per vertex whose label differs from the default `x{u+1}`.
/// Lines are joined by `\n` without a trailing newline.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}", g.n_vertices(), g.n_edges());
    for &(u, v) in g.edges() {
        let _ = write!(out, "\n{u} {v}");
    }
    for (u, l) in g.labels().iter().enumerate() {
        if *l != format!("x{}", u + 1) {
            let _ = write!(out, "\n{u} {l}");
        }
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(GraphError::Parse { line: 1, msg: "missing header".into() })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, l) =
            lines.next().ok_or(GraphError::Parse { line: hline, msg: format!("expected {m} edge lines") })?;
        edges.push(parse_pair(line, l)?);
    }

    let mut labels = default_labels(n);
    for (line, l) in lines {
        let (idx, label) =
            l.split_once(char::is_whitespace).ok_or(GraphError::Parse { line, msg: "expected `u <label>`".into() })?;
        let u: usize = idx.parse().map_err(|_| GraphError::Parse { line, msg: format!("bad vertex index {idx:?}") })?;
        if u >= n {
            return Err(GraphError::Index { index: u, n });
        }
        labels[u] = label.trim().to_string();
    }
    Graph::new(n, edges, Some(labels))
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), GraphError> {
    let bad = || GraphError::Parse { line, msg: format!("expected two non-negative integers, got {l:?}") };
    let mut it = l.split_whitespace();
    let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)], None).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)], None).unwrap()
    }

    #[test]
    fn path_endpoints() {
        let d = all_pairs_distances(&path3()).unwrap();
        assert_eq!(d.get(0, 2), 2);
    }

    #[test]
    fn c4_antipodal() {
        let d = all_pairs_distances(&c4()).unwrap();
        assert_eq!(d.get(0, 2), 2);
        assert_eq!(d.diameter(), 2);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(4, [(0, 1), (2, 3)], None).unwrap();
        assert!(!g.is_connected());
        assert_eq!(all_pairs_distances(&g), Err(GraphError::Disconnected(0, 2)));
    }

    #[test]
    fn read_path() {
        assert_eq!(read_edge_list("3 2\n0 1\n1 2").unwrap(), path3());
    }

    #[test]
    fn write_c4_sorted() {
        assert_eq!(write_edge_list(&c4()), "4 4\n0 1\n0 3\n1 2\n2 3");
    }

    #[test]
    fn labels_round_trip() {
        let g = Graph::new(2, [(0, 1)], Some(vec!["v1".into(), "v1v2".into()])).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "2 1\n0 1\n0 v1\n1 v1v2");
        assert_eq!(read_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn read_errors() {
        assert_eq!(read_edge_list("2 1\n0 0"), Err(GraphError::SelfLoop(0)));
        assert_eq!(read_edge_list("3 2\n0 1\n1 0"), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(read_edge_list("2 1\n0 5"), Err(GraphError::Index { index: 5, n: 2 }));
        assert!(matches!(read_edge_list("2 1\n0 x"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(read_edge_list("3 2\n0 1"), Err(GraphError::Parse { .. })));
        assert_eq!(read_edge_list("2 1\n0 1\n0 a\n1 a"), Err(GraphError::DuplicateLabel("a".into())));
    }

    #[test]
    fn bipartite_c4_not_c3() {
        assert!(c4().bipartition().is_some());
        let c3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)], None).unwrap();
        assert!(c3.bipartition().is_none());
    }
}
