//! Graph families: cycles, paths, the layered labelling of `C_n □ P_k`
//! and its stacked copies, the subdivided complete graph `H(n)` and its
//! line graph `L(n)`, plus generic Cartesian product and line-graph
//! operators.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("mapping is not a bijection: {0}")]
    NotABijection(String),
    #[error("vertices {0} and {1} lie in different copies")]
    DifferentCopies(Vertex, Vertex),
    #[error("clique index {r} out of range 1..={n}")]
    BadCliqueIndex { r: usize, n: usize },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("bad family spec {spec:?}: {msg}")]
    BadSpec { spec: String, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::BadParameter(msg.into())
}

/// `C_n` on `x1..xn`, edges `x_i x_{i+1}` and `x_1 x_n`.
pub fn build_cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(bad(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)), None)?)
}

/// `P_k` on `x1..xk`.
pub fn build_path(k: usize) -> Result<Graph, FamilyError> {
    if k < 2 {
        return Err(bad(format!("path needs k >= 2, got {k}")));
    }
    Ok(Graph::new(k, (1..k).map(|i| (i - 1, i)), None)?)
}

/// `G □ H`. Vertex `(a, b)` gets index `a * |V(H)| + b` and label `(a,b)`
/// built from the factor labels.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, FamilyError> {
    let nh = h.n_vertices();
    let idx = |a: Vertex, b: Vertex| a * nh + b;
    let mut edges = Vec::with_capacity(g.n_vertices() * h.n_edges() + nh * g.n_edges());
    for a in 0..g.n_vertices() {
        for &(b1, b2) in h.edges() {
            edges.push((idx(a, b1), idx(a, b2)));
        }
    }
    for b in 0..nh {
        for &(a1, a2) in g.edges() {
            edges.push((idx(a1, b), idx(a2, b)));
        }
    }
    let labels = (0..g.n_vertices())
        .flat_map(|a| (0..nh).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", g.label(a), h.label(b)))
        .collect();
    Ok(Graph::new(g.n_vertices() * nh, edges, Some(labels))?)
}

/// Line graph. Vertex `i` is the `i`-th canonical edge `{a, b}` of `g`,
/// labelled `{la,lb}`.
pub fn line_graph(g: &Graph) -> Result<Graph, FamilyError> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(bad("line graph of an edgeless graph"));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n_vertices()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut out = Vec::new();
    for inc in &incident {
        for (x, &e) in inc.iter().enumerate() {
            for &f in &inc[x + 1..] {
                out.push((e, f));
            }
        }
    }
    let labels = edges.iter().map(|&(a, b)| format!("{{{},{}}}", g.label(a), g.label(b))).collect();
    Ok(Graph::new(edges.len(), out, Some(labels))?)
}

/// Checks that `bijection[v]` (a vertex of `h`) preserves adjacency and
/// non-adjacency in both directions.
pub fn verify_isomorphism(g: &Graph, h: &Graph, bijection: &[Vertex]) -> Result<bool, FamilyError> {
    let n = g.n_vertices();
    if h.n_vertices() != n || bijection.len() != n {
        return Err(FamilyError::NotABijection(format!(
            "sizes differ: |V(g)| = {n}, |V(h)| = {}, map has {} entries",
            h.n_vertices(),
            bijection.len()
        )));
    }
    let mut hit = vec![false; n];
    for &t in bijection {
        if t >= n || std::mem::replace(&mut hit[t], true) {
            return Err(FamilyError::NotABijection(format!("image {t} repeated or out of range")));
        }
    }
    if g.n_edges() != h.n_edges() {
        return Ok(false);
    }
    // Equal edge counts plus an injective edge map means non-edges map to
    // non-edges as well.
    Ok(g.edges().iter().all(|&(u, v)| h.has_edge(bijection[u], bijection[v])))
}

/// `(C_n □ P_k) □ P_m` with the explicit layered labelling; `m = 1` is plain
/// `C_n □ P_k`.
///
/// Copy `r`, in-copy index `t = (p-1)n + q` sits at vertex `(r-1)nk + t - 1`.
#[derive(Debug, Clone)]
pub struct LayeredProduct {
    pub graph: Graph,
    pub n: usize,
    pub k: usize,
    pub m: usize,
}

/// Position of a vertex inside a [`LayeredProduct`], all 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerCoord {
    pub copy: usize,
    pub layer: usize,
    pub position: usize,
}

impl LayerCoord {
    /// Index `t` of `x_t` inside its copy.
    pub fn index_in_copy(&self, n: usize) -> usize {
        (self.layer - 1) * n + self.position
    }
}

pub fn build_layered(n: usize, k: usize, m: usize) -> Result<LayeredProduct, FamilyError> {
    if n < 3 || k < 3 || m < 1 {
        return Err(bad(format!("layered product needs n >= 3, k >= 3, m >= 1; got n={n} k={k} m={m}")));
    }
    let nk = n * k;
    let at = |r: usize, t: usize| (r - 1) * nk + t - 1;
    let mut edges = Vec::new();
    for r in 1..=m {
        for i in 1..=nk {
            for j in i + 1..=nk {
                let (li, lj) = ((i - 1) / n, (j - 1) / n);
                let same_layer = li == lj && (j - i == 1 || j - i == n - 1);
                let next_layer = lj == li + 1 && j - i == n;
                if same_layer || next_layer {
                    edges.push((at(r, i), at(r, j)));
                }
            }
        }
        if r < m {
            for t in 1..=nk {
                edges.push((at(r, t), at(r + 1, t)));
            }
        }
    }
    let labels = (1..=m)
        .flat_map(|r| (1..=nk).map(move |t| (r, t)))
        .map(|(r, t)| if m == 1 { format!("x{t}") } else { format!("x{t}^{r}") })
        .collect();
    let graph = Graph::new(nk * m, edges, Some(labels))?;
    Ok(LayeredProduct { graph, n, k, m })
}

impl LayeredProduct {
    /// Vertex `x_t^{(copy)}`.
    pub fn vertex(&self, copy: usize, t: usize) -> Vertex {
        assert!((1..=self.m).contains(&copy) && (1..=self.n * self.k).contains(&t));
        (copy - 1) * self.n * self.k + t - 1
    }

    pub fn coord(&self, v: Vertex) -> LayerCoord {
        let nk = self.n * self.k;
        let t0 = v % nk;
        LayerCoord { copy: v / nk + 1, layer: t0 / self.n + 1, position: t0 % self.n + 1 }
    }

    /// Layer `V_p` of the given copy, in index order.
    pub fn layer(&self, copy: usize, p: usize) -> Vec<Vertex> {
        (1..=self.n).map(|q| self.vertex(copy, (p - 1) * self.n + q)).collect()
    }

    /// Same copy and `n` divides the difference of the in-copy indices.
    pub fn compatible(&self, e: Vertex, d: Vertex) -> Result<bool, FamilyError> {
        let (ce, cd) = (self.coord(e), self.coord(d));
        if ce.copy != cd.copy {
            return Err(FamilyError::DifferentCopies(e, d));
        }
        Ok(ce.index_in_copy(self.n).abs_diff(cd.index_in_copy(self.n)) % self.n == 0)
    }

    /// The vertex `x_c` in layer `V_k` compatible with `x_t`, within `copy`.
    pub fn compatible_in_last_layer(&self, copy: usize, t: usize) -> Vertex {
        let q = (t - 1) % self.n + 1;
        self.vertex(copy, (self.k - 1) * self.n + q)
    }
}

/// `H(n)`: points `v_1..v_n` then pairs `v_i v_j` (`i < j`) in
/// lexicographic order; `v_r ~ v_i v_j` iff `r ∈ {i, j}`.
#[derive(Debug, Clone)]
pub struct HGraph {
    pub graph: Graph,
    pub n: usize,
    pair_index: HashMap<(usize, usize), Vertex>,
}

pub fn build_h(n: usize) -> Result<HGraph, FamilyError> {
    if n < 5 {
        return Err(bad(format!("H(n) is defined here for n >= 5, got {n}")));
    }
    let mut labels: Vec<String> = (1..=n).map(|r| format!("v{r}")).collect();
    let mut pair_index = HashMap::new();
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let v = labels.len();
            labels.push(format!("v{i}v{j}"));
            pair_index.insert((i, j), v);
            edges.push((i - 1, v));
            edges.push((j - 1, v));
        }
    }
    let graph = Graph::new(labels.len(), edges, Some(labels))?;
    Ok(HGraph { graph, n, pair_index })
}

impl HGraph {
    /// Point vertex `v_r`.
    pub fn point(&self, r: usize) -> Vertex {
        assert!((1..=self.n).contains(&r));
        r - 1
    }

    /// Pair vertex `v_i v_j`; argument order does not matter.
    pub fn pair(&self, i: usize, j: usize) -> Vertex {
        self.pair_index[&(i.min(j), i.max(j))]
    }

    pub fn points(&self) -> Vec<Vertex> {
        (0..self.n).collect()
    }
}

/// `L(n)`: one vertex `{v_r, v_i v_j}` per edge of `H(n)`, grouped by `r`
/// into the cliques `W_1..W_n`.
#[derive(Debug, Clone)]
pub struct LGraph {
    pub graph: Graph,
    pub n: usize,
    /// `W_r` containing each vertex (1-based `r`).
    pub clique_of: Vec<usize>,
    /// The `H(n)` edge `{v_r, v_i v_j}` behind each vertex, as `(r, (i, j))`.
    pub edge_of: Vec<(usize, (usize, usize))>,
    index: HashMap<(usize, (usize, usize)), Vertex>,
}

pub fn build_l(n: usize) -> Result<LGraph, FamilyError> {
    if n < 5 {
        return Err(bad(format!("L(n) is defined here for n >= 5, got {n}")));
    }
    let mut edge_of = Vec::with_capacity(n * (n - 1));
    for r in 1..=n {
        for other in (1..=n).filter(|&o| o != r) {
            edge_of.push((r, (r.min(other), r.max(other))));
        }
    }
    let index: HashMap<_, _> = edge_of.iter().enumerate().map(|(v, &e)| (e, v)).collect();
    let mut edges = Vec::new();
    for (a, &(ra, pa)) in edge_of.iter().enumerate() {
        for (b, &(rb, pb)) in edge_of.iter().enumerate().skip(a + 1) {
            if ra == rb || pa == pb {
                edges.push((a, b));
            }
        }
    }
    let labels = edge_of.iter().map(|&(r, (i, j))| format!("{{v{r},v{i}v{j}}}")).collect();
    let graph = Graph::new(edge_of.len(), edges, Some(labels))?;
    let clique_of = edge_of.iter().map(|&(r, _)| r).collect();
    Ok(LGraph { graph, n, clique_of, edge_of, index })
}

impl LGraph {
    /// Vertex `{v_r, v_i v_j}`, requiring `r ∈ {i, j}`.
    pub fn vertex(&self, r: usize, i: usize, j: usize) -> Option<Vertex> {
        self.index.get(&(r, (i.min(j), i.max(j)))).copied()
    }

    /// Members of clique `W_r`.
    pub fn clique(&self, r: usize) -> Result<Vec<Vertex>, FamilyError> {
        self.check_clique(r)?;
        Ok((0..self.graph.n_vertices()).filter(|&v| self.clique_of[v] == r).collect())
    }

    /// `N(W_r)`: the vertices `y_k = {v_k, v_r v_k}` for `k ≠ r`, ordered by `k`.
    pub fn neighborhood_of_clique(&self, r: usize) -> Result<Vec<Vertex>, FamilyError> {
        self.check_clique(r)?;
        Ok((1..=self.n).filter(|&k| k != r).map(|k| self.vertex(k, r, k).expect("y_k exists")).collect())
    }

    /// Bijection onto `line_graph(h.graph)`: vertex `{v_r, v_i v_j}` goes to
    /// the index of the `H(n)` edge `(v_r, v_i v_j)`.
    pub fn bijection_to_line_graph(&self, h: &HGraph) -> Vec<Vertex> {
        let edge_pos: HashMap<(Vertex, Vertex), usize> =
            h.graph.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
        self.edge_of
            .iter()
            .map(|&(r, (i, j))| {
                let (a, b) = (h.point(r), h.pair(i, j));
                edge_pos[&(a.min(b), a.max(b))]
            })
            .collect()
    }

    fn check_clique(&self, r: usize) -> Result<(), FamilyError> {
        if (1..=self.n).contains(&r) {
            Ok(())
        } else {
            Err(FamilyError::BadCliqueIndex { r, n: self.n })
        }
    }
}

/// A named family instance, written `cycle:n=5`, `path:k=4`, `cp:n=5,k=3`,
/// `cpm:n=5,k=4,m=4`, `h:n=6`, `l:n=5` or `file:PATH` (edge-list format).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cycle { n: usize },
    Path { k: usize },
    Cp { n: usize, k: usize },
    Cpm { n: usize, k: usize, m: usize },
    H { n: usize },
    L { n: usize },
    File(PathBuf),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cycle { n } => write!(f, "cycle:n={n}"),
            FamilySpec::Path { k } => write!(f, "path:k={k}"),
            FamilySpec::Cp { n, k } => write!(f, "cp:n={n},k={k}"),
            FamilySpec::Cpm { n, k, m } => write!(f, "cpm:n={n},k={k},m={m}"),
            FamilySpec::H { n } => write!(f, "h:n={n}"),
            FamilySpec::L { n } => write!(f, "l:n={n}"),
            FamilySpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| FamilyError::BadSpec { spec: s.to_string(), msg: msg.to_string() };
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        if family == "file" {
            if rest.is_empty() {
                return Err(err("file needs a path"));
            }
            return Ok(FamilySpec::File(PathBuf::from(rest)));
        }
        let mut params: HashMap<&str, usize> = HashMap::new();
        for kv in rest.split(',').filter(|kv| !kv.is_empty()) {
            let (key, value) = kv.split_once('=').ok_or_else(|| err("parameters look like n=5"))?;
            let value = value.trim().parse().map_err(|_| err("parameter values must be non-negative integers"))?;
            if params.insert(key.trim(), value).is_some() {
                return Err(err("parameter given twice"));
            }
        }
        let wanted: &[&str] = match family {
            "cycle" | "h" | "l" => &["n"],
            "path" => &["k"],
            "cp" => &["n", "k"],
            "cpm" => &["n", "k", "m"],
            _ => return Err(err("unknown family (cycle, path, cp, cpm, h, l, file)")),
        };
        if let Some(extra) = params.keys().find(|k| !wanted.contains(k)) {
            return Err(err(&format!("unexpected parameter {extra:?}")));
        }
        let get = |key: &str| params.get(key).copied().ok_or_else(|| err(&format!("missing parameter {key:?}")));
        Ok(match family {
            "cycle" => FamilySpec::Cycle { n: get("n")? },
            "path" => FamilySpec::Path { k: get("k")? },
            "cp" => FamilySpec::Cp { n: get("n")?, k: get("k")? },
            "cpm" => FamilySpec::Cpm { n: get("n")?, k: get("k")?, m: get("m")? },
            "h" => FamilySpec::H { n: get("n")? },
            _ => FamilySpec::L { n: get("n")? },
        })
    }
}

/// A constructed family instance, keeping the structure needed to name
/// vertices and sets.
#[derive(Debug, Clone)]
pub enum Built {
    Plain(Graph),
    Layered(LayeredProduct),
    H(HGraph),
    L(LGraph),
}

impl Built {
    pub fn graph(&self) -> &Graph {
        match self {
            Built::Plain(g) => g,
            Built::Layered(p) => &p.graph,
            Built::H(h) => &h.graph,
            Built::L(l) => &l.graph,
        }
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<Built, FamilyError> {
        Ok(match *self {
            FamilySpec::Cycle { n } => Built::Plain(build_cycle(n)?),
            FamilySpec::Path { k } => Built::Plain(build_path(k)?),
            FamilySpec::Cp { n, k } => Built::Layered(build_layered(n, k, 1)?),
            FamilySpec::Cpm { n, k, m } => {
                if m < 2 {
                    return Err(bad(format!("cpm needs m >= 2, got {m}; use cp for a single copy")));
                }
                Built::Layered(build_layered(n, k, m)?)
            }
            FamilySpec::H { n } => Built::H(build_h(n)?),
            FamilySpec::L { n } => Built::L(build_l(n)?),
            FamilySpec::File(ref path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| FamilyError::Io { path: path.display().to_string(), msg: e.to_string() })?;
                Built::Plain(crate::graph::read_edge_list(&text)?)
            }
        })
    }
}
