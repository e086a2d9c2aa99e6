//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's distance or predicate code.

#![allow(dead_code)]

use mdim_core::{Graph, Kind};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX / 4;

/// Floyd-Warshall over the edge list.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n_vertices();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Literal definition: all distance tuples distinct.
pub fn naive_resolving(q: &[usize], d: &[Vec<u32>]) -> bool {
    let n = d.len();
    let tuples: Vec<Vec<u32>> = (0..n).map(|v| q.iter().map(|&w| d[v][w]).collect()).collect();
    (0..n).all(|u| (u + 1..n).all(|v| tuples[u] != tuples[v]))
}

/// Literal definition: for every pair some two landmarks `x, y` disagree on
/// the distance difference.
pub fn naive_doubly(q: &[usize], d: &[Vec<u32>]) -> bool {
    let n = d.len();
    let diff = |u: usize, v: usize, x: usize| d[u][x] as i64 - d[v][x] as i64;
    (0..n).all(|u| (u + 1..n).all(|v| q.iter().any(|&x| q.iter().any(|&y| diff(u, v, x) != diff(u, v, y)))))
}

/// Literal definition: some landmark has `u` on a shortest `v`-`w` path or
/// `v` on a shortest `u`-`w` path.
pub fn naive_strong(q: &[usize], d: &[Vec<u32>]) -> bool {
    let n = d.len();
    (0..n).all(|u| (u + 1..n).all(|v| q.iter().any(|&w| d[u][w] == d[u][v] + d[v][w] || d[v][w] == d[v][u] + d[u][w])))
}

pub fn naive_satisfies(kind: Kind, q: &[usize], d: &[Vec<u32>]) -> bool {
    match kind {
        Kind::Resolving => naive_resolving(q, d),
        Kind::Doubly => naive_doubly(q, d),
        Kind::Strong => naive_strong(q, d),
    }
}

/// Calls `f` on every `s`-subset of `0..n` in lexicographic order until it
/// returns true; returns that subset.
pub fn first_subset(n: usize, s: usize, mut f: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    if s > n {
        return None;
    }
    let mut c: Vec<usize> = (0..s).collect();
    loop {
        if f(&c) {
            return Some(c);
        }
        // advance to the next combination
        let mut i = s;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if c[i] < n - s + i {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        c[i] += 1;
        for j in i + 1..s {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Smallest size and lexicographically first witness, by trying every
/// subset in increasing size.
pub fn naive_minimum(kind: Kind, d: &[Vec<u32>]) -> (usize, Vec<usize>) {
    let n = d.len();
    let start = if kind == Kind::Doubly { 2 } else { 1 };
    for s in start..=n {
        if let Some(w) = first_subset(n, s, |q| naive_satisfies(kind, q, d)) {
            return (s, w);
        }
    }
    unreachable!("the whole vertex set always qualifies on a connected graph with two or more vertices")
}

/// Random spanning tree plus extra edges with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges, None).unwrap()
}

/// The fixed random corpus: 50 connected graphs with 2 to 12 vertices.
pub fn corpus() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    (0..50)
        .map(|i| {
            let n = 2 + i % 11;
            let p = [0.1, 0.25, 0.5][i % 3];
            random_connected(&mut rng, n, p)
        })
        .collect()
}

/// Brute-force minimum vertex cover size.
pub fn naive_cover_size(g: &Graph) -> usize {
    let n = g.n_vertices();
    (0..=n)
        .find(|&s| first_subset(n, s, |c| g.edges().iter().all(|&(u, v)| c.contains(&u) || c.contains(&v))).is_some())
        .unwrap()
}
