//! Exact minimum vertex cover by branch and bound.
//!
//! Branches on a maximum-degree vertex `v`: either `v` joins the cover or
//! all of its remaining neighbours do. A greedy maximal matching on the
//! remaining graph is the lower bound. The lexicographically smallest
//! minimum cover is then fixed vertex by vertex with decision queries.

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mark {
    Free,
    In,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CoverBudgetExceeded;

pub(crate) struct CoverSearch<'g> {
    g: &'g Graph,
    mark: Vec<Mark>,
    /// Number of `Free` neighbours, maintained for `Free` vertices.
    free_deg: Vec<usize>,
    trail: Vec<Vertex>,
    in_count: usize,
    pub(crate) nodes: u64,
    budget: u64,
    matched: Vec<bool>,
}

impl<'g> CoverSearch<'g> {
    pub(crate) fn new(g: &'g Graph, budget: u64) -> Self {
        let n = g.n_vertices();
        CoverSearch {
            g,
            mark: vec![Mark::Free; n],
            free_deg: (0..n).map(|v| g.degree(v)).collect(),
            trail: Vec::new(),
            in_count: 0,
            nodes: 0,
            budget,
            matched: vec![false; n],
        }
    }

    fn set(&mut self, v: Vertex, m: Mark) {
        debug_assert_eq!(self.mark[v], Mark::Free);
        self.mark[v] = m;
        if m == Mark::In {
            self.in_count += 1;
        }
        for &w in self.g.neighbors(v) {
            if self.mark[w] == Mark::Free {
                self.free_deg[w] -= 1;
            }
        }
        self.trail.push(v);
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let v = self.trail.pop().unwrap();
            if self.mark[v] == Mark::In {
                self.in_count -= 1;
            }
            self.mark[v] = Mark::Free;
            for &w in self.g.neighbors(v) {
                if self.mark[w] == Mark::Free {
                    self.free_deg[w] += 1;
                }
            }
        }
    }

    /// Excludes `v`, pulling its free neighbours into the cover. Fails if a
    /// neighbour is already excluded.
    fn exclude(&mut self, v: Vertex) -> bool {
        if self.g.neighbors(v).iter().any(|&w| self.mark[w] == Mark::Out) {
            return false;
        }
        self.set(v, Mark::Out);
        for i in 0..self.g.degree(v) {
            let w = self.g.neighbors(v)[i];
            if self.mark[w] == Mark::Free {
                self.set(w, Mark::In);
            }
        }
        true
    }

    fn matching_bound(&mut self) -> usize {
        self.matched.fill(false);
        let mut size = 0;
        for &(u, v) in self.g.edges() {
            if self.mark[u] == Mark::Free && self.mark[v] == Mark::Free && !self.matched[u] && !self.matched[v] {
                self.matched[u] = true;
                self.matched[v] = true;
                size += 1;
            }
        }
        size
    }

    /// Can the free edges be covered with at most `k` more vertices?
    fn feasible(&mut self, k: usize) -> Result<bool, CoverBudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CoverBudgetExceeded);
        }
        let pick = (0..self.mark.len())
            .filter(|&v| self.mark[v] == Mark::Free && self.free_deg[v] > 0)
            .max_by_key(|&v| (self.free_deg[v], std::cmp::Reverse(v)));
        let Some(v) = pick else {
            return Ok(true);
        };
        if k == 0 || self.matching_bound() > k {
            return Ok(false);
        }
        // every free vertex has degree at most one: the free edges form a
        // matching and the bound above is exact
        if self.free_deg[v] == 1 {
            return Ok(true);
        }

        let save = self.trail.len();
        self.set(v, Mark::In);
        let r = self.feasible(k - 1)?;
        self.undo_to(save);
        if r {
            return Ok(true);
        }

        let need = self.free_deg[v];
        if need <= k {
            let before = self.in_count;
            let ok = self.exclude(v);
            let r = if ok { self.feasible(k - (self.in_count - before))? } else { false };
            self.undo_to(save);
            return Ok(r);
        }
        Ok(false)
    }

    /// Minimum cover size given the current marks (counting vertices
    /// already marked `In`).
    fn optimum(&mut self) -> Result<usize, CoverBudgetExceeded> {
        let mut k = self.matching_bound();
        while !self.feasible(k)? {
            k += 1;
        }
        Ok(self.in_count + k)
    }

    /// Lexicographically smallest minimum vertex cover, sorted.
    pub(crate) fn solve(mut self) -> Result<(Vec<Vertex>, u64), CoverBudgetExceeded> {
        let opt = self.optimum()?;
        for v in 0..self.mark.len() {
            if self.mark[v] != Mark::Free {
                continue;
            }
            let save = self.trail.len();
            self.set(v, Mark::In);
            if self.in_count <= opt && self.feasible(opt - self.in_count)? {
                continue;
            }
            self.undo_to(save);
            let ok = self.exclude(v);
            debug_assert!(ok, "excluding {v} must stay feasible");
        }
        let cover = (0..self.mark.len()).filter(|&v| self.mark[v] == Mark::In).collect::<Vec<_>>();
        debug_assert_eq!(cover.len(), opt);
        Ok((cover, self.nodes))
    }
}
