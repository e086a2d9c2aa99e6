//! Fixed-size subset search: find the lexicographically smallest `s`-subset
//! of vertices satisfying a predicate, or prove none exists.
//!
//! The combination space is split by first element. Each partition is
//! searched independently; the merge walks partitions in order, so the
//! winner, the node count and the budget verdict are the same whether the
//! partitions ran sequentially or on a thread pool.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::graph::{DistanceMatrix, Vertex};
use crate::kernel::Kind;

/// How subsets are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Depth-first over lexicographic prefixes with partition refinement.
    /// A prefix is abandoned only when some still-unseparated class is
    /// larger than the remaining landmarks could possibly split.
    #[default]
    Pruned,
    /// Every combination in lexicographic order, checked from scratch.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum SizeOutcome {
    Found { witness: Vec<Vertex>, nodes: u64 },
    Exhausted { nodes: u64 },
    OverBudget,
}

enum PartOutcome {
    Found(Vec<Vertex>, u64),
    Exhausted(u64),
    OverBudget,
    Cancelled,
}

/// Pairs each vertex strongly resolves, as bitsets over pair indices.
struct StrongTable {
    words: usize,
    sets: Vec<Vec<u64>>,
    n_pairs: usize,
}

impl StrongTable {
    fn new(d: &DistanceMatrix) -> Self {
        let n = d.n();
        let n_pairs = n * n.saturating_sub(1) / 2;
        let words = n_pairs.div_ceil(64).max(1);
        let mut sets = vec![vec![0u64; words]; n];
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                for (w, set) in sets.iter_mut().enumerate() {
                    if crate::kernel::strongly_resolves(w, u, v, d) {
                        set[idx / 64] |= 1 << (idx % 64);
                    }
                }
                idx += 1;
            }
        }
        StrongTable { words, sets, n_pairs }
    }

    fn full(&self, acc: &[u64]) -> bool {
        let full_words = self.n_pairs / 64;
        if acc[..full_words].iter().any(|&w| w != u64::MAX) {
            return false;
        }
        let rem = self.n_pairs % 64;
        rem == 0 || acc[full_words] == (1u64 << rem) - 1
    }

    fn covered(&self, acc: &[u64]) -> usize {
        acc.iter().map(|w| w.count_ones() as usize).sum()
    }
}

pub(crate) struct Engine<'a> {
    d: &'a DistanceMatrix,
    kind: Kind,
    mode: SearchMode,
    diam: u8,
    /// Distinct values one landmark can produce inside a class.
    width: usize,
    strong: Option<StrongTable>,
    max_strong_cover: usize,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(d: &'a DistanceMatrix, kind: Kind, mode: SearchMode) -> Self {
        let diam = d.diameter();
        let width = match kind {
            Kind::Resolving => diam as usize + 1,
            Kind::Doubly => 2 * diam as usize + 1,
            Kind::Strong => 0,
        };
        let strong = (kind == Kind::Strong).then(|| StrongTable::new(d));
        let max_strong_cover =
            strong.as_ref().map(|t| t.sets.iter().map(|s| t.covered(s)).max().unwrap_or(0)).unwrap_or(0);
        Engine { d, kind, mode, diam, width, strong, max_strong_cover }
    }

    /// Searches size `s` with at most `budget` candidate evaluations,
    /// using `jobs` worker threads (1 = sequential).
    pub(crate) fn search_size(&self, s: usize, budget: u64, jobs: usize) -> SizeOutcome {
        let n = self.d.n();
        if s == 0 || s > n {
            return SizeOutcome::Exhausted { nodes: 0 };
        }
        let firsts = n - s + 1;
        let outcomes = self.run_partitions(s, firsts, budget, jobs);
        let mut nodes = 0u64;
        for o in outcomes {
            match o {
                PartOutcome::Found(w, c) => {
                    nodes += c;
                    return if nodes > budget {
                        SizeOutcome::OverBudget
                    } else {
                        SizeOutcome::Found { witness: w, nodes }
                    };
                }
                PartOutcome::Exhausted(c) => {
                    nodes += c;
                    if nodes > budget {
                        return SizeOutcome::OverBudget;
                    }
                }
                PartOutcome::OverBudget => return SizeOutcome::OverBudget,
                PartOutcome::Cancelled => unreachable!("cancelled partitions follow a winner"),
            }
        }
        SizeOutcome::Exhausted { nodes }
    }

    #[cfg(feature = "parallel")]
    fn run_partitions(&self, s: usize, firsts: usize, budget: u64, jobs: usize) -> Vec<PartOutcome> {
        use rayon::prelude::*;

        if jobs == 1 {
            return self.run_sequential(s, firsts, budget);
        }
        let best = AtomicUsize::new(usize::MAX);
        let work = || {
            (0..firsts)
                .into_par_iter()
                .map(|f| {
                    let out = self.search_partition(s, f, budget, &best);
                    if matches!(out, PartOutcome::Found(..)) {
                        best.fetch_min(f, Ordering::Relaxed);
                    }
                    out
                })
                .collect()
        };
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn run_partitions(&self, s: usize, firsts: usize, budget: u64, _jobs: usize) -> Vec<PartOutcome> {
        self.run_sequential(s, firsts, budget)
    }

    fn run_sequential(&self, s: usize, firsts: usize, budget: u64) -> Vec<PartOutcome> {
        let never = AtomicUsize::new(usize::MAX);
        let mut out = Vec::new();
        let mut used = 0u64;
        for f in 0..firsts {
            let o = self.search_partition(s, f, budget - used, &never);
            let stop = match &o {
                PartOutcome::Exhausted(c) => {
                    used += c;
                    false
                }
                _ => true,
            };
            out.push(o);
            if stop {
                break;
            }
        }
        out
    }

    fn search_partition(&self, s: usize, first: Vertex, budget: u64, best: &AtomicUsize) -> PartOutcome {
        match (self.kind, self.mode) {
            (Kind::Strong, _) => StrongDfs::new(self, s, budget, best).run(first),
            (_, SearchMode::Pruned) => RefineDfs::new(self, s, budget, best).run(first),
            (_, SearchMode::Exhaustive) => self.exhaustive_partition(s, first, budget, best),
        }
    }

    fn exhaustive_partition(&self, s: usize, first: Vertex, budget: u64, best: &AtomicUsize) -> PartOutcome {
        let n = self.d.n();
        let mut checker = HashChecker::new(n);
        let mut combo: Vec<Vertex> = (first..first + s).collect();
        let mut nodes = 0u64;
        loop {
            nodes += 1;
            if nodes > budget {
                return PartOutcome::OverBudget;
            }
            if best.load(Ordering::Relaxed) < first {
                return PartOutcome::Cancelled;
            }
            // The resolving test is cheaper and necessary for doubly.
            let ok =
                checker.resolving(self.d, &combo) && (self.kind == Kind::Resolving || checker.doubly(self.d, &combo));
            if ok {
                return PartOutcome::Found(combo, nodes);
            }
            // advance positions 1..s, keeping combo[0] = first
            let mut i = s;
            loop {
                if i <= 1 {
                    return PartOutcome::Exhausted(nodes);
                }
                i -= 1;
                if combo[i] < n - s + i {
                    combo[i] += 1;
                    for j in i + 1..s {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

/// Hash-table membership test over representation tuples, stopping at the
/// first coinciding pair.
pub(crate) struct HashChecker {
    slots: Vec<u32>,
    hashes: Vec<u64>,
    stamp: Vec<u32>,
    gen: u32,
    mask: usize,
}

impl HashChecker {
    pub(crate) fn new(n: usize) -> Self {
        let cap = (2 * n).next_power_of_two().max(4);
        HashChecker { slots: vec![0; cap], hashes: vec![0; n], stamp: vec![0; cap], gen: 0, mask: cap - 1 }
    }

    fn next_gen(&mut self) {
        self.gen = self.gen.wrapping_add(1);
        if self.gen == 0 {
            self.stamp.fill(0);
            self.gen = 1;
        }
    }

    fn distinct_by<K: Fn(Vertex) -> u64, E: Fn(Vertex, Vertex) -> bool>(&mut self, n: usize, key: K, eq: E) -> bool {
        self.next_gen();
        for v in 0..n {
            let h = key(v);
            self.hashes[v] = h;
            let mut slot = (h as usize) & self.mask;
            loop {
                if self.stamp[slot] != self.gen {
                    self.stamp[slot] = self.gen;
                    self.slots[slot] = v as u32;
                    break;
                }
                let u = self.slots[slot] as usize;
                if self.hashes[u] == h && eq(u, v) {
                    return false;
                }
                slot = (slot + 1) & self.mask;
            }
        }
        true
    }

    pub(crate) fn resolving(&mut self, d: &DistanceMatrix, q: &[Vertex]) -> bool {
        self.distinct_by(
            d.n(),
            |v| mix(q.iter().map(|&w| d.get(v, w) as u64)),
            |u, v| q.iter().all(|&w| d.get(u, w) == d.get(v, w)),
        )
    }

    pub(crate) fn doubly(&mut self, d: &DistanceMatrix, q: &[Vertex]) -> bool {
        let diff = |v: Vertex, w: Vertex| d.get(v, w) as i64 - d.get(v, q[0]) as i64;
        self.distinct_by(
            d.n(),
            |v| mix(q[1..].iter().map(|&w| diff(v, w) as u64)),
            |u, v| q[1..].iter().all(|&w| diff(u, w) == diff(v, w)),
        )
    }
}

fn mix(values: impl Iterator<Item = u64>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for x in values {
        h ^= x.wrapping_add(0x9e37_79b9_7f4a_7c15);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
        h ^= h >> 29;
    }
    h
}

/// Partition-refinement DFS for resolving and doubly resolving sets.
struct RefineDfs<'e, 'a> {
    eng: &'e Engine<'a>,
    s: usize,
    budget: u64,
    best: &'e AtomicUsize,
    nodes: u64,
    chosen: Vec<Vertex>,
    /// `levels[t]` is the class of every vertex after `t` landmarks.
    levels: Vec<Vec<u32>>,
    slot: Vec<u32>,
    touched: Vec<usize>,
    counts: Vec<u32>,
    stamp: Vec<u32>,
    gen: u32,
    /// `capacity[r]` = largest class `r` more landmarks could still split.
    capacity: Vec<u64>,
}

enum Step {
    Found,
    Continue,
    Abort(PartOutcome),
}

impl<'e, 'a> RefineDfs<'e, 'a> {
    fn new(eng: &'e Engine<'a>, s: usize, budget: u64, best: &'e AtomicUsize) -> Self {
        let n = eng.d.n();
        let capacity = (0..=s as u32).map(|r| (eng.width as u64).saturating_pow(r)).collect();
        RefineDfs {
            eng,
            s,
            budget,
            best,
            nodes: 0,
            chosen: Vec::with_capacity(s),
            levels: vec![vec![0; n]; s + 1],
            slot: vec![u32::MAX; n * eng.width],
            touched: Vec::new(),
            counts: vec![0; n],
            stamp: vec![0; n * eng.width],
            gen: 0,
            capacity,
        }
    }

    #[inline]
    fn value(&self, v: Vertex, w: Vertex) -> usize {
        let d = self.eng.d;
        match self.eng.kind {
            Kind::Resolving => d.get(v, w) as usize,
            _ => {
                let base = d.get(v, self.chosen[0]) as isize;
                (d.get(v, w) as isize - base + self.eng.diam as isize) as usize
            }
        }
    }

    /// Refines level `t` by landmark `w` into level `t + 1`; returns the
    /// largest resulting class.
    fn refine(&mut self, t: usize, w: Vertex) -> u32 {
        let n = self.eng.d.n();
        let width = self.eng.width;
        let mut next = 0u32;
        let mut max = 0u32;
        for v in 0..n {
            let key = self.levels[t][v] as usize * width + self.value(v, w);
            let mut id = self.slot[key];
            if id == u32::MAX {
                id = next;
                next += 1;
                self.slot[key] = id;
                self.touched.push(key);
                self.counts[id as usize] = 0;
            }
            self.levels[t + 1][v] = id;
            self.counts[id as usize] += 1;
            max = max.max(self.counts[id as usize]);
        }
        for key in self.touched.drain(..) {
            self.slot[key] = u32::MAX;
        }
        max
    }

    /// Whether landmark `w` splits every class of level `t` into singletons.
    fn separates_all(&mut self, t: usize, w: Vertex) -> bool {
        let n = self.eng.d.n();
        let width = self.eng.width;
        self.gen = self.gen.wrapping_add(1);
        if self.gen == 0 {
            self.stamp.fill(0);
            self.gen = 1;
        }
        for v in 0..n {
            let key = self.levels[t][v] as usize * width + self.value(v, w);
            if self.stamp[key] == self.gen {
                return false;
            }
            self.stamp[key] = self.gen;
        }
        true
    }

    fn tick(&mut self, first: Vertex) -> Option<PartOutcome> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Some(PartOutcome::OverBudget);
        }
        if self.best.load(Ordering::Relaxed) < first {
            return Some(PartOutcome::Cancelled);
        }
        None
    }

    fn run(mut self, first: Vertex) -> PartOutcome {
        if let Some(o) = self.tick(first) {
            return o;
        }
        self.chosen.push(first);
        if self.s == 1 {
            return if self.separates_all(0, first) {
                PartOutcome::Found(self.chosen, self.nodes)
            } else {
                PartOutcome::Exhausted(self.nodes)
            };
        }
        let max = self.refine(0, first) as u64;
        if max > self.capacity[self.s - 1] {
            return PartOutcome::Exhausted(self.nodes);
        }
        match self.dfs(1, first + 1, first) {
            Step::Found => PartOutcome::Found(self.chosen, self.nodes),
            Step::Continue => PartOutcome::Exhausted(self.nodes),
            Step::Abort(o) => o,
        }
    }

    fn dfs(&mut self, t: usize, start: Vertex, first: Vertex) -> Step {
        let n = self.eng.d.n();
        let remaining_after = self.s - t - 1;
        for w in start..=n - (self.s - t) {
            if let Some(o) = self.tick(first) {
                return Step::Abort(o);
            }
            if remaining_after == 0 {
                if self.separates_all(t, w) {
                    self.chosen.push(w);
                    return Step::Found;
                }
                continue;
            }
            let max = self.refine(t, w) as u64;
            if max > self.capacity[remaining_after] {
                continue;
            }
            self.chosen.push(w);
            match self.dfs(t + 1, w + 1, first) {
                Step::Continue => {
                    self.chosen.pop();
                }
                other => return other,
            }
        }
        Step::Continue
    }
}

/// DFS over strong-resolution bitsets, pruning when the uncovered pairs
/// outnumber what the remaining picks could cover.
struct StrongDfs<'e, 'a> {
    eng: &'e Engine<'a>,
    table: &'e StrongTable,
    s: usize,
    budget: u64,
    best: &'e AtomicUsize,
    nodes: u64,
    chosen: Vec<Vertex>,
    acc: Vec<Vec<u64>>,
}

impl<'e, 'a> StrongDfs<'e, 'a> {
    fn new(eng: &'e Engine<'a>, s: usize, budget: u64, best: &'e AtomicUsize) -> Self {
        let table = eng.strong.as_ref().expect("strong table");
        StrongDfs {
            eng,
            table,
            s,
            budget,
            best,
            nodes: 0,
            chosen: Vec::with_capacity(s),
            acc: vec![vec![0; table.words]; s + 1],
        }
    }

    fn run(mut self, first: Vertex) -> PartOutcome {
        match self.dfs(0, first, first + 1, first) {
            Step::Found => PartOutcome::Found(self.chosen, self.nodes),
            Step::Continue => PartOutcome::Exhausted(self.nodes),
            Step::Abort(o) => o,
        }
    }

    fn dfs(&mut self, t: usize, lo: Vertex, hi: Vertex, first: Vertex) -> Step {
        let n = self.eng.d.n();
        let hi = hi.min(n - (self.s - t) + 1);
        for w in lo..hi {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::Abort(PartOutcome::OverBudget);
            }
            if self.best.load(Ordering::Relaxed) < first {
                return Step::Abort(PartOutcome::Cancelled);
            }
            let (prev, rest) = self.acc.split_at_mut(t + 1);
            for ((dst, a), b) in rest[0].iter_mut().zip(&prev[t]).zip(&self.table.sets[w]) {
                *dst = a | b;
            }
            let remaining = self.s - t - 1;
            if remaining == 0 {
                if self.table.full(&self.acc[t + 1]) {
                    self.chosen.push(w);
                    return Step::Found;
                }
                continue;
            }
            let uncovered = self.table.n_pairs - self.table.covered(&self.acc[t + 1]);
            if self.eng.mode == SearchMode::Pruned && uncovered > remaining * self.eng.max_strong_cover {
                continue;
            }
            self.chosen.push(w);
            match self.dfs(t + 1, w + 1, n, first) {
                Step::Continue => {
                    self.chosen.pop();
                }
                other => return other,
            }
        }
        Step::Continue
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_cycle, build_layered};
    use crate::graph::all_pairs_distances;

    fn found(o: SizeOutcome) -> Vec<Vertex> {
        match o {
            SizeOutcome::Found { witness, .. } => witness,
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn c4_sizes() {
        let d = all_pairs_distances(&build_cycle(4).unwrap()).unwrap();
        for mode in [SearchMode::Pruned, SearchMode::Exhaustive] {
            let e = Engine::new(&d, Kind::Resolving, mode);
            assert!(matches!(e.search_size(1, u64::MAX, 1), SizeOutcome::Exhausted { .. }));
            assert_eq!(found(e.search_size(2, u64::MAX, 1)), vec![0, 1]);
            let e = Engine::new(&d, Kind::Doubly, mode);
            assert!(matches!(e.search_size(2, u64::MAX, 1), SizeOutcome::Exhausted { .. }));
            assert_eq!(found(e.search_size(3, u64::MAX, 1)), vec![0, 1, 2]);
        }
        let e = Engine::new(&d, Kind::Strong, SearchMode::Pruned);
        assert_eq!(found(e.search_size(2, u64::MAX, 1)), vec![0, 1]);
    }

    #[test]
    fn budget_is_enforced() {
        let d = all_pairs_distances(&build_layered(4, 3, 1).unwrap().graph).unwrap();
        // psi of C4 x P3 is 4, so size 3 must be exhausted
        let e = Engine::new(&d, Kind::Doubly, SearchMode::Exhaustive);
        assert_eq!(e.search_size(3, 5, 1), SizeOutcome::OverBudget);
        assert!(matches!(e.search_size(3, u64::MAX, 1), SizeOutcome::Exhausted { nodes } if nodes > 5));
    }

    #[test]
    fn modes_agree_with_node_counts_stable() {
        let d = all_pairs_distances(&build_layered(5, 3, 2).unwrap().graph).unwrap();
        for kind in [Kind::Resolving, Kind::Doubly] {
            let p = Engine::new(&d, kind, SearchMode::Pruned);
            let x = Engine::new(&d, kind, SearchMode::Exhaustive);
            for s in 1..=4 {
                let a = p.search_size(s, u64::MAX, 1);
                let b = x.search_size(s, u64::MAX, 1);
                match (&a, &b) {
                    (SizeOutcome::Found { witness: wa, .. }, SizeOutcome::Found { witness: wb, .. }) => {
                        assert_eq!(wa, wb)
                    }
                    (SizeOutcome::Exhausted { .. }, SizeOutcome::Exhausted { .. }) => {}
                    _ => panic!("{kind:?} size {s}: {a:?} vs {b:?}"),
                }
                #[cfg(feature = "parallel")]
                assert_eq!(p.search_size(s, u64::MAX, 4), a);
            }
        }
    }
}
