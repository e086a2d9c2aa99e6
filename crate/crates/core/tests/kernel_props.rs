mod common;

use common::{floyd_warshall, naive_satisfies, random_connected};
use mdim_core::families::FamilySpec;
use mdim_core::kernel::{doubly_violation, mmd_pairs, satisfies, violation};
use mdim_core::{all_pairs_distances, Graph, Kind};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KINDS: [Kind; 3] = [Kind::Resolving, Kind::Doubly, Kind::Strong];

/// Every family instance the acceptance suite touches.
const INSTANCES: &[&str] = &[
    "cp:n=3,k=3",
    "cp:n=3,k=4",
    "cp:n=4,k=3",
    "cp:n=5,k=3",
    "cp:n=5,k=4",
    "cp:n=6,k=3",
    "cp:n=7,k=3",
    "cp:n=7,k=4",
    "cpm:n=3,k=3,m=2",
    "cpm:n=3,k=3,m=3",
    "cpm:n=4,k=3,m=2",
    "cpm:n=5,k=3,m=2",
    "cpm:n=4,k=3,m=4",
    "cpm:n=5,k=4,m=4",
    "h:n=5",
    "h:n=6",
    "h:n=7",
    "h:n=8",
    "l:n=5",
];

fn instance(i: usize) -> Graph {
    INSTANCES[i].parse::<FamilySpec>().unwrap().build().unwrap().graph().clone()
}

/// A family instance or a random connected graph, with a random subset.
fn graph_and_set() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let family = (0..INSTANCES.len()).prop_map(instance);
    let random = (any::<u64>(), 2usize..=12, 0.0f64..0.6)
        .prop_map(|(seed, n, p)| random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, p));
    prop_oneof![family, random].prop_flat_map(|g| {
        let n = g.n_vertices();
        // small sets are where the predicates disagree most often
        let size = 1..=n.min(8);
        (Just(g), proptest::sample::subsequence((0..n).collect::<Vec<_>>(), size))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn predicates_match_literal_definitions((g, q) in graph_and_set()) {
        let d = all_pairs_distances(&g).unwrap();
        let fw = floyd_warshall(&g);
        for kind in KINDS {
            if kind == Kind::Doubly && q.len() < 2 {
                continue;
            }
            prop_assert_eq!(satisfies(kind, &q, &d).unwrap(), naive_satisfies(kind, &q, &fw), "{}", kind);
        }
    }

    #[test]
    fn doubly_max_ne_min_matches_exists_pair((g, q) in graph_and_set()) {
        prop_assume!(q.len() >= 2);
        let d = all_pairs_distances(&g).unwrap();
        let fw = floyd_warshall(&g);
        for u in 0..g.n_vertices() {
            for v in u + 1..g.n_vertices() {
                let diffs: Vec<i64> = q.iter().map(|&w| fw[u][w] as i64 - fw[v][w] as i64).collect();
                let literal = diffs.iter().any(|a| diffs.iter().any(|b| a != b));
                let reformulated = diffs.iter().max() != diffs.iter().min();
                prop_assert_eq!(literal, reformulated);
                prop_assert_eq!(mdim_core::kernel::doubly_resolves_pair(u, v, &q, &d), literal);
            }
        }
        if let Some(bad) = doubly_violation(&q, &d).unwrap() {
            let lambda = bad.lambda.unwrap() as i64;
            for &w in &q {
                prop_assert_eq!(fw[bad.u][w] as i64 - fw[bad.v][w] as i64, lambda);
            }
        }
    }

    #[test]
    fn supersets_keep_the_property((g, q) in graph_and_set(), extra in any::<prop::sample::Index>()) {
        let d = all_pairs_distances(&g).unwrap();
        let v = extra.index(g.n_vertices());
        prop_assume!(!q.contains(&v));
        let mut bigger = q.clone();
        bigger.push(v);
        for kind in KINDS {
            if kind == Kind::Doubly && q.len() < 2 {
                continue;
            }
            if satisfies(kind, &q, &d).unwrap() {
                prop_assert!(satisfies(kind, &bigger, &d).unwrap(), "{}", kind);
            }
        }
    }

    #[test]
    fn doubly_and_strong_imply_resolving((g, q) in graph_and_set()) {
        let d = all_pairs_distances(&g).unwrap();
        let resolving = satisfies(Kind::Resolving, &q, &d).unwrap();
        if q.len() >= 2 && satisfies(Kind::Doubly, &q, &d).unwrap() {
            prop_assert!(resolving);
        }
        if satisfies(Kind::Strong, &q, &d).unwrap() {
            prop_assert!(resolving);
        }
    }

    #[test]
    fn strong_sets_cover_every_mmd_pair((g, q) in graph_and_set()) {
        let d = all_pairs_distances(&g).unwrap();
        let mmd = mmd_pairs(&g, &d);
        if satisfies(Kind::Strong, &q, &d).unwrap() {
            for &(u, v) in &mmd.0 {
                prop_assert!(q.contains(&u) || q.contains(&v), "MMD pair ({}, {}) uncovered", u, v);
            }
        }
        // an uncovered MMD pair is never strongly resolved
        for &(u, v) in &mmd.0 {
            if !q.contains(&u) && !q.contains(&v) {
                prop_assert!(violation(Kind::Strong, &q, &d).unwrap().is_some());
            }
        }
    }
}
