mod common;

use common::{corpus, floyd_warshall, naive_cover_size, naive_minimum, naive_satisfies};
use mdim_core::families::FamilySpec;
use mdim_core::kernel::satisfies;
use mdim_core::{
    all_pairs_distances, build_sr_graph, greedy_upper_bound, min_vertex_cover, solve, Graph, Kind, Method, SearchMode,
    SolveOptions,
};

const KINDS: [Kind; 3] = [Kind::Resolving, Kind::Doubly, Kind::Strong];

fn family(spec: &str) -> Graph {
    spec.parse::<FamilySpec>().unwrap().build().unwrap().graph().clone()
}

fn family_instances() -> Vec<Graph> {
    ["cycle:n=7", "path:k=5", "cp:n=3,k=3", "cp:n=4,k=3", "cp:n=5,k=4", "cpm:n=3,k=3,m=2", "h:n=5", "l:n=5"]
        .into_iter()
        .map(family)
        .collect()
}

#[test]
fn bfs_distances_match_floyd_warshall() {
    for g in corpus().iter().chain(&family_instances()) {
        let d = all_pairs_distances(g).unwrap();
        let fw = floyd_warshall(g);
        for (u, row) in fw.iter().enumerate() {
            for (v, &expected) in row.iter().enumerate() {
                assert_eq!(d.get(u, v) as u32, expected, "d({u},{v}) on {} vertices", g.n_vertices());
            }
        }
    }
}

#[test]
fn solvers_match_all_subsets_oracle() {
    for (i, g) in corpus().iter().enumerate() {
        let fw = floyd_warshall(g);
        for kind in KINDS {
            if kind == Kind::Doubly && g.n_vertices() < 2 {
                continue;
            }
            let got = solve(g, kind, &SolveOptions::default()).unwrap();
            let (size, first) = naive_minimum(kind, &fw);
            assert_eq!(got.size, size, "graph {i}, {kind}");
            assert!(naive_satisfies(kind, got.witness.members(), &fw), "graph {i}, {kind}");
            assert!(got.certificate_checked, "graph {i}, {kind}");
            if kind != Kind::Strong {
                assert_eq!(got.witness.members(), first.as_slice(), "graph {i}, {kind}");
            } else {
                assert_eq!(got.method, Method::VertexCover, "graph {i}");
            }
        }
    }
}

#[test]
fn exhaustive_and_pruned_agree() {
    let exhaustive = SolveOptions { mode: SearchMode::Exhaustive, ..SolveOptions::default() };
    for g in corpus().iter().take(30).chain(&family_instances()[..6]) {
        for kind in KINDS {
            let a = solve(g, kind, &SolveOptions::default()).unwrap();
            let b = solve(g, kind, &exhaustive).unwrap();
            assert_eq!((a.size, &a.witness), (b.size, &b.witness), "{kind}");
        }
    }
}

#[test]
fn parallel_runs_are_deterministic() {
    let seq = SolveOptions::default();
    let par = SolveOptions { jobs: 4, ..SolveOptions::default() };
    for g in corpus().iter().chain(&family_instances()) {
        for kind in KINDS {
            let a = solve(g, kind, &seq).unwrap();
            let b = solve(g, kind, &par).unwrap();
            assert_eq!(a, b, "{kind}");
        }
    }
}

#[test]
fn vertex_cover_matches_brute_force() {
    for g in corpus() {
        let cover = min_vertex_cover(&g, u64::MAX).unwrap();
        assert_eq!(cover.len(), naive_cover_size(&g));
        assert!(g.edges().iter().all(|&(u, v)| cover.contains(u) || cover.contains(v)));
        // the strong resolving number equals the cover number of the MMD graph
        let sr = build_sr_graph(&g).unwrap();
        let sr_cover = min_vertex_cover(&sr.graph, u64::MAX).unwrap();
        assert_eq!(sr_cover.len(), naive_cover_size(&sr.graph));
        let fw = floyd_warshall(&g);
        assert_eq!(sr_cover.len(), naive_minimum(Kind::Strong, &fw).0);
    }
}

#[test]
fn greedy_bound_is_a_valid_set() {
    for g in corpus().iter().chain(&family_instances()) {
        let d = all_pairs_distances(g).unwrap();
        for kind in KINDS {
            let q = greedy_upper_bound(g, kind).unwrap();
            assert!(satisfies(kind, &q, &d).unwrap(), "{kind}");
            let exact = solve(g, kind, &SolveOptions::default()).unwrap();
            assert!(q.len() >= exact.size);
        }
    }
}
