mod common;

use common::floyd_warshall;
use mdim_core::claims::build_named_set;
use mdim_core::families::{
    build_cycle, build_h, build_l, build_layered, build_path, cartesian_product, line_graph, verify_isomorphism, Built,
    FamilySpec,
};
use mdim_core::kernel::{is_doubly_resolving, is_resolving, is_strong_resolving, representation};
use mdim_core::{all_pairs_distances, read_edge_list, write_edge_list, Graph, GraphError};
use proptest::prelude::*;

#[test]
fn edge_list_io() {
    let p3 = read_edge_list("3 2\n0 1\n1 2").unwrap();
    assert_eq!(p3, build_path(3).unwrap());
    assert_eq!(write_edge_list(&build_cycle(4).unwrap()), "4 4\n0 1\n0 3\n1 2\n2 3");
    assert_eq!(read_edge_list("2 1\n0 0"), Err(GraphError::SelfLoop(0)));
    let h5 = build_h(5).unwrap().graph;
    assert_eq!(read_edge_list(&write_edge_list(&h5)).unwrap(), h5);
}

#[test]
fn layered_product_is_the_cartesian_product() {
    for n in 3..=6 {
        for k in 3..=5 {
            let layered = build_layered(n, k, 1).unwrap();
            let product = cartesian_product(&build_cycle(n).unwrap(), &build_path(k).unwrap()).unwrap();
            // x_{(p-1)n+q} goes to (cycle vertex q, path vertex p)
            let bijection: Vec<usize> = (0..n * k)
                .map(|v| {
                    let c = layered.coord(v);
                    (c.position - 1) * k + (c.layer - 1)
                })
                .collect();
            assert!(verify_isomorphism(&layered.graph, &product, &bijection).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn layered_copies_stack_as_a_path_product() {
    let layered = build_layered(4, 3, 2).unwrap();
    assert_eq!(layered.graph.n_vertices(), 24);
    for t in 1..=12 {
        assert!(layered.graph.has_edge(layered.vertex(1, t), layered.vertex(2, t)));
    }
    let base = build_layered(4, 3, 1).unwrap();
    let product = cartesian_product(&base.graph, &build_path(2).unwrap()).unwrap();
    let bijection: Vec<usize> = (0..24).map(|v| (v % 12) * 2 + v / 12).collect();
    assert!(verify_isomorphism(&layered.graph, &product, &bijection).unwrap());
}

#[test]
fn product_shape() {
    let g = cartesian_product(&build_cycle(4).unwrap(), &build_path(3).unwrap()).unwrap();
    assert_eq!((g.n_vertices(), g.n_edges()), (12, 20));
    let mut degrees = g.degree_sequence();
    degrees.sort_unstable();
    assert_eq!(degrees, [vec![3; 8], vec![4; 4]].concat());
    let layered = build_layered(4, 3, 1).unwrap();
    assert_eq!(layered.layer(1, 2), vec![4, 5, 6, 7]);
    assert_eq!(layered.graph.label(4), "x5");
}

#[test]
fn compatibility() {
    let a = build_layered(4, 3, 1).unwrap();
    assert!(a.compatible(1, 5).unwrap());
    assert!(!a.compatible(0, 1).unwrap());
    let b = build_layered(5, 4, 1).unwrap();
    assert!(b.compatible(0, 15).unwrap());
    let c = build_layered(5, 4, 2).unwrap();
    assert!(c.compatible(0, 20).is_err());
}

#[test]
fn isomorphism_rejects_a_bad_map() {
    let c4 = build_cycle(4).unwrap();
    assert!(verify_isomorphism(&c4, &c4, &[0, 1, 2, 3]).unwrap());
    assert!(!verify_isomorphism(&c4, &c4, &[0, 2, 1, 3]).unwrap());
}

#[test]
fn line_graphs() {
    let p2 = line_graph(&build_path(3).unwrap()).unwrap();
    assert_eq!((p2.n_vertices(), p2.n_edges()), (2, 1));
    let c5 = line_graph(&build_cycle(5).unwrap()).unwrap();
    assert!(c5.degree_sequence().iter().all(|&d| d == 2) && c5.n_vertices() == 5 && c5.is_connected());
    let lh5 = line_graph(&build_h(5).unwrap().graph).unwrap();
    assert_eq!(lh5.n_vertices(), 20);
    assert!(lh5.degree_sequence().iter().all(|&d| d == 4));
}

#[test]
fn h_graph_distances() {
    let h5 = build_h(5).unwrap();
    assert_eq!((h5.graph.n_vertices(), h5.graph.n_edges()), (15, 20));
    let d5 = all_pairs_distances(&h5.graph).unwrap();
    for a in 5..15 {
        for b in a + 1..15 {
            assert!(matches!(d5.get(a, b), 2 | 4));
        }
    }
    let h6 = build_h(6).unwrap();
    assert_eq!(h6.graph.n_vertices(), 21);
    let d6 = all_pairs_distances(&h6.graph).unwrap();
    for a in 0..6 {
        for b in a + 1..6 {
            assert_eq!(d6.get(a, b), 2);
        }
    }
}

#[test]
fn l_graph_structure() {
    for n in 5..=7 {
        let l = build_l(n).unwrap();
        let h = build_h(n).unwrap();
        let lh = line_graph(&h.graph).unwrap();
        assert!(verify_isomorphism(&l.graph, &lh, &l.bijection_to_line_graph(&h)).unwrap());
        assert_eq!(l.graph.n_vertices(), n * (n - 1));
        let d = all_pairs_distances(&l.graph).unwrap();
        assert_eq!(d.diameter(), 3);
        for r in 1..=n {
            let w = l.clique(r).unwrap();
            assert_eq!(w.len(), n - 1);
            assert!(w.iter().all(|&a| w.iter().all(|&b| a == b || l.graph.has_edge(a, b))));
            let nw = l.neighborhood_of_clique(r).unwrap();
            assert_eq!(nw.len(), n - 1);
            assert!(nw.iter().all(|v| !w.contains(v)));
            for &y in &nw {
                assert_eq!(w.iter().filter(|&&x| l.graph.has_edge(x, y)).count(), 1);
            }
            for &a in &nw {
                for &b in &nw {
                    if a != b {
                        assert_eq!(d.get(a, b), 3);
                    }
                }
            }
        }
    }
    assert!(build_l(5).unwrap().clique(6).is_err());
}

#[test]
fn published_representations() {
    let built = "cpm:n=4,k=3,m=4".parse::<FamilySpec>().unwrap().build().unwrap();
    let Built::Layered(p) = &built else { unreachable!() };
    let d = all_pairs_distances(&p.graph).unwrap();
    let e = build_named_set("E", &built).unwrap();
    assert_eq!(representation(p.vertex(1, 5), &e, &d).unwrap().to_string(), "(1, 2, 3, 1, 4)");
    assert!(is_doubly_resolving(&e, &d).unwrap());

    let built = "cpm:n=5,k=4,m=4".parse::<FamilySpec>().unwrap().build().unwrap();
    let Built::Layered(p) = &built else { unreachable!() };
    let d = all_pairs_distances(&p.graph).unwrap();
    assert_eq!(d.get(p.vertex(1, 1), p.vertex(4, 16)), 6);
    let d1 = build_named_set("D1", &built).unwrap();
    assert_eq!(representation(p.vertex(4, 20), &d1, &d).unwrap().to_string(), "(7, 8, 4, 1)");
    assert!(is_doubly_resolving(&d1, &d).unwrap());

    let built = "cpm:n=3,k=3,m=2".parse::<FamilySpec>().unwrap().build().unwrap();
    let d = all_pairs_distances(built.graph()).unwrap();
    assert!(is_strong_resolving(&build_named_set("T", &built).unwrap(), &d).unwrap());

    let built = "h:n=12".parse::<FamilySpec>().unwrap().build().unwrap();
    let d = all_pairs_distances(built.graph()).unwrap();
    let p = build_named_set("P", &built).unwrap();
    assert_eq!(p.labels(built.graph()), ["v1v2", "v1v3", "v4v5", "v4v6", "v7v8", "v7v9", "v10v11", "v10v12"]);
    assert!(is_resolving(&p, &d).unwrap());
}

fn family_spec() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (3usize..12).prop_map(|n| FamilySpec::Cycle { n }),
        (2usize..12).prop_map(|k| FamilySpec::Path { k }),
        (3usize..7, 3usize..6).prop_map(|(n, k)| FamilySpec::Cp { n, k }),
        (3usize..6, 3usize..5, 2usize..4).prop_map(|(n, k, m)| FamilySpec::Cpm { n, k, m }),
        (5usize..9).prop_map(|n| FamilySpec::H { n }),
        (5usize..8).prop_map(|n| FamilySpec::L { n }),
    ]
}

fn check_distance_invariants(g: &Graph) {
    let d = all_pairs_distances(g).unwrap();
    let fw = floyd_warshall(g);
    for (u, row) in fw.iter().enumerate() {
        assert_eq!(d.get(u, u), 0);
        for (v, &expected) in row.iter().enumerate() {
            assert_eq!(d.get(u, v), d.get(v, u));
            assert_eq!(d.get(u, v) as u32, expected);
            if u != v {
                assert!(d.get(u, v) >= 1);
            }
            if g.has_edge(u, v) {
                assert_eq!(d.get(u, v), 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_graphs_have_sound_distances(spec in family_spec()) {
        let built = spec.build().unwrap();
        check_distance_invariants(built.graph());
        let round = read_edge_list(&write_edge_list(built.graph())).unwrap();
        prop_assert_eq!(&round, built.graph());
        prop_assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
    }
}
