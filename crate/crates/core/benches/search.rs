//! Sequential against rayon-parallel subset search on the same instances.
//!
//! Run with `cargo bench -p mdim-core`. Without the `parallel` feature only
//! the sequential group is measured.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mdim_core::families::{build_h, build_layered};
use mdim_core::{min_doubly_resolving, min_resolving, Graph, SolveOptions};

fn instances() -> Vec<(&'static str, Graph)> {
    vec![
        ("cp_6_3", build_layered(6, 3, 1).unwrap().graph),
        ("cpm_4_3_2", build_layered(4, 3, 2).unwrap().graph),
        ("h7", build_h(7).unwrap().graph),
    ]
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let mut jobs = vec![1];
    if cfg!(feature = "parallel") {
        jobs.push(threads);
    }
    for (name, g) in instances() {
        for &j in &jobs {
            let opts = SolveOptions { jobs: j, ..SolveOptions::default() };
            let label = if j == 1 { "sequential".to_string() } else { format!("parallel-{j}") };
            group.bench_with_input(BenchmarkId::new(format!("beta/{label}"), name), &g, |b, g| {
                b.iter(|| min_resolving(g, &opts).unwrap().size)
            });
            if name != "h7" {
                group.bench_with_input(BenchmarkId::new(format!("psi/{label}"), name), &g, |b, g| {
                    b.iter(|| min_doubly_resolving(g, &opts).unwrap().size)
                });
            }
        }
    }
    group.finish();
}

criterion_group!(benches, bench_search);
criterion_main!(benches);
