use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pcsp_core::adjoint::{check_adjoint, ArcPair, SymPair};
use pcsp_core::circle::{auto_circle_map, degree_vectors};
use pcsp_core::graph::{clique, cycle};
use pcsp_core::hom::shortest_odd_closed_walk;
use pcsp_core::minion::enumerate_polymorphisms;
use pcsp_core::verify::delta_sym_equivalence;
use pcsp_core::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn adjoint_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("adjoint_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("delta", name), |b| {
            b.iter(|| check_adjoint(&ArcPair, 40, 5, 0, exec))
        });
        group.bench_function(BenchmarkId::new("sym", name), |b| {
            b.iter(|| check_adjoint(&SymPair, 40, 5, 0, exec))
        });
    }
    group.finish();
}

fn degree_vector_batch(c: &mut Criterion) {
    let c5 = cycle(5).unwrap();
    let k3 = clique(3).unwrap();
    let s = auto_circle_map(&k3).unwrap();
    let r0 = shortest_odd_closed_walk(&c5).unwrap();
    let fs: Vec<_> = enumerate_polymorphisms(&c5, &k3, 2).unwrap().collect();
    let mut group = c.benchmark_group("degree_vectors_c5_k3_arity2");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| degree_vectors(exec, &fs, &r0, &s).unwrap()));
    }
    group.finish();
}

fn equivalence_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta_sym_equivalence");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| delta_sym_equivalence(5, 3, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, adjoint_sweep, degree_vector_batch, equivalence_sweep);
criterion_main!(benches);
