use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qmf_core::decompose::{rose_decompose, solve_in_span, table_basis_mod5, DecomposeMode};
use qmf_core::jacobijet::psi_jet;
use qmf_core::macmahon::{expand_a, validate_symmetric};

fn bench_expand_a(c: &mut Criterion) {
    let s = validate_symmetric(5, &[1, 4, 5]).unwrap();
    let mut group = c.benchmark_group("expand_a");
    for order in [100usize, 200] {
        group.bench_with_input(BenchmarkId::new("k2", order), &order, |b, &order| {
            b.iter(|| expand_a(&s, 2, order))
        });
    }
    group.finish();
}

fn bench_psi_jet(c: &mut Criterion) {
    c.bench_function("psi_jet n=5 l=1 J=8 order=80", |b| {
        b.iter(|| psi_jet(5, 1, 8, 80).unwrap())
    });
}

fn bench_solve(c: &mut Criterion) {
    let s = validate_symmetric(5, &[1, 4]).unwrap();
    let basis = table_basis_mod5(60);
    let target = expand_a(&s, 1, 60);
    c.bench_function("solve_in_span table basis order=60", |b| {
        b.iter(|| solve_in_span(&target, &basis).unwrap())
    });
    c.bench_function("rose_decompose relaxed n=5 k=2 order=80", |b| {
        b.iter(|| rose_decompose(&s, 2, 80, DecomposeMode::Relaxed).unwrap())
    });
}

criterion_group!(benches, bench_expand_a, bench_psi_jet, bench_solve);
criterion_main!(benches);
