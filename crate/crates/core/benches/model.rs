use std::hint::black_box;

use axial_core::axial3::{build_3gen_model, ThreeGenModel};
use axial_core::par::Exec;
use axial_core::rewrite::{Rewriter, ThreeGenParams};
use axial_core::scalar::{rat, Var};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const PATHS: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn point() -> ThreeGenParams {
    ThreeGenParams::generic()
        .specialize(&[
            (Var::Alpha, rat(1, 3)),
            (Var::Beta, rat(1, 2)),
            (Var::X, rat(2, 7)),
            (Var::Y, rat(-1, 3)),
            (Var::Z, rat(3, 5)),
            (Var::P, rat(1, 4)),
        ])
        .expect("valid point")
}

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_3gen_model");
    g.sample_size(10);
    let generic = ThreeGenParams::generic();
    let at = point();
    for (name, exec) in PATHS {
        g.bench_with_input(BenchmarkId::new("generic", name), &exec, |b, &e| {
            b.iter(|| build_3gen_model(black_box(&generic), e).expect("builds"))
        });
        g.bench_with_input(BenchmarkId::new("point", name), &exec, |b, &e| {
            b.iter(|| build_3gen_model(black_box(&at), e).expect("builds"))
        });
    }
    g.finish();
}

fn association(c: &mut Criterion) {
    let mut g = c.benchmark_group("association_defects");
    g.sample_size(10);
    let model: ThreeGenModel = build_3gen_model(&point(), Exec::Parallel).expect("builds");
    for (name, exec) in PATHS {
        g.bench_with_input(BenchmarkId::new("point", name), &exec, |b, &e| {
            b.iter(|| black_box(model.association_defects(e)).len())
        });
    }
    g.finish();
}

fn rewriting(c: &mut Criterion) {
    let mut g = c.benchmark_group("rewrite_checks");
    g.sample_size(10);
    let rw = Rewriter::generic();
    for (name, exec) in PATHS {
        g.bench_with_input(BenchmarkId::new("involution_defects_3", name), &exec, |b, &e| {
            b.iter(|| black_box(rw.involution_defects(3, e)).len())
        });
    }
    g.finish();
}

criterion_group!(benches, build, association, rewriting);
criterion_main!(benches);
