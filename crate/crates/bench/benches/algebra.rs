use criterion::{black_box, criterion_group, criterion_main, Criterion};

use atlas_core::atlas_model::AtlasShape;
use atlas_core::focal::{enumerate_focals, focal_det};
use atlas_core::idealgen::gm_generators;
use atlas_core::polyring::{verify_groebner, IntEvaluator, Limits, TermOrder};
use atlas_core::verify::{ranks_at, sample_correspondence, Variety};

fn focal_determinants(c: &mut Criterion) {
    let shape = AtlasShape::new(4, 1);
    let two = enumerate_focals(shape, 2, 1)[0].clone();
    let four = enumerate_focals(shape, 4, 1)[0].clone();
    c.bench_function("focal_det 2-focal m=4", |b| {
        b.iter(|| focal_det(black_box(&two), shape).unwrap())
    });
    c.bench_function("focal_det 4-focal m=4", |b| {
        b.iter(|| focal_det(black_box(&four), shape).unwrap())
    });
}

fn groebner_certificate(c: &mut Criterion) {
    let gm = gm_generators(2);
    let ord = TermOrder::canonical(gm.shape.nvars());
    let limits = Limits::default();
    let mut g = c.benchmark_group("verify_groebner");
    g.sample_size(10);
    g.bench_function("G_M m=2 canonical grevlex", |b| {
        b.iter(|| verify_groebner(black_box(&gm.polys), &ord, &limits))
    });
    g.finish();
}

fn evaluation(c: &mut Criterion) {
    let gm = gm_generators(3);
    let evals: Vec<IntEvaluator> = gm.polys.iter().map(IntEvaluator::new).collect();
    let pt = sample_correspondence(gm.shape, 1).unwrap().int_point();
    c.bench_function("evaluate G_M m=3 at a correspondence", |b| {
        b.iter(|| evals.iter().all(|e| e.eval_big(black_box(&pt)) == 0.into()))
    });
}

fn jacobian_rank(c: &mut Criterion) {
    let shape = AtlasShape::new(4, 4);
    let mut g = c.benchmark_group("jacobian rank");
    g.sample_size(10);
    g.bench_function("Γ_Aqp (4,4)", |b| {
        b.iter(|| ranks_at(Variety::Aqp, shape, black_box(3)).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    focal_determinants,
    groebner_certificate,
    evaluation,
    jacobian_rank
);
criterion_main!(benches);
