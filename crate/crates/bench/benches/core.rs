use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mfq_core::liealg::GlMinimal;
use mfq_core::loopv::VacuumModule;
use mfq_core::mfshift::sample_regular_chi;
use mfq_core::quantize::{cdet_z, extract_q, loop_pbw, quantized_algebra};

fn pbw_products(c: &mut Criterion) {
    let m = GlMinimal::new(4).unwrap();
    let pbw = loop_pbw(&m);
    let q = extract_q(&m).unwrap();
    c.bench_function("pbw/Q2*Q3 n=4", |b| b.iter(|| pbw.mul(black_box(&q[1]), black_box(&q[2]))));
}

fn column_determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("cdet_z");
    for n in 3..=5 {
        let m = GlMinimal::new(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| cdet_z(m).unwrap()));
    }
    group.finish();
}

fn centrality(c: &mut Criterion) {
    let mut group = c.benchmark_group("centrality");
    group.sample_size(10);
    for n in 3..=4 {
        let m = GlMinimal::new(n).unwrap();
        let q = extract_q(&m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(m, q), |b, (m, q)| {
            let v = VacuumModule::new(&m.ge.algebra, &m.kappa);
            b.iter(|| q.iter().all(|x| v.is_center(x)))
        });
    }
    group.finish();
}

fn quantized_commutativity(c: &mut Criterion) {
    let m = GlMinimal::new(4).unwrap();
    let chi = sample_regular_chi(&m.ge.algebra, 4, 7).unwrap();
    let mut group = c.benchmark_group("quantize");
    group.sample_size(10);
    group.bench_function("n=4", |b| b.iter(|| quantized_algebra(&m, &chi, false).unwrap()));
    group.finish();
}

criterion_group!(benches, pbw_products, column_determinants, centrality, quantized_commutativity);
criterion_main!(benches);
