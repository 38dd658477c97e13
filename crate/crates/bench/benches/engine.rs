use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lzd_core::buildings::{image_vertices, CaseTag};
use lzd_core::criterion::{census, check_distinction, default_t_values, preservation_check};
use lzd_core::ffield::build_field;
use lzd_core::localdata::{LocalSetup, Ramification, TameParameter};
use lzd_core::RootOfUnity;
use std::hint::black_box;

fn field(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_field");
    for (p, k) in [(3u64, 4u32), (5, 4), (2, 12)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{p}^{k}")), &(p, k), |b, &(p, k)| {
            b.iter(|| build_field(black_box(p), black_box(k)).unwrap())
        });
    }
    g.finish();
}

fn verdict(c: &mut Criterion) {
    let p = TameParameter::new(LocalSetup::new(3, Ramification::TotallyRamified, 2, 1), 2, RootOfUnity::one());
    c.bench_function("check_distinction/tr_even", |b| b.iter(|| check_distinction(black_box(&p)).unwrap()));
    let p = TameParameter::new(LocalSetup::new(3, Ramification::Unramified, 3, 3), 1, RootOfUnity::one());
    c.bench_function("check_distinction/nr_odd", |b| b.iter(|| check_distinction(black_box(&p)).unwrap()));
}

fn sweeps(c: &mut Criterion) {
    let ts = default_t_values();
    c.bench_function("census/q5_tr_n2", |b| {
        b.iter(|| census(5, Ramification::TotallyRamified, black_box(2), &[1, 2], &ts).unwrap())
    });
    c.bench_function("preservation/q3_nr_n3", |b| {
        b.iter(|| preservation_check(3, black_box(3), Ramification::Unramified).unwrap())
    });
}

fn buildings(c: &mut Criterion) {
    let mut g = c.benchmark_group("image_vertices");
    for case in CaseTag::ALL {
        g.bench_with_input(BenchmarkId::new(case.as_str(), 6), &case, |b, &case| {
            b.iter(|| image_vertices(case, black_box(6)))
        });
    }
    g.finish();
}

criterion_group!(benches, field, verdict, sweeps, buildings);
criterion_main!(benches);
