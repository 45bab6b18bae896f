use std::hint::black_box;

use comax_core::decomp::{decompose, decompose_crt, p_component_decompose};
use comax_core::linalg::smith_normal_form;
use comax_core::torsion::torsion_split;
use comax_core::{FPModule, Ideal, Pid, RingDescriptor, Scalar};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn cyclics(ring: &RingDescriptor, ns: &[i64]) -> FPModule {
    let ideals: Vec<Ideal> = ns.iter().map(|&n| ring.basic_ideal(&Scalar::int(n))).collect();
    FPModule::direct_sum_of_cyclics(ring.clone(), &ideals).unwrap()
}

fn bench_decompose(c: &mut Criterion) {
    let z = RingDescriptor::Integers;
    let mut g = c.benchmark_group("decompose");
    for n in [2usize, 4, 8] {
        let ns: Vec<i64> = (0..n).map(|i| [12, 90, 360, 14, 75, 8, 27, 49][i]).collect();
        let m = cyclics(&z, &ns);
        let xs = vec![Ideal::gen(2), Ideal::gen(3), Ideal::gen(5), Ideal::gen(7)];
        g.bench_with_input(BenchmarkId::new("integers", n), &m, |b, m| {
            b.iter(|| decompose(black_box(m), &xs, 8).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("p_components", n), &m, |b, m| {
            b.iter(|| p_component_decompose(black_box(m)).unwrap())
        });
    }
    let zm = RingDescriptor::Modular(720);
    let m = cyclics(&zm, &[0, 12, 30, 8]);
    g.bench_function("modular_720_crt", |b| {
        b.iter(|| decompose_crt(black_box(&m), &[Ideal::gen(16), Ideal::gen(9), Ideal::gen(5)]).unwrap())
    });
    g.finish();
}

fn bench_torsion(c: &mut Criterion) {
    let z = RingDescriptor::Integers;
    let m = cyclics(&z, &[8, 9, 0, 0, 25]);
    let xs = vec![Ideal::gen(2), Ideal::gen(3)];
    c.bench_function("torsion_split", |b| b.iter(|| torsion_split(black_box(&m), &xs).unwrap()));
}

fn bench_smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith");
    for n in [4usize, 8, 16] {
        let a: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| Scalar::int(((i * 7 + j * 13 + i * j) % 23) as i64 - 11)).collect())
            .collect();
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| smith_normal_form(Pid::Integers, black_box(a), n).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_decompose, bench_torsion, bench_smith);
criterion_main!(benches);
