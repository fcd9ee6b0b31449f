use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use orbimirror::frobenius::{verify_algebra_axioms, verify_classical};
use orbimirror::spectral::build_spectrum;
use orbimirror::wdvv::reconstruct;
use orbimirror::{OrbifoldCohomology, Weights};

fn weights(v: &[u64]) -> Weights {
    Weights::new(v.to_vec()).expect("valid weights")
}

fn spectrum(c: &mut Criterion) {
    let w = weights(&[3, 5, 7, 11, 13]);
    c.bench_function("spectrum mu=39", |b| b.iter(|| build_spectrum(black_box(&w)).unwrap()));
}

fn cup_table(c: &mut Criterion) {
    let coh = OrbifoldCohomology::new(&weights(&[1, 2, 2, 3, 3, 3])).unwrap();
    c.bench_function("cup table mu=14", |b| {
        b.iter(|| {
            for x in coh.basis() {
                for y in coh.basis() {
                    black_box(coh.cup(x, y));
                }
            }
        })
    });
}

fn suites(c: &mut Criterion) {
    let w = weights(&[1, 2, 2, 3, 3, 3]);
    c.bench_function("classical correspondence mu=14", |b| {
        b.iter(|| verify_classical(black_box(&w)).unwrap())
    });
    c.bench_function("algebra axioms mu=14", |b| {
        b.iter(|| verify_algebra_axioms(black_box(&w)).unwrap())
    });
}

fn potential(c: &mut Criterion) {
    let plane = weights(&[1, 1, 1]);
    c.bench_function("reconstruct P^2 to length 10", |b| {
        b.iter(|| reconstruct(black_box(&plane), 10).unwrap())
    });
    let example = weights(&[1, 2, 2, 3, 3, 3]);
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("reconstruct mu=14 to length 4", |b| {
        b.iter(|| reconstruct(black_box(&example), 4).unwrap())
    });
    group.finish();
}

criterion_group!(benches, spectrum, cup_table, suites, potential);
criterion_main!(benches);
