//! Kernel benchmarks. Run once with the default features and once with
//! `--no-default-features` to compare the rayon path against the
//! sequential fallback:
//!
//!   cargo bench -p mpiso -- --save-baseline parallel
//!   cargo bench -p mpiso --no-default-features -- --save-baseline sequential
//!   critcmp parallel sequential   (or diff the criterion reports)

use std::collections::BTreeMap;

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use mpiso::calculus::QTable;
use mpiso::sampling::{random_commuting_tuple, unit_probes};
use mpiso::spectral::{lp_radius_sequence, RadiusMode};
use mpiso::{
    is_mp_isometry, load_example, Exponent, NormContext, VerifyOptions, DEFAULT_SEED,
};

fn bench_verify(c: &mut Criterion) {
    let (richter, _) = load_example("richter_22", &BTreeMap::new()).unwrap();
    let ctx = NormContext::euclidean();
    let opts = VerifyOptions { samples: 256, ..VerifyOptions::default() };
    c.bench_function("is_mp_isometry richter m=2 samples=256", |b| {
        b.iter(|| is_mp_isometry(black_box(&richter), &ctx, 2, &opts).unwrap())
    });
}

fn bench_qtable(c: &mut Criterion) {
    let tuple = random_commuting_tuple(DEFAULT_SEED, 3, 6).unwrap();
    let ctx = NormContext::euclidean();
    let probes = unit_probes(DEFAULT_SEED ^ 1, 8, tuple.dim(), Exponent::Finite(2.0), false);
    c.bench_function("qtable d=3 dim=6 depth=8 x8 probes", |b| {
        b.iter(|| {
            for x in &probes {
                black_box(QTable::compute(&tuple, x, &ctx, 8).unwrap());
            }
        })
    });
}

fn bench_radius(c: &mut Criterion) {
    let (richter, _) = load_example("richter_22", &BTreeMap::new()).unwrap();
    c.bench_function("lp_radius_sequence richter k_max=14", |b| {
        b.iter(|| {
            lp_radius_sequence(
                black_box(&richter),
                Exponent::Finite(2.0),
                14,
                RadiusMode::Eigenvalue,
            )
            .unwrap()
        })
    });
}

criterion_group!(kernels, bench_verify, bench_qtable, bench_radius);
criterion_main!(kernels);
