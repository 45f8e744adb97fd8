//! Benchmark bodies and fixtures. Each target under `benches/` registers one
//! group from here.

use criterion::{black_box, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use sheffer_core::family::{hn_polys, run_experiment, FamilyParams, LineTolerance};
use sheffer_core::{
    cognate_map, find_roots, group_inv, group_mul, sheffer_poly, DensePolynomial, RiordanPair, RootConfig, Series,
    ShefferPair,
};

const SEED: u64 = 0x5eed;

/// Series with small random rational coefficients and the given constant
/// and linear terms.
pub fn random_series(rng: &mut ChaCha8Rng, order: usize, c0: i64, c1: i64) -> Series<Rational> {
    let coeffs = (0..=order)
        .map(|k| match k {
            0 => Rational::from(c0),
            1 => Rational::from(c1),
            _ => Rational::from((rng.gen_range(-9..=9i64), rng.gen_range(1..=7i64))),
        })
        .collect();
    Series::from_coeffs(coeffs).expect("nonempty")
}

pub fn random_pair(rng: &mut ChaCha8Rng, order: usize) -> RiordanPair<Rational> {
    RiordanPair::new(random_series(rng, order, 1, 1), random_series(rng, order, 0, 1)).expect("admissible")
}

pub fn cognate_bernoulli(n: usize) -> DensePolynomial<Rational> {
    sheffer_poly(&ShefferPair::bernoulli_cognate(n), n).expect("order n")
}

pub fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for order in [16, 32, 64] {
        let a = random_series(&mut rng, order, 1, 1);
        let b = random_series(&mut rng, order, 0, 1);
        group.bench_with_input(BenchmarkId::new("mul", order), &order, |bench, _| bench.iter(|| black_box(&a).mul(&b).unwrap()));
        group.bench_with_input(BenchmarkId::new("compose", order), &order, |bench, _| bench.iter(|| black_box(&a).compose(&b).unwrap()));
        group.bench_with_input(BenchmarkId::new("revert", order), &order, |bench, _| bench.iter(|| black_box(&b).revert().unwrap()));
        group.bench_with_input(BenchmarkId::new("exp", order), &order, |bench, _| bench.iter(|| black_box(&b).exp().unwrap()));
    }
    group.finish();
}

pub fn riordan(c: &mut Criterion) {
    let mut group = c.benchmark_group("riordan");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for order in [10, 20] {
        let a = random_pair(&mut rng, order);
        let b = random_pair(&mut rng, order);
        group.bench_with_input(BenchmarkId::new("group_mul", order), &order, |bench, _| bench.iter(|| group_mul(black_box(&a), &b).unwrap()));
        group.bench_with_input(BenchmarkId::new("group_inv", order), &order, |bench, _| bench.iter(|| group_inv(black_box(&a)).unwrap()));
        group.bench_with_input(BenchmarkId::new("cognate", order), &order, |bench, _| bench.iter(|| cognate_map(black_box(&a)).unwrap()));
        group.bench_with_input(BenchmarkId::new("materialize", order), &order, |bench, _| {
            bench.iter(|| RiordanPair::new(a.g().clone(), a.f().clone()).unwrap().materialize(order).unwrap())
        });
    }
    group.finish();
}

pub fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_roots");
    group.sample_size(10);
    let cfg = RootConfig::with_bits(256);
    for n in [10, 30, 60] {
        let p = cognate_bernoulli(n);
        group.bench_with_input(BenchmarkId::new("bernoulli_cognate", n), &n, |bench, _| bench.iter(|| find_roots(black_box(&p), &cfg).unwrap()));
    }
    group.finish();
}

pub fn family(c: &mut Criterion) {
    let mut group = c.benchmark_group("family");
    group.sample_size(10);
    let params = FamilyParams::example1_right();
    for n in [50, 100] {
        group.bench_with_input(BenchmarkId::new("hn_polys", n), &n, |bench, &n| bench.iter(|| hn_polys(black_box(&params), n).unwrap()));
    }
    let cfg = RootConfig::with_bits(256);
    group.bench_function("experiment_n50", |bench| bench.iter(|| run_experiment(black_box(&params), 50, &cfg, LineTolerance::default()).unwrap()));
    group.finish();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_admissible_and_deterministic() {
        let a = random_pair(&mut ChaCha8Rng::seed_from_u64(SEED), 12);
        let b = random_pair(&mut ChaCha8Rng::seed_from_u64(SEED), 12);
        assert_eq!(a, b);
        assert_eq!(a.order(), 12);
        assert_eq!(cognate_bernoulli(8).degree(), 8);
    }
}
