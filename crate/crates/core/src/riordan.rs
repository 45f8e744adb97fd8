//! Exponential Riordan arrays `[g, f]` and the cognate map.
//!
//! Column `k` of `[g, f]` has exponential generating function `g f^k / k!`,
//! so `d(n, k) = (n!/k!) [z^n] g f^k`. Multiplication follows
//! `[g, f][h, l] = [g·h(f), l(f)]`.

use std::sync::{Arc, OnceLock};

use rug::Rational;

use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};
use crate::series::Series;

/// An admissible pair: `g(0) ≠ 0`, `f(0) = 0`, `f'(0) ≠ 0`, equal orders.
#[derive(Clone, Debug)]
pub struct RiordanPair<S> {
    g: Series<S>,
    f: Series<S>,
    matrix: OnceLock<Arc<RiordanMatrix<S>>>,
}

impl<S: Scalar> PartialEq for RiordanPair<S> {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g && self.f == other.f
    }
}

/// Lower-triangular block of an exponential Riordan array, rows `0..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiordanMatrix<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> RiordanPair<S> {
    pub fn new(g: Series<S>, f: Series<S>) -> Result<Self> {
        if g.order() != f.order() {
            return Err(Error::OrderMismatch { left: g.order(), right: f.order() });
        }
        if g.coeff(0).is_zero() {
            return Err(Error::Inadmissible("g(0) must be nonzero"));
        }
        if !f.coeff(0).is_zero() {
            return Err(Error::Inadmissible("f(0) must be zero"));
        }
        if f.order() >= 1 && f.coeff(1).is_zero() {
            return Err(Error::Inadmissible("f'(0) must be nonzero"));
        }
        Ok(RiordanPair { g, f, matrix: OnceLock::new() })
    }

    /// The group identity `[1, z]`.
    pub fn identity(order: usize, like: &S) -> Self {
        RiordanPair::new(Series::one(order, like), Series::identity(order, like)).expect("[1, z] is admissible")
    }

    pub fn g(&self) -> &Series<S> {
        &self.g
    }

    pub fn f(&self) -> &Series<S> {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Rows `0..=n_max` of the matrix. The full-order matrix is computed
    /// once per pair and shared between callers.
    pub fn materialize(&self, n_max: usize) -> Result<RiordanMatrix<S>> {
        if n_max > self.order() {
            return Err(Error::OrderTooSmall { needed: n_max, available: self.order() });
        }
        let full = self.full_matrix();
        Ok(RiordanMatrix { rows: full.rows[..=n_max].to_vec() })
    }

    /// Row `n` of the matrix, i.e. the coefficients of the `n`-th Sheffer
    /// polynomial in increasing powers of the variable.
    pub fn row(&self, n: usize) -> Result<Vec<S>> {
        if n > self.order() {
            return Err(Error::OrderTooSmall { needed: n, available: self.order() });
        }
        Ok(self.full_matrix().rows[n].clone())
    }

    fn full_matrix(&self) -> Arc<RiordanMatrix<S>> {
        self.matrix.get_or_init(|| Arc::new(self.compute_matrix())).clone()
    }

    fn compute_matrix(&self) -> RiordanMatrix<S> {
        let n_max = self.order();
        let like = self.g.coeff(0);
        let facts: Vec<_> = (0..=n_max).map(factorial).collect();
        let mut rows: Vec<Vec<S>> = (0..=n_max).map(|n| Vec::with_capacity(n + 1)).collect();
        let mut column = self.g.clone();
        for k in 0..=n_max {
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                let ratio = Rational::from((facts[n].clone(), facts[k].clone()));
                row.push(column.coeff(n).mul(&like.from_rational_like(&ratio)));
            }
            if k < n_max {
                column = column.mul(&self.f).expect("equal orders");
            }
        }
        RiordanMatrix { rows }
    }
}

impl<S: Scalar> RiordanMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        RiordanMatrix { rows }
    }

    /// Number of rows held.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// Entry `(n, k)`; zero above the diagonal.
    pub fn entry(&self, n: usize, k: usize) -> S {
        if k > n {
            self.rows[0][0].zero_like()
        } else {
            self.rows[n][k].clone()
        }
    }

    /// Ordinary matrix product of two lower-triangular blocks.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::OrderMismatch { left: self.dim(), right: other.dim() });
        }
        let like = &self.rows[0][0];
        let rows = (0..self.dim())
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        (k..=n).fold(like.zero_like(), |acc, j| acc.add(&self.rows[n][j].mul(&other.rows[j][k])))
                    })
                    .collect()
            })
            .collect();
        Ok(RiordanMatrix { rows })
    }
}

/// `[a.g · b.g(a.f), b.f(a.f)]`.
pub fn group_mul<S: Scalar>(a: &RiordanPair<S>, b: &RiordanPair<S>) -> Result<RiordanPair<S>> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: b.order() });
    }
    let g = a.g.mul(&b.g.compose(&a.f)?)?;
    let f = b.f.compose(&a.f)?;
    RiordanPair::new(g, f)
}

/// `[g, f]^{-1} = [1 / g(f̄), f̄]` with `f̄` the compositional inverse of `f`.
pub fn group_inv<S: Scalar>(p: &RiordanPair<S>) -> Result<RiordanPair<S>> {
    let fbar = p.f.revert()?;
    let g = p.g.compose(&fbar)?.reciprocal()?;
    RiordanPair::new(g, fbar)
}

/// The cognate isomorphism `[g, f] ↦ [f'/g, f]`, returned at order `N - 1`.
pub fn cognate_map<S: Scalar>(p: &RiordanPair<S>) -> Result<RiordanPair<S>> {
    if p.order() == 0 {
        return Err(Error::OrderTooSmall { needed: 1, available: 0 });
    }
    let order = p.order() - 1;
    let fprime = p.f.derivative()?;
    let g = fprime.mul(&p.g.truncate(order)?.reciprocal()?)?;
    RiordanPair::new(g, p.f.truncate(order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::named;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn like() -> Rational {
        Rational::new()
    }

    fn binomial(n: usize, k: usize) -> Rational {
        Rational::from(rug::Integer::from(rug::Integer::binomial_u(n as u32, k as u32)))
    }

    fn exp_pair(order: usize) -> RiordanPair<Rational> {
        RiordanPair::new(named::exp(order), Series::identity(order, &like())).unwrap()
    }

    fn bernoulli_pair(order: usize) -> RiordanPair<Rational> {
        let g = named::expm1_over_z(order).reciprocal().unwrap();
        RiordanPair::new(g, Series::identity(order, &like())).unwrap()
    }

    #[test]
    fn identity_materializes_to_identity_matrix() {
        let m = RiordanPair::identity(6, &like()).materialize(6).unwrap();
        for n in 0..=6 {
            for k in 0..=6 {
                let expect = if n == k { r(1, 1) } else { r(0, 1) };
                assert_eq!(m.entry(n, k), expect);
            }
        }
    }

    #[test]
    fn exp_pair_is_pascal() {
        let m = exp_pair(8).materialize(8).unwrap();
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(m.entry(n, k), binomial(n, k));
            }
        }
        // Pascal recurrence as an independent cross-check
        for n in 1..=8 {
            for k in 1..n {
                assert_eq!(m.entry(n, k), (m.entry(n - 1, k - 1) + m.entry(n - 1, k)));
            }
        }
    }

    #[test]
    fn bernoulli_row_two() {
        let m = bernoulli_pair(2).materialize(2).unwrap();
        assert_eq!(m.rows()[2], vec![r(1, 6), r(-1, 1), r(1, 1)]);
    }

    #[test]
    fn materialize_rejects_large_n() {
        assert_eq!(exp_pair(3).materialize(4), Err(Error::OrderTooSmall { needed: 4, available: 3 }));
    }

    #[test]
    fn admissibility_is_checked() {
        let z = Series::identity(4, &like());
        assert!(matches!(RiordanPair::new(Series::zero(4, &like()), z.clone()), Err(Error::Inadmissible(_))));
        assert!(matches!(RiordanPair::new(named::exp(4), named::exp(4)), Err(Error::Inadmissible(_))));
        let z2 = Series::monomial(4, 2, r(1, 1));
        assert!(matches!(RiordanPair::new(named::exp(4), z2), Err(Error::Inadmissible(_))));
        assert!(matches!(RiordanPair::new(named::exp(3), z), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn right_identity() {
        let p = bernoulli_pair(7);
        assert_eq!(group_mul(&p, &RiordanPair::identity(7, &like())).unwrap(), p);
    }

    #[test]
    fn exp_squared() {
        let sq = group_mul(&exp_pair(8), &exp_pair(8)).unwrap();
        let expected = RiordanPair::new(Series::exp_linear(8, &r(2, 1)), Series::identity(8, &like())).unwrap();
        assert_eq!(sq, expected);
        let m = sq.materialize(8).unwrap();
        for n in 0..=8 {
            for k in 0..=n {
                let two_pow = Rational::from(rug::Integer::from(1) << (n - k) as u32);
                assert_eq!(m.entry(n, k), (binomial(n, k) * two_pow));
            }
        }
    }

    #[test]
    fn reciprocal_pairs_multiply_to_identity() {
        let b = bernoulli_pair(10);
        let c = RiordanPair::new(named::expm1_over_z(10), Series::identity(10, &like())).unwrap();
        assert_eq!(group_mul(&b, &c).unwrap(), RiordanPair::identity(10, &like()));
    }

    #[test]
    fn inverses() {
        let id = RiordanPair::identity(8, &like());
        assert_eq!(group_inv(&id).unwrap(), id);

        let inv = group_inv(&exp_pair(8)).unwrap();
        assert_eq!(inv.g(), &named::exp(8).negate_arg());
        assert_eq!(group_mul(&exp_pair(8), &inv).unwrap(), id);

        let p = RiordanPair::new(Series::one(10, &like()), named::expm1(10)).unwrap();
        let inv = group_inv(&p).unwrap();
        assert_eq!(inv.f(), &named::log1p(10));
        assert_eq!(inv.g(), &Series::one(10, &like()));
    }

    #[test]
    fn cognate_examples() {
        let id = RiordanPair::identity(6, &like());
        assert_eq!(cognate_map(&id).unwrap(), RiordanPair::identity(5, &like()));

        let cog = cognate_map(&bernoulli_pair(9)).unwrap();
        assert_eq!(cog.order(), 8);
        assert_eq!(cog.g(), &named::expm1_over_z(8));
        assert_eq!(cog.f(), &Series::identity(8, &like()));
    }

    #[test]
    fn cognate_is_multiplicative_on_example() {
        let a = exp_pair(9);
        let b = RiordanPair::new(Series::one(9, &like()), named::expm1(9)).unwrap();
        let lhs = cognate_map(&group_mul(&a, &b).unwrap()).unwrap();
        let rhs = group_mul(&cognate_map(&a).unwrap(), &cognate_map(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn diagonal_law() {
        let p = RiordanPair::new(named::exp(7).scale(&r(3, 1)), named::expm1(7).scale(&r(-2, 5))).unwrap();
        let m = p.materialize(7).unwrap();
        let mut expect = r(3, 1);
        for n in 0..=7 {
            assert_eq!(m.entry(n, n), expect);
            expect *= r(-2, 5);
        }
    }

    #[test]
    fn materialization_is_cached_and_shared() {
        let p = exp_pair(5);
        let a = p.full_matrix();
        let b = p.clone().full_matrix();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
