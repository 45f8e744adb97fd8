//! Truncated formal power series.
//!
//! Coefficients are stored in the ordinary basis: `coeffs[k]` is the
//! coefficient of `z^k`. A series of order `N` carries `N + 1`
//! coefficients and every operation is exact through `z^N` (in an exact
//! field) and makes no claim beyond it.

use rug::Rational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<S> {
    coeffs: Vec<S>,
}

/// Elementary transcendental operations on a series.
#[derive(Clone, Debug, PartialEq)]
pub enum Elementary<S> {
    Exp,
    Log,
    Pow(S),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Calculus {
    Derivative,
    Reciprocal,
}

impl<S: Scalar> Series<S> {
    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Series { coeffs })
    }

    /// Builds a series of the given order from exact rational coefficients,
    /// converted into the field of `like`.
    pub fn from_fn(order: usize, like: &S, mut coeff: impl FnMut(usize) -> Rational) -> Self {
        Series {
            coeffs: (0..=order).map(|k| like.from_rational_like(&coeff(k))).collect(),
        }
    }

    /// Zero-padded series from a prefix of coefficients. Extra entries past
    /// `order` are dropped.
    pub fn from_prefix(order: usize, like: &S, prefix: &[S]) -> Self {
        let mut coeffs: Vec<S> = prefix.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, like.zero_like());
        Series { coeffs }
    }

    pub fn zero(order: usize, like: &S) -> Self {
        Series { coeffs: vec![like.zero_like(); order + 1] }
    }

    pub fn constant(order: usize, value: S) -> Self {
        let mut s = Series::zero(order, &value);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize, like: &S) -> Self {
        Series::constant(order, like.one_like())
    }

    /// The identity series `z`.
    pub fn identity(order: usize, like: &S) -> Self {
        Series::monomial(order, 1, like.one_like())
    }

    /// `value · z^k`, truncated (zero if `k > order`).
    pub fn monomial(order: usize, k: usize, value: S) -> Self {
        let mut s = Series::zero(order, &value);
        if k <= order {
            s.coeffs[k] = value;
        }
        s
    }

    /// `exp(a z)`.
    pub fn exp_linear(order: usize, a: &S) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = a.one_like();
        for k in 0..=order {
            if k > 0 {
                term = term.mul(a).div_i64(k as i64).expect("k > 0");
            }
            coeffs.push(term.clone());
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    fn like(&self) -> &S {
        &self.coeffs[0]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            Err(Error::OrderMismatch { left: self.order(), right: other.order() })
        } else {
            Ok(())
        }
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderTooSmall { needed: order, available: self.order() });
        }
        Ok(Series { coeffs: self.coeffs[..=order].to_vec() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(Scalar::neg).collect() }
    }

    pub fn scale(&self, factor: &S) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.mul(factor)).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.like().zero_like();
            for j in 0..=k {
                if self.coeffs[j].is_zero() || other.coeffs[k - j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].mul(&other.coeffs[k - j]));
            }
            out.push(acc);
        }
        Ok(Series { coeffs: out })
    }

    /// `g(f(z))`, by Horner accumulation in the series ring.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut acc = Series::constant(n, self.coeffs[n].clone());
        for k in (0..n).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[z^n] f̄ = (1/n) [z^{n-1}] (z / f)^n`.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[1].is_zero() {
            return Err(Error::ZeroLinearCoefficient);
        }
        // f / z, known through z^{n-1}
        let quotient = Series { coeffs: self.coeffs[1..].to_vec() };
        let inv = quotient.reciprocal()?;
        let mut out = vec![self.like().zero_like(); n + 1];
        let mut power = inv.clone();
        for k in 1..=n {
            out[k] = power.coeffs[k - 1].div_i64(k as i64).expect("k > 0");
            if k < n {
                power = power.mul(&inv)?;
            }
        }
        Ok(Series { coeffs: out })
    }

    /// `exp(f)`, requires `f(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermRequired { op: "exp", expected: "0" });
        }
        let n = self.order();
        let mut y = vec![self.like().one_like()];
        for m in 1..=n {
            let mut acc = self.like().zero_like();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul_i64(k as i64).mul(&y[m - k]));
            }
            y.push(acc.div_i64(m as i64).expect("m > 0"));
        }
        Ok(Series { coeffs: y })
    }

    /// `log(f)`, requires `f(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != self.like().one_like() {
            return Err(Error::ConstantTermRequired { op: "log", expected: "1" });
        }
        let n = self.order();
        let mut y = vec![self.like().zero_like()];
        for m in 1..=n {
            let mut acc = self.coeffs[m].mul_i64(m as i64);
            for k in 1..m {
                if self.coeffs[m - k].is_zero() {
                    continue;
                }
                acc = acc.sub(&y[k].mul_i64(k as i64).mul(&self.coeffs[m - k]));
            }
            y.push(acc.div_i64(m as i64).expect("m > 0"));
        }
        Ok(Series { coeffs: y })
    }

    /// `f^α` with `f(0) = 1`, from the first-order recurrence
    /// `f y' = α f' y`, `y(0) = 1`. Rational `α` keeps rational coefficients.
    pub fn pow(&self, alpha: &S) -> Result<Self> {
        if self.coeffs[0] != self.like().one_like() {
            return Err(Error::ConstantTermRequired { op: "pow", expected: "1" });
        }
        let n = self.order();
        let mut y = vec![self.like().one_like()];
        for m in 1..=n {
            let mut acc = self.like().zero_like();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let weight = alpha.mul_i64(k as i64).sub(&self.like().from_i64_like((m - k) as i64));
                acc = acc.add(&weight.mul(&self.coeffs[k]).mul(&y[m - k]));
            }
            y.push(acc.div_i64(m as i64).expect("m > 0"));
        }
        Ok(Series { coeffs: y })
    }

    pub fn exp_log_pow(&self, mode: &Elementary<S>) -> Result<Self> {
        match mode {
            Elementary::Exp => self.exp(),
            Elementary::Log => self.log(),
            Elementary::Pow(alpha) => self.pow(alpha),
        }
    }

    /// Termwise derivative; the result has order one less.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderTooSmall { needed: 1, available: 0 });
        }
        Ok(Series {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul_i64(k as i64)).collect(),
        })
    }

    /// Multiplicative inverse, requires `f(0) ≠ 0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let head = self.like().one_like().div(&self.coeffs[0]).ok_or(Error::ZeroConstantTerm)?;
        let n = self.order();
        let mut y = vec![head.clone()];
        for m in 1..=n {
            let mut acc = self.like().zero_like();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&y[m - k]));
            }
            y.push(acc.mul(&head).neg());
        }
        Ok(Series { coeffs: y })
    }

    pub fn calculus(&self, mode: Calculus) -> Result<Self> {
        match mode {
            Calculus::Derivative => self.derivative(),
            Calculus::Reciprocal => self.reciprocal(),
        }
    }

    /// `f(a z)`.
    pub fn scale_arg(&self, a: &S) -> Self {
        let mut power = a.one_like();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.mul(&power));
            power = power.mul(a);
        }
        Series { coeffs }
    }

    /// `f(-z)`.
    pub fn negate_arg(&self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        }
    }

    /// `(f(z) + f(-z)) / 2`.
    pub fn even_part(&self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.zero_like() } else { c.clone() })
                .collect(),
        }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Scalar::is_zero)
    }

    /// True when the series is `c·z` (up to truncation).
    pub fn is_linear(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs.iter().skip(2).all(Scalar::is_zero)
    }
}

/// Free-function form of [`Series::exp_log_pow`].
pub fn exp_log_pow<S: Scalar>(f: &Series<S>, mode: &Elementary<S>) -> Result<Series<S>> {
    f.exp_log_pow(mode)
}

/// Free-function form of [`Series::calculus`].
pub fn calculus<S: Scalar>(f: &Series<S>, mode: Calculus) -> Result<Series<S>> {
    f.calculus(mode)
}

/// Common exact series used by the pair library and the tests.
pub mod named {
    use super::*;
    use crate::scalar::factorial;

    fn inv_factorial(k: usize) -> Rational {
        Rational::from((1, factorial(k)))
    }

    /// `e^z`.
    pub fn exp(order: usize) -> Series<Rational> {
        Series::from_fn(order, &Rational::new(), inv_factorial)
    }

    /// `e^z - 1`.
    pub fn expm1(order: usize) -> Series<Rational> {
        Series::from_fn(order, &Rational::new(), |k| if k == 0 { Rational::new() } else { inv_factorial(k) })
    }

    /// `(e^z - 1) / z`.
    pub fn expm1_over_z(order: usize) -> Series<Rational> {
        Series::from_fn(order, &Rational::new(), |k| inv_factorial(k + 1))
    }

    /// `log(1 + z)`.
    pub fn log1p(order: usize) -> Series<Rational> {
        Series::from_fn(order, &Rational::new(), |k| {
            if k == 0 {
                Rational::new()
            } else {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                Rational::from((sign, k as i64))
            }
        })
    }

    /// `cosh(z)`.
    pub fn cosh(order: usize) -> Series<Rational> {
        Series::from_fn(order, &Rational::new(), |k| if k % 2 == 0 { inv_factorial(k) } else { Rational::new() })
    }

    /// `tanh(k z)` as `(e^{2kz} - 1) / (e^{2kz} + 1)`.
    pub fn tanh_linear(order: usize, k: &Rational) -> Series<Rational> {
        let two_k = Rational::from(k * 2u32);
        let e = Series::exp_linear(order, &two_k);
        let one = Series::one(order, &Rational::new());
        let num = e.sub(&one).expect("same order");
        let den = e.add(&one).expect("same order");
        num.mul(&den.reciprocal().expect("constant 2")).expect("same order")
    }

    /// Parses small integer/rational coefficient lists, e.g. `[1, -1/2, 1/12]`.
    pub fn from_ratios(order: usize, values: &[(i64, i64)]) -> Series<Rational> {
        let like = Rational::new();
        let prefix: Vec<Rational> = values.iter().map(|&(n, d)| Rational::from((n, d))).collect();
        Series::from_prefix(order, &like, &prefix)
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use crate::scalar::Real;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn ratios(order: usize, v: &[(i64, i64)]) -> Series<Rational> {
        from_ratios(order, v)
    }

    // Independent long-division oracle: solves a·q = 1 one coefficient at a
    // time by subtracting q_k·a·z^k from the running remainder.
    fn long_division_reciprocal(a: &[Rational], order: usize) -> Vec<Rational> {
        let mut rem: Vec<Rational> = vec![Rational::new(); order + 1];
        rem[0] = Rational::from(1);
        let mut q = vec![Rational::new(); order + 1];
        for k in 0..=order {
            q[k] = Rational::from(&rem[k] / &a[0]);
            for j in k..=order {
                if j - k < a.len() {
                    let t = Rational::from(&q[k] * &a[j - k]);
                    rem[j] -= t;
                }
            }
        }
        q
    }

    #[test]
    fn difference_of_squares() {
        let a = ratios(4, &[(1, 1), (1, 1)]);
        let b = ratios(4, &[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), ratios(4, &[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn exp_times_exp_neg_is_one() {
        let e = exp(8);
        let en = e.negate_arg();
        assert_eq!(e.mul(&en).unwrap(), Series::one(8, &Rational::new()));
    }

    #[test]
    fn bernoulli_generator_times_inverse_is_one() {
        let a = expm1_over_z(10);
        let b = a.reciprocal().unwrap();
        assert_eq!(b.mul(&a).unwrap(), Series::one(10, &Rational::new()));
    }

    #[test]
    fn mul_rejects_order_mismatch() {
        assert_eq!(exp(3).mul(&exp(4)), Err(Error::OrderMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn compose_with_identity() {
        let g = expm1_over_z(6);
        let z = Series::identity(6, &Rational::new());
        assert_eq!(g.compose(&z).unwrap(), g);
    }

    #[test]
    fn exp_of_log1p() {
        let got = exp(10).compose(&log1p(10)).unwrap();
        assert_eq!(got, ratios(10, &[(1, 1), (1, 1)]));
    }

    #[test]
    fn geometric_of_mobius() {
        // 1/(1-w) with w = z/(1+z) gives 1 + z
        let geometric = Series::from_fn(8, &Rational::new(), |_| Rational::from(1));
        let mobius = Series::from_fn(8, &Rational::new(), |k| {
            if k == 0 {
                Rational::new()
            } else if k % 2 == 1 {
                Rational::from(1)
            } else {
                Rational::from(-1)
            }
        });
        assert_eq!(geometric.compose(&mobius).unwrap(), ratios(8, &[(1, 1), (1, 1)]));
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        assert_eq!(exp(4).compose(&exp(4)), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn revert_identity_and_expm1() {
        let z = Series::identity(10, &Rational::new());
        assert_eq!(z.revert().unwrap(), z);
        let inv = expm1(10).revert().unwrap();
        assert_eq!(inv, log1p(10));
        assert_eq!(expm1(10).compose(&inv).unwrap(), z);
    }

    #[test]
    fn revert_geometric_shift() {
        // z/(1-z) reverts to z/(1+z)
        let f = Series::from_fn(9, &Rational::new(), |k| if k == 0 { Rational::new() } else { Rational::from(1) });
        let expected = Series::from_fn(9, &Rational::new(), |k| match k {
            0 => Rational::new(),
            k if k % 2 == 1 => Rational::from(1),
            _ => Rational::from(-1),
        });
        let g = f.revert().unwrap();
        assert_eq!(g, expected);
        assert_eq!(f.compose(&g).unwrap(), Series::identity(9, &Rational::new()));
    }

    #[test]
    fn revert_rejects_zero_linear_term() {
        let f = ratios(5, &[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(f.revert(), Err(Error::ZeroLinearCoefficient));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let zero = Series::zero(6, &Rational::new());
        assert_eq!(zero.exp().unwrap(), Series::one(6, &Rational::new()));
    }

    #[test]
    fn pow_minus_one_is_alternating_geometric() {
        let f = ratios(7, &[(1, 1), (1, 1)]);
        let expected =
            Series::from_fn(7, &Rational::new(), |k| if k % 2 == 0 { Rational::from(1) } else { Rational::from(-1) });
        assert_eq!(f.pow(&r(-1, 1)).unwrap(), expected);
    }

    #[test]
    fn pow_of_alpha_factor_matches_long_division() {
        // (1 - z^2/2)^{-1}: the (2 - z^2)^{-1} factor with 2^{-1} split off
        let base = ratios(8, &[(1, 1), (0, 1), (-1, 2)]);
        let got = base.pow(&r(-1, 1)).unwrap();
        let oracle = long_division_reciprocal(base.coeffs(), 8);
        assert_eq!(got.coeffs(), &oracle[..]);
        assert_eq!(got, ratios(8, &[(1, 1), (0, 1), (1, 2), (0, 1), (1, 4), (0, 1), (1, 8), (0, 1), (1, 16)]));
    }

    #[test]
    fn pow_half_squares_back() {
        let f = ratios(9, &[(1, 1), (3, 1), (-2, 5)]);
        let root = f.pow(&r(1, 2)).unwrap();
        assert_eq!(root.mul(&root).unwrap(), f);
    }

    #[test]
    fn elementary_preconditions() {
        assert!(matches!(exp(3).exp(), Err(Error::ConstantTermRequired { op: "exp", .. })));
        assert!(matches!(expm1(3).log(), Err(Error::ConstantTermRequired { op: "log", .. })));
        assert!(matches!(expm1(3).pow(&r(1, 2)), Err(Error::ConstantTermRequired { op: "pow", .. })));
    }

    #[test]
    fn derivative_drops_order() {
        let f = ratios(2, &[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(f.derivative().unwrap(), ratios(1, &[(1, 1), (2, 1)]));
        assert!(Series::one(0, &Rational::new()).derivative().is_err());
    }

    #[test]
    fn reciprocal_of_exp() {
        assert_eq!(exp(8).reciprocal().unwrap(), exp(8).negate_arg());
    }

    #[test]
    fn reciprocal_gives_bernoulli_numbers() {
        let got = calculus(&expm1_over_z(8), Calculus::Reciprocal).unwrap();
        let oracle = long_division_reciprocal(expm1_over_z(8).coeffs(), 8);
        assert_eq!(got.coeffs(), &oracle[..]);
        assert_eq!(&got.coeffs()[..5], &[r(1, 1), r(-1, 2), r(1, 12), r(0, 1), r(-1, 720)]);
    }

    #[test]
    fn reciprocal_rejects_zero_constant() {
        assert_eq!(expm1(4).reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn tanh_is_odd_and_starts_with_k() {
        let t = tanh_linear(9, &r(1, 2));
        assert_eq!(t.even_part(), Series::zero(9, &Rational::new()));
        assert_eq!(*t.coeff(1), r(1, 2));
        assert_eq!(*t.coeff(3), r(-1, 24));
    }

    #[test]
    fn real_field_agrees_with_rationals() {
        let like = Real::new(200, 0.0);
        let g = Series::from_fn(10, &like, |k| Rational::from((1, crate::scalar::factorial(k + 1))));
        let inv = g.reciprocal().unwrap();
        let prod = g.mul(&inv).unwrap();
        assert!((prod.coeff(0).to_f64() - 1.0).abs() < 1e-50);
        for k in 1..=10 {
            assert!(prod.coeff(k).to_f64().abs() < 1e-50);
        }
        assert!((inv.coeff(2).to_f64() - 1.0 / 12.0).abs() < 1e-15);
    }
}
