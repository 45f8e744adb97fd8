//! The two-point logarithmic family.
//!
//! `h(z) = (z1-z)^p (z1+z)^{p*} (z2-z)^q (z2+z)^{q*} Π (α_i - z²)^{p_i}` and
//! `f(z) = Log(z1-z) + Log(z2-z) - Log(z1+z) - Log(z2+z)`, with
//! `p* - p = q* - q = 2c`. The zeros of the Sheffer polynomials `H_n` of
//! `(h, f)` concentrate on `Re s = c` at heights `n t`, `t ∈ (-T, T)`.

use std::f64::consts::PI;

use rug::ops::NegAssign;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};
use crate::locus::{classify_with, LocusReport, ZeroClass};
use crate::riordan::RiordanPair;
use crate::roots::{find_roots, RootConfig, RootSet};
use crate::scalar::factorial;
use crate::series::Series;
use crate::sheffer::{DensePolynomial, ShefferPair};

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub z1: Rational,
    pub z2: Rational,
    pub p: Rational,
    pub p_star: Rational,
    pub q: Rational,
    pub q_star: Rational,
    pub alphas: Vec<Rational>,
    pub p_is: Vec<Rational>,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

impl FamilyParams {
    /// `h = 1`.
    pub fn trivial(z1: Rational, z2: Rational) -> Self {
        FamilyParams {
            z1,
            z2,
            p: Rational::new(),
            p_star: Rational::new(),
            q: Rational::new(),
            q_star: Rational::new(),
            alphas: Vec::new(),
            p_is: Vec::new(),
        }
    }

    /// `h = (1-z)^4 (1+z) (7-z)^2 (7+z)^{-1} (2-z²)^{-1}`.
    pub fn example1_left() -> Self {
        FamilyParams {
            z1: q(1, 1),
            z2: q(7, 1),
            p: q(4, 1),
            p_star: q(1, 1),
            q: q(2, 1),
            q_star: q(-1, 1),
            alphas: vec![q(2, 1)],
            p_is: vec![q(-1, 1)],
        }
    }

    /// `h = (1-z)^{-4} (1+z)^{-1} (7-z)^{-2} (7+z) (2-z²)^{-1}`.
    pub fn example1_right() -> Self {
        FamilyParams {
            z1: q(1, 1),
            z2: q(7, 1),
            p: q(-4, 1),
            p_star: q(-1, 1),
            q: q(-2, 1),
            q_star: q(1, 1),
            alphas: vec![q(2, 1)],
            p_is: vec![q(-1, 1)],
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "example1-left" => Some(Self::example1_left()),
            "example1-right" => Some(Self::example1_right()),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |field: &'static str, reason: &str| Err(Error::InvalidParams { field, reason: reason.to_string() });
        if self.z1 <= 0 {
            return invalid("z1", "must be positive");
        }
        if self.z2 <= self.z1 {
            return invalid("z2", "must exceed z1");
        }
        if Rational::from(&self.p_star - &self.p) != Rational::from(&self.q_star - &self.q) {
            return invalid("q_star", "q_star - q must equal p_star - p");
        }
        if self.alphas.len() != self.p_is.len() {
            return invalid("p_is", "needs one exponent per alpha");
        }
        let z1_sq = Rational::from(&self.z1 * &self.z1);
        if self.alphas.iter().any(|a| *a <= z1_sq) {
            return invalid("alphas", "every alpha must exceed z1^2");
        }
        Ok(())
    }

    /// `c = (p* - p)/2`.
    pub fn c(&self) -> Rational {
        Rational::from(&self.p_star - &self.p) / 2u32
    }

    pub fn c_plus_p(&self) -> Rational {
        self.c() + &self.p
    }

    /// `h(0) = z1^{p+p*} z2^{q+q*} Π α_i^{p_i}`, the factor removed from `h`.
    pub fn scale(&self) -> f64 {
        let pw = |base: &Rational, e: &Rational| base.to_f64().powf(e.to_f64());
        let mut s = pw(&self.z1, &Rational::from(&self.p + &self.p_star)) * pw(&self.z2, &Rational::from(&self.q + &self.q_star));
        for (a, e) in self.alphas.iter().zip(&self.p_is) {
            s *= pw(a, e);
        }
        s
    }
}

/// The normalized pair `(h/h(0), f)` and the removed constant `h(0)`.
#[derive(Clone, Debug)]
pub struct FamilyPair {
    pub pair: ShefferPair<Rational>,
    pub scale: f64,
}

/// `(1 + sign·z^k/base)^exponent`.
fn binomial_factor(order: usize, base: &Rational, k: usize, sign: i64, exponent: &Rational) -> Result<Series<Rational>> {
    let like = Rational::new();
    if exponent.is_zero() {
        return Ok(Series::one(order, &like));
    }
    let mut coeffs = vec![Rational::new(); order + 1];
    coeffs[0] = Rational::from(1);
    if k <= order {
        coeffs[k] = Rational::from(sign) / base.clone();
    }
    Series::from_coeffs(coeffs)?.pow(exponent)
}

/// `h / h(0)` through `z^order`.
pub fn h_series(params: &FamilyParams, order: usize) -> Result<Series<Rational>> {
    params.validate()?;
    let mut h = Series::one(order, &Rational::new());
    for (base, sign, e) in [
        (&params.z1, -1, &params.p),
        (&params.z1, 1, &params.p_star),
        (&params.z2, -1, &params.q),
        (&params.z2, 1, &params.q_star),
    ] {
        h = h.mul(&binomial_factor(order, base, 1, sign, e)?)?;
    }
    for (alpha, e) in params.alphas.iter().zip(&params.p_is) {
        h = h.mul(&binomial_factor(order, alpha, 2, -1, e)?)?;
    }
    Ok(h)
}

/// `f` with `f_n = -2 (z1^{-n} + z2^{-n}) / n` for odd `n` and zero otherwise.
pub fn f_series(params: &FamilyParams, order: usize) -> Result<Series<Rational>> {
    params.validate()?;
    let inv1 = Rational::from(1) / params.z1.clone();
    let inv2 = Rational::from(1) / params.z2.clone();
    let mut pow1 = Rational::from(1);
    let mut pow2 = Rational::from(1);
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n > 0 {
            pow1 *= &inv1;
            pow2 *= &inv2;
        }
        if n % 2 == 1 {
            coeffs.push(Rational::from(&pow1 + &pow2) * Rational::from((-2, n as i64)));
        } else {
            coeffs.push(Rational::new());
        }
    }
    Series::from_coeffs(coeffs)
}

pub fn build_pair(params: &FamilyParams, order: usize) -> Result<FamilyPair> {
    if order < 1 {
        return Err(Error::OrderTooSmall { needed: 1, available: order });
    }
    let pair = RiordanPair::new(h_series(params, order)?, f_series(params, order)?)?;
    Ok(FamilyPair { pair: ShefferPair::new("family", pair), scale: params.scale() })
}

/// Checks that `h(z) e^{c f(z)}` is even through `z^order`.
pub fn evenness_check(params: &FamilyParams, order: usize) -> Result<bool> {
    let h = h_series(params, order)?;
    let f = f_series(params, order)?;
    Ok(h.mul(&f.scale(&params.c()).exp()?)?.is_even())
}

fn rpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

fn rpoly_add_scaled(acc: &mut Vec<Rational>, term: &[Rational], factor: &Rational) {
    if acc.len() < term.len() {
        acc.resize(term.len(), Rational::new());
    }
    for (a, t) in acc.iter_mut().zip(term) {
        *a += Rational::from(t * factor);
    }
}

fn rpoly_product(factors: &[Vec<Rational>]) -> Vec<Rational> {
    factors.iter().fold(vec![Rational::from(1)], |acc, f| rpoly_mul(&acc, f))
}

/// Polynomial coefficients of `D`, `D h'/h` and `D f'` with
/// `D = (z1² - z²)(z2² - z²) Π (α_i - z²)`, so that the generating function
/// `F = h e^{s f}` satisfies `D ∂F/∂z = (A + s B) F`.
struct Recurrence {
    d: Vec<Rational>,
    a: Vec<Rational>,
    b: Vec<Rational>,
}

impl Recurrence {
    fn new(params: &FamilyParams) -> Self {
        let sq = |x: &Rational| Rational::from(x * x);
        let lin = |c0: &Rational, c1: i64| vec![c0.clone(), Rational::from(c1)];
        let quad = |c0: Rational| vec![c0, Rational::new(), Rational::from(-1)];
        let z1 = &params.z1;
        let z2 = &params.z2;
        let alpha_factors: Vec<Vec<Rational>> = params.alphas.iter().map(|a| quad(a.clone())).collect();
        let alpha_prod = rpoly_product(&alpha_factors);

        let d = rpoly_product(&[quad(sq(z1)), quad(sq(z2)), alpha_prod.clone()]);
        // D / (z1 ∓ z) and D / (z2 ∓ z)
        let over_z1_minus = rpoly_product(&[lin(z1, 1), quad(sq(z2)), alpha_prod.clone()]);
        let over_z1_plus = rpoly_product(&[lin(z1, -1), quad(sq(z2)), alpha_prod.clone()]);
        let over_z2_minus = rpoly_product(&[lin(z2, 1), quad(sq(z1)), alpha_prod.clone()]);
        let over_z2_plus = rpoly_product(&[lin(z2, -1), quad(sq(z1)), alpha_prod]);

        let mut a = Vec::new();
        rpoly_add_scaled(&mut a, &over_z1_minus, &Rational::from(-&params.p));
        rpoly_add_scaled(&mut a, &over_z1_plus, &params.p_star);
        rpoly_add_scaled(&mut a, &over_z2_minus, &Rational::from(-&params.q));
        rpoly_add_scaled(&mut a, &over_z2_plus, &params.q_star);
        for (i, pi) in params.p_is.iter().enumerate() {
            let mut others: Vec<Vec<Rational>> = vec![quad(sq(z1)), quad(sq(z2)), vec![Rational::new(), Rational::from(-2)]];
            others.extend(alpha_factors.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, f)| f.clone()));
            rpoly_add_scaled(&mut a, &rpoly_product(&others), pi);
        }

        let mut b = Vec::new();
        let minus_one = Rational::from(-1);
        for part in [&over_z1_minus, &over_z1_plus, &over_z2_minus, &over_z2_plus] {
            rpoly_add_scaled(&mut b, part, &minus_one);
        }
        Recurrence { d, a, b }
    }
}

/// `H_0, …, H_{n_max}` for the normalized pair `(h/h(0), f)`, generated by
/// the linear recurrence satisfied by the coefficients of `h e^{s f}`.
pub fn hn_polys(params: &FamilyParams, n_max: usize) -> Result<Vec<DensePolynomial<Rational>>> {
    params.validate()?;
    let rec = Recurrence::new(params);
    // P_m = H_m / m!, coefficient vectors in s
    let mut ps: Vec<Vec<Rational>> = vec![vec![Rational::from(1)]];
    for m in 0..n_max {
        let mut next = vec![Rational::new(); m + 2];
        for j in 0..=m {
            let prev = &ps[m - j];
            if let Some(aj) = rec.a.get(j).filter(|x| !x.is_zero()) {
                for (k, c) in prev.iter().enumerate() {
                    next[k] += Rational::from(c * aj);
                }
            }
            if let Some(bj) = rec.b.get(j).filter(|x| !x.is_zero()) {
                for (k, c) in prev.iter().enumerate() {
                    next[k + 1] += Rational::from(c * bj);
                }
            }
            if j >= rec.a.len() && j >= rec.b.len() {
                break;
            }
        }
        for j in 1..=(m + 1).min(rec.d.len() - 1) {
            let dj = &rec.d[j];
            if dj.is_zero() {
                continue;
            }
            let weight = Rational::from(dj * (m + 1 - j) as u64);
            for (k, c) in ps[m + 1 - j].iter().enumerate() {
                next[k] -= Rational::from(c * &weight);
            }
        }
        let denom = Rational::from(&rec.d[0] * (m + 1) as u64);
        for c in next.iter_mut() {
            *c /= &denom;
        }
        ps.push(next);
    }
    Ok(ps
        .into_iter()
        .enumerate()
        .map(|(n, p)| {
            let nf = Rational::from(factorial(n));
            DensePolynomial::from_coeffs(p.into_iter().map(|c| c * &nf).collect())
        })
        .collect())
}

pub fn hn_poly(params: &FamilyParams, n: usize) -> Result<DensePolynomial<Rational>> {
    Ok(hn_polys(params, n)?.pop().expect("n + 1 polynomials"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureCheck {
    /// `H_n(c - x) = (-1)^n H_n(c + x)`.
    pub parity: bool,
    /// `deg H_n(c + x) = n`.
    pub degree: bool,
    /// The leading coefficient has sign `(-1)^n`.
    pub leading_sign: bool,
}

impl StructureCheck {
    pub fn passed(&self) -> bool {
        self.parity && self.degree && self.leading_sign
    }
}

pub fn structure_check(h: &DensePolynomial<Rational>, n: usize, c: &Rational) -> StructureCheck {
    let shifted = h.shift(c);
    let parity = shifted.coeffs().iter().enumerate().all(|(k, coeff)| (k + n).is_multiple_of(2) || coeff.is_zero());
    let degree = !shifted.is_zero() && shifted.degree() == n;
    let expected = if n.is_multiple_of(2) { std::cmp::Ordering::Greater } else { std::cmp::Ordering::Less };
    let leading_sign = shifted.leading().is_some_and(|l| l.cmp0() == expected);
    StructureCheck { parity, degree, leading_sign }
}

/// `c ± (c + p + 1 - k)` for `k = 1..=⌈c+p⌉`, in decreasing order; empty
/// when `c + p < 0`.
pub fn predicted_real_limits(params: &FamilyParams) -> Vec<Rational> {
    let c = params.c();
    let cp = params.c_plus_p();
    if cp < 0 {
        return Vec::new();
    }
    let count = cp.clone().ceil().numer().to_usize().unwrap_or(0);
    let mut out = Vec::with_capacity(2 * count);
    for k in 1..=count {
        let offset = Rational::from(&cp + 1u32) - Rational::from(k as u64);
        out.push(Rational::from(&c + &offset));
        out.push(Rational::from(&c - &offset));
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    T1,
    T2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalParams {
    pub z1: Float,
    pub z2: Float,
    /// `(z2 - z1)/(z1 + z2)`.
    pub t1: Float,
    /// `(z1 + z2)/(4 √(z1 z2))`.
    pub t2: Float,
    pub t: Float,
    pub regime: Regime,
}

impl CriticalParams {
    pub fn prec(&self) -> u32 {
        self.t1.prec()
    }

    pub fn t_f64(&self) -> f64 {
        self.t.to_f64()
    }

    fn at_prec(&self, prec: u32) -> Self {
        let f = |x: &Float| Float::with_val(prec, x);
        CriticalParams {
            z1: f(&self.z1),
            z2: f(&self.z2),
            t1: f(&self.t1),
            t2: f(&self.t2),
            t: f(&self.t),
            regime: self.regime,
        }
    }
}

/// `T = T1` when `z1² - 6 z1 z2 + z2² ≥ 0`, else `T = T2`.
pub fn critical_params(z1: &Rational, z2: &Rational, prec: u32) -> Result<CriticalParams> {
    if *z1 <= 0 || z2 <= z1 {
        return Err(Error::InvalidParams { field: "z2", reason: "need z2 > z1 > 0".to_string() });
    }
    let sum = Rational::from(z1 + z2);
    let t1_exact = Rational::from(z2 - z1) / &sum;
    let t1 = Float::with_val(prec, &t1_exact);
    let prod = Float::with_val(prec, Rational::from(z1 * z2));
    let t2 = Float::with_val(prec, Float::with_val(prec, &sum) / (prod.sqrt() * 4u32));
    let disc = Rational::from(z1 * z1) - Rational::from(z1 * z2) * 6u32 + Rational::from(z2 * z2);
    let regime = if disc >= 0 { Regime::T1 } else { Regime::T2 };
    let t = match regime {
        Regime::T1 => t1.clone(),
        Regime::T2 => t2.clone(),
    };
    Ok(CriticalParams { z1: Float::with_val(prec, z1), z2: Float::with_val(prec, z2), t1, t2, t, regime })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaBranch {
    /// `0 ≤ t < T1`.
    BelowT1,
    /// `T1 ≤ t ≤ T2`.
    AboveT1,
}

/// Evaluates one of the two closed forms for the saddle point, with
/// principal square roots throughout.
pub fn zeta_branch(t: &Float, cp: &CriticalParams, branch: ZetaBranch) -> Complex {
    let prec = cp.prec();
    let half_sum = Float::with_val(prec, &cp.z1 + &cp.z2) / 2u32;
    let t2 = Float::with_val(prec, t * t);
    let one_minus = Float::with_val(prec, 1 - Float::with_val(prec, &t2 * 2u32));
    let t1sq = Float::with_val(prec, &cp.t1 * &cp.t1);
    let inner_sum = match branch {
        ZetaBranch::BelowT1 => {
            let r = Float::with_val(prec, &t1sq - &t2).max(&Float::new(prec)).sqrt();
            let im_inner = Float::with_val(prec, -Float::with_val(prec, t * &r) * 2u32);
            let root = Complex::with_val(prec, (one_minus, im_inner)).sqrt();
            let lin = Complex::with_val(prec, (-r, t));
            lin + root
        }
        ZetaBranch::AboveT1 => {
            let r = Float::with_val(prec, &t2 - &t1sq).max(&Float::new(prec)).sqrt();
            let re_inner = one_minus - Float::with_val(prec, t * &r) * 2u32;
            let root = Complex::with_val(prec, (re_inner, 0)).sqrt();
            let lin = Complex::with_val(prec, (0, Float::with_val(prec, t + &r)));
            lin + root
        }
    };
    inner_sum * half_sum
}

/// `|1/z - i t f'(z)|` with `f'(z) = -1/(z1-z) - 1/(z2-z) - 1/(z1+z) - 1/(z2+z)`.
pub fn saddle_residual(z: &Complex, t: &Float, cp: &CriticalParams) -> f64 {
    let prec = cp.prec();
    let mut fp = Complex::new(prec);
    for (base, sign) in [(&cp.z1, -1i32), (&cp.z2, -1), (&cp.z1, 1), (&cp.z2, 1)] {
        let mut denom = Complex::with_val(prec, z * sign);
        denom += base;
        fp -= denom.recip();
    }
    let mut it_fp = fp * Complex::with_val(prec, (0, t));
    it_fp.neg_assign();
    let res = Complex::with_val(prec, z.recip_ref()) + it_fp;
    Float::with_val(64, res.abs_ref()).to_f64()
}

#[derive(Clone, Debug)]
pub struct SaddlePoint {
    pub t: Float,
    pub zeta: Complex,
    pub branch: ZetaBranch,
    pub residual: f64,
}

/// Saddle residual bound used by [`zeta`]: `2^{-prec/2}`.
pub fn saddle_tolerance(prec: u32) -> f64 {
    2f64.powi(-(prec as i32) / 2)
}

/// `ζ(t)` for `0 ≤ t ≤ T2`, choosing the branch by comparison with `T1`.
/// For `t > 0` the saddle residual must not exceed [`saddle_tolerance`].
pub fn zeta(t: &Float, cp: &CriticalParams) -> Result<SaddlePoint> {
    if *t < 0 || *t > cp.t2 {
        return Err(Error::OutsideDomain { x: t.to_f64(), upper: cp.t2.to_f64() });
    }
    let branch = if *t < cp.t1 { ZetaBranch::BelowT1 } else { ZetaBranch::AboveT1 };
    let z = zeta_branch(t, cp, branch);
    let residual = if t.is_zero() { 0.0 } else { saddle_residual(&z, t, cp) };
    if residual > saddle_tolerance(cp.prec()) {
        return Err(Error::SaddleResidual { t: t.to_f64(), residual });
    }
    Ok(SaddlePoint { t: t.clone(), zeta: z, branch, residual })
}

fn density_unchecked(x: f64, cp: &CriticalParams) -> f64 {
    let prec = cp.prec();
    let t = Float::with_val(prec, x);
    let branch = if t < cp.t1 { ZetaBranch::BelowT1 } else { ZetaBranch::AboveT1 };
    let z = zeta_branch(&t, cp, branch);
    let factor = |base: &Float, sign: i32| {
        let mut w = Complex::with_val(prec, &z * sign);
        w += base;
        Float::with_val(prec, w.abs_ref())
    };
    let num = factor(&cp.z1, 1) * factor(&cp.z2, 1);
    let den = factor(&cp.z1, -1) * factor(&cp.z2, -1);
    Float::with_val(prec, num / den).ln().to_f64() / PI
}

/// `(1/π) ln |(z1+ζ)(z2+ζ) / ((z1-ζ)(z2-ζ))|` at `ζ = ζ(x)`, `0 < x < T`.
pub fn limiting_density(x: f64, cp: &CriticalParams) -> Result<f64> {
    let upper = cp.t_f64();
    if !(x > 0.0 && x < upper) {
        return Err(Error::OutsideDomain { x, upper });
    }
    Ok(density_unchecked(x, cp))
}

const QUAD_TOL: f64 = 1e-10;
const QUAD_BITS: u32 = 128;

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn step<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// `∫_a^b` of the limiting density, `0 ≤ a ≤ b ≤ T`. Below `δ = T/100` the
/// substitution `x = δ u²` removes the logarithmic endpoint singularity.
pub fn density_integral(cp: &CriticalParams, a: f64, b: f64) -> Result<f64> {
    let upper = cp.t_f64();
    if a < 0.0 || b > upper || a > b {
        return Err(Error::OutsideDomain { x: if a < 0.0 { a } else { b }, upper });
    }
    let work = cp.at_prec(QUAD_BITS);
    let delta = upper / 100.0;
    let mut total = 0.0;
    if a < delta {
        let hi = b.min(delta);
        let g = |u: f64| if u <= 0.0 { 0.0 } else { 2.0 * delta * u * density_unchecked(delta * u * u, &work) };
        total += simpson(&g, (a / delta).sqrt(), (hi / delta).sqrt(), QUAD_TOL / 2.0);
    }
    if b > delta {
        let lo = a.max(delta);
        let g = |x: f64| density_unchecked(x, &work);
        total += simpson(&g, lo, b, QUAD_TOL / 2.0);
    }
    Ok(total)
}

/// `∫_0^T` of the limiting density.
pub fn density_mass(cp: &CriticalParams) -> Result<f64> {
    density_integral(cp, 0.0, cp.t_f64())
}

/// `max(1e-8, k/n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineTolerance {
    pub k: f64,
}

impl LineTolerance {
    pub const FLOOR: f64 = 1e-8;

    pub fn at(&self, n: usize) -> f64 {
        (self.k / n as f64).max(Self::FLOOR)
    }
}

impl Default for LineTolerance {
    fn default() -> Self {
        LineTolerance { k: DEFAULT_LINE_K }
    }
}

/// Calibrated on the `example1-right` preset at n = 50 against the n = 200 run, where
/// `n · max |Re r - c|` stays below `1e-50` at 256 bits.
pub const DEFAULT_LINE_K: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct Experiment {
    pub n: usize,
    pub c: Rational,
    pub poly: DensePolynomial<Rational>,
    pub roots: RootSet,
    pub report: LocusReport,
    /// `Im r / n` for on-line roots off the real axis, with multiplicity.
    pub t_values: Vec<f64>,
    pub structure: StructureCheck,
}

impl Experiment {
    pub fn real_zeros(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.report.of_class(ZeroClass::Real).map(|r| r.value.real().to_f64()).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }
}

pub fn run_experiment(params: &FamilyParams, n: usize, cfg: &RootConfig, line: LineTolerance) -> Result<Experiment> {
    if n < 1 {
        return Err(Error::DegreeTooSmall(1));
    }
    let poly = hn_poly(params, n)?;
    experiment_from_poly(params, n, poly, cfg, line)
}

/// As [`run_experiment`] with `H_n` supplied, for reuse along an n-ladder.
pub fn experiment_from_poly(
    params: &FamilyParams,
    n: usize,
    poly: DensePolynomial<Rational>,
    cfg: &RootConfig,
    line: LineTolerance,
) -> Result<Experiment> {
    let c = params.c();
    let structure = structure_check(&poly, n, &c);
    let roots = find_roots(&poly, cfg)?;
    let real_tol = 1e-12 * (1.0 + roots.max_modulus());
    let report = classify_with(&roots, &c, line.at(n), real_tol)?;
    let t_values = report
        .roots
        .iter()
        .filter(|r| r.class == ZeroClass::OnLine && !r.also_real)
        .flat_map(|r| std::iter::repeat_n(r.value.imag().to_f64() / n as f64, r.multiplicity))
        .collect();
    Ok(Experiment { n, c, poly, roots, report, t_values, structure })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinRow {
    pub lo: f64,
    pub hi: f64,
    /// Positive-height on-line zeros in the bin, divided by `n`.
    pub empirical: f64,
    pub analytic: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceReport {
    pub n: usize,
    pub bins: Vec<BinRow>,
    /// Mass of positive heights at or beyond `T`.
    pub outside: f64,
    /// `Σ |empirical - analytic| + outside`.
    pub l1: f64,
}

/// Analytic mass of each of `bins` equal bins over `(0, T)`.
pub fn analytic_bins(cp: &CriticalParams, bins: usize) -> Result<Vec<(f64, f64, f64)>> {
    if bins == 0 {
        return Err(Error::Precondition("bins must be positive".to_string()));
    }
    let upper = cp.t_f64();
    let width = upper / bins as f64;
    (0..bins)
        .map(|i| {
            let lo = width * i as f64;
            let hi = if i + 1 == bins { upper } else { width * (i + 1) as f64 };
            Ok((lo, hi, density_integral(cp, lo, hi)?))
        })
        .collect()
}

pub fn histogram_distance(n: usize, t_values: &[f64], analytic: &[(f64, f64, f64)]) -> Result<DistanceReport> {
    let positive: Vec<f64> = t_values.iter().copied().filter(|&t| t > 0.0).collect();
    if positive.is_empty() {
        return Err(Error::EmptyOnLineSet);
    }
    let upper = analytic.last().map(|b| b.1).unwrap_or(0.0);
    let width = upper / analytic.len() as f64;
    let mut counts = vec![0usize; analytic.len()];
    let mut outside = 0usize;
    for t in positive {
        if t >= upper {
            outside += 1;
        } else {
            let idx = ((t / width) as usize).min(analytic.len() - 1);
            counts[idx] += 1;
        }
    }
    let bins: Vec<BinRow> = analytic
        .iter()
        .zip(&counts)
        .map(|(&(lo, hi, mass), &cnt)| BinRow { lo, hi, empirical: cnt as f64 / n as f64, analytic: mass })
        .collect();
    let outside = outside as f64 / n as f64;
    let l1 = bins.iter().map(|b| (b.empirical - b.analytic).abs()).sum::<f64>() + outside;
    Ok(DistanceReport { n, bins, outside, l1 })
}

/// Compares each run's positive-height histogram with the bin-integrated
/// limiting density.
pub fn empirical_vs_limit(runs: &[Experiment], cp: &CriticalParams, bins: usize) -> Result<Vec<DistanceReport>> {
    if runs.is_empty() {
        return Err(Error::Precondition("at least one run is required".to_string()));
    }
    let analytic = analytic_bins(cp, bins)?;
    runs.iter().map(|r| histogram_distance(r.n, &r.t_values, &analytic)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheffer::sheffer_poly;

    #[test]
    fn f_coefficients_for_one_seven() {
        let f = f_series(&FamilyParams::trivial(q(1, 1), q(7, 1)), 5).unwrap();
        assert_eq!(*f.coeff(1), q(-16, 7));
        assert_eq!(*f.coeff(2), q(0, 1));
        assert_eq!(*f.coeff(3), q(-688, 1029));
    }

    #[test]
    fn f_matches_log_of_rational_function() {
        let params = FamilyParams::trivial(q(2, 1), q(5, 1));
        let order = 9;
        let like = Rational::new();
        // (1 - z/2)(1 - z/5) / ((1 + z/2)(1 + z/5))
        let num = Series::from_prefix(order, &like, &[q(1, 1), q(-7, 10), q(1, 10)]);
        let den = Series::from_prefix(order, &like, &[q(1, 1), q(7, 10), q(1, 10)]);
        let ratio = num.mul(&den.reciprocal().unwrap()).unwrap();
        assert_eq!(ratio.log().unwrap(), f_series(&params, order).unwrap());
    }

    #[test]
    fn example_one_left_h() {
        let order = 8;
        let h = h_series(&FamilyParams::example1_left(), order).unwrap();
        let like = Rational::new();
        // (1-z)^4 (1+z) (1-z/7)^2 (1+z/7)^{-1} (1-z^2/2)^{-1} by direct expansion
        let one_minus = Series::from_prefix(order, &like, &[q(1, 1), q(-1, 1)]);
        let mut expect = Series::one(order, &like);
        for _ in 0..4 {
            expect = expect.mul(&one_minus).unwrap();
        }
        expect = expect.mul(&Series::from_prefix(order, &like, &[q(1, 1), q(1, 1)])).unwrap();
        let seventh = Series::from_prefix(order, &like, &[q(1, 1), q(-1, 7)]);
        expect = expect.mul(&seventh).unwrap().mul(&seventh).unwrap();
        expect = expect.mul(&Series::from_prefix(order, &like, &[q(1, 1), q(1, 7)]).reciprocal().unwrap()).unwrap();
        expect = expect.mul(&Series::from_prefix(order, &like, &[q(1, 1), q(0, 1), q(-1, 2)]).reciprocal().unwrap()).unwrap();
        assert_eq!(h, expect);
        let scale = FamilyParams::example1_left().scale();
        // 1^5 * 7^1 * 2^{-1}
        assert!((scale - 3.5).abs() < 1e-15);
    }

    #[test]
    fn trivial_h_is_one() {
        let h = h_series(&FamilyParams::trivial(q(1, 1), q(3, 1)), 6).unwrap();
        assert_eq!(h, Series::one(6, &Rational::new()));
    }

    #[test]
    fn validation_names_fields() {
        let mut p = FamilyParams::example1_left();
        p.q_star = q(0, 1);
        assert!(matches!(p.validate(), Err(Error::InvalidParams { field: "q_star", .. })));
        let mut p = FamilyParams::example1_left();
        p.alphas = vec![q(1, 2)];
        assert!(matches!(p.validate(), Err(Error::InvalidParams { field: "alphas", .. })));
        let mut p = FamilyParams::example1_left();
        p.z2 = q(1, 2);
        assert!(matches!(p.validate(), Err(Error::InvalidParams { field: "z2", .. })));
        let mut p = FamilyParams::example1_left();
        p.p_is.clear();
        assert!(matches!(p.validate(), Err(Error::InvalidParams { field: "p_is", .. })));
    }

    #[test]
    fn c_from_definition() {
        assert_eq!(FamilyParams::example1_left().c(), q(-3, 2));
        assert_eq!(FamilyParams::example1_left().c_plus_p(), q(5, 2));
        assert_eq!(FamilyParams::example1_right().c(), q(3, 2));
        assert_eq!(FamilyParams::example1_right().c_plus_p(), q(-5, 2));
    }

    #[test]
    fn evenness_of_examples() {
        assert!(evenness_check(&FamilyParams::example1_left(), 16).unwrap());
        assert!(evenness_check(&FamilyParams::example1_right(), 16).unwrap());
        let mut broken = FamilyParams::example1_left();
        broken.q_star = q(0, 1);
        assert!(evenness_check(&broken, 8).is_err());
    }

    #[test]
    fn recurrence_matches_matrix_rows() {
        for params in [FamilyParams::example1_left(), FamilyParams::example1_right(), FamilyParams::trivial(q(1, 1), q(3, 1))] {
            let pair = build_pair(&params, 13).unwrap();
            let fast = hn_polys(&params, 12).unwrap();
            for (n, h) in fast.iter().enumerate() {
                assert_eq!(*h, sheffer_poly(&pair.pair, n).unwrap(), "n = {n}");
            }
        }
    }

    #[test]
    fn structure_of_example_polynomials() {
        let params = FamilyParams::example1_left();
        for (n, h) in hn_polys(&params, 20).unwrap().iter().enumerate() {
            assert!(structure_check(h, n, &params.c()).passed(), "n = {n}");
        }
        let wrong = structure_check(&hn_poly(&params, 5).unwrap(), 5, &q(0, 1));
        assert!(!wrong.parity);
    }

    #[test]
    fn real_limits() {
        let expect: Vec<Rational> = [1, 0, -1, -2, -3, -4].iter().map(|&k| q(k, 1)).collect();
        assert_eq!(predicted_real_limits(&FamilyParams::example1_left()), expect);
        assert!(predicted_real_limits(&FamilyParams::example1_right()).is_empty());
        let mut half = FamilyParams::trivial(q(1, 1), q(3, 1));
        half.p = q(1, 2);
        half.p_star = q(1, 2);
        half.q = q(1, 2);
        half.q_star = q(1, 2);
        assert_eq!(predicted_real_limits(&half), vec![q(1, 2), q(-1, 2)]);
    }

    #[test]
    fn critical_values() {
        let cp = critical_params(&q(1, 7), &q(1, 1), 256).unwrap();
        assert_eq!(cp.regime, Regime::T1);
        let cp = critical_params(&q(1, 1), &q(7, 1), 256).unwrap();
        assert_eq!(cp.regime, Regime::T1);
        assert_eq!(cp.t_f64(), 0.75);
        assert!((cp.t2.to_f64() - 2.0 / 7f64.sqrt()).abs() < 1e-15);
        let cp = critical_params(&q(1, 1), &q(3, 1), 256).unwrap();
        assert_eq!(cp.regime, Regime::T2);
        assert_eq!(cp.t1.to_f64(), 0.5);
        assert!((cp.t_f64() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let close = critical_params(&q(1, 1), &q(1_000_001, 1_000_000), 64).unwrap();
        assert!(close.t1.to_f64() < 1e-6);
    }

    #[test]
    fn zeta_at_zero_is_z1() {
        let cp = critical_params(&q(1, 1), &q(7, 1), 256).unwrap();
        let sp = zeta(&Float::new(256), &cp).unwrap();
        assert!(Float::with_val(256, (sp.zeta - 1u32).abs_ref()).to_f64() < 1e-70);
    }

    #[test]
    fn zeta_at_t2_is_imaginary_geometric_mean() {
        let cp = critical_params(&q(1, 1), &q(3, 1), 256).unwrap();
        let sp = zeta(&cp.t2, &cp).unwrap();
        assert!(sp.zeta.real().to_f64().abs() < 1e-30);
        assert!((sp.zeta.imag().to_f64() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn saddle_residual_small_on_both_branches() {
        for (a, b) in [(1, 7), (1, 3)] {
            let cp = critical_params(&q(a, 1), &q(b, 1), 256).unwrap();
            for i in 1..50 {
                let t = Float::with_val(256, &cp.t2 * i) / 50u32;
                let sp = zeta(&t, &cp).unwrap();
                assert!(sp.residual < 1e-25, "t = {t}, residual = {}", sp.residual);
            }
        }
    }

    #[test]
    fn branches_meet_at_t1_only_in_the_t2_regime() {
        let gap = |a: i64, b: i64| {
            let cp = critical_params(&q(a, 1), &q(b, 1), 256).unwrap();
            let lo = zeta_branch(&cp.t1, &cp, ZetaBranch::BelowT1);
            let hi = zeta_branch(&cp.t1, &cp, ZetaBranch::AboveT1);
            Float::with_val(64, Complex::with_val(256, &lo - &hi).abs_ref()).to_f64()
        };
        assert!(gap(1, 3) < 1e-70);
        // for (1,7) the limits are the two imaginary saddles with product z1 z2
        assert!((gap(1, 7) - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn wrong_sheet_is_detected() {
        let cp = critical_params(&q(1, 1), &q(3, 1), 256).unwrap();
        let t = Float::with_val(256, 0.3);
        let good = zeta_branch(&t, &cp, ZetaBranch::BelowT1);
        assert!(saddle_residual(&good, &t, &cp) < 1e-60);
        let conj = Complex::with_val(256, good.conj_ref());
        assert!(saddle_residual(&conj, &t, &cp) > 1e-3);
    }

    #[test]
    fn density_domain_and_singularity() {
        let cp = critical_params(&q(1, 1), &q(3, 1), 128).unwrap();
        assert!(limiting_density(0.0, &cp).is_err());
        assert!(limiting_density(0.6, &cp).is_err());
        assert!(limiting_density(1e-12, &cp).unwrap() > limiting_density(1e-3, &cp).unwrap());
        assert!(limiting_density(0.3, &cp).unwrap() > 0.0);
    }

    #[test]
    fn density_mass_is_one_half() {
        for (a, b) in [(1, 3), (1, 7)] {
            let cp = critical_params(&q(a, 1), &q(b, 1), 128).unwrap();
            let m = density_mass(&cp).unwrap();
            assert!((m - 0.5).abs() < 1e-8, "({a},{b}) mass {m}");
        }
    }

    #[test]
    fn histogram_rejects_empty() {
        let cp = critical_params(&q(1, 1), &q(3, 1), 64).unwrap();
        let bins = analytic_bins(&cp, 10).unwrap();
        assert_eq!(histogram_distance(4, &[0.0, -0.2], &bins).unwrap_err(), Error::EmptyOnLineSet);
    }

    #[test]
    fn linear_trivial_family() {
        let params = FamilyParams::trivial(q(1, 1), q(3, 1));
        let exp = run_experiment(&params, 1, &RootConfig::default(), LineTolerance::default()).unwrap();
        assert_eq!(exp.roots.count_with_multiplicity(), 1);
        assert_eq!(exp.report.on_line(), 1);
        assert!(exp.report.roots[0].also_real);
        let cp = critical_params(&params.z1, &params.z2, 64).unwrap();
        assert_eq!(empirical_vs_limit(&[exp], &cp, 10).unwrap_err(), Error::EmptyOnLineSet);
    }
}
