//! Simultaneous polynomial root finding at controllable precision.
//!
//! Roots are refined with the Aberth–Ehrlich iteration. Each run is
//! certified by two per-root quantities: the normalized residual
//! `|P(r)| / (‖P‖₁ max(1,|r|)^deg)` and an inclusion radius
//! `deg · (|P(r)| + rounding) / |P'(r)|`. If a run does not certify, the
//! working precision is doubled and the iteration restarted from the
//! previous approximations.

use std::f64::consts::PI;

use rug::ops::{NegAssign, Pow};
use rug::{Assign, Complex, Float};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sheffer::DensePolynomial;

/// Precision used for magnitudes and error bookkeeping.
const MAG_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct RootConfig {
    pub start_bits: u32,
    pub max_bits: u32,
    /// Relative certificate tolerance.
    pub cert_tol: f64,
    /// Sweep limit per precision level; `None` scales with the degree.
    pub max_sweeps: Option<usize>,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { start_bits: 128, max_bits: 4096, cert_tol: 1e-30, max_sweeps: None }
    }
}

impl RootConfig {
    pub fn with_bits(bits: u32) -> Self {
        RootConfig { start_bits: bits, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct Root {
    pub value: Complex,
    pub multiplicity: usize,
    /// Normalized residual at `value`.
    pub residual: f64,
    /// Radius of a disc around `value` expected to contain the root(s).
    pub error: f64,
}

impl Root {
    pub fn re(&self) -> f64 {
        self.value.real().to_f64()
    }

    pub fn im(&self) -> f64 {
        self.value.imag().to_f64()
    }
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub degree: usize,
    pub precision_bits: u32,
    pub cert_tol: f64,
    /// False when the precision ceiling was reached without certification;
    /// the roots are then the best available approximations.
    pub certified: bool,
}

impl RootSet {
    /// Root values repeated by multiplicity.
    pub fn values(&self) -> Vec<Complex> {
        self.roots.iter().flat_map(|r| std::iter::repeat_n(r.value.clone(), r.multiplicity)).collect()
    }

    pub fn count_with_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn max_error(&self) -> f64 {
        self.roots.iter().map(|r| r.error).fold(0.0, f64::max)
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|r| Float::with_val(MAG_BITS, r.value.abs_ref()).to_f64()).fold(0.0, f64::max)
    }

    pub fn require_certified(self) -> Result<Self> {
        if self.certified {
            Ok(self)
        } else {
            Err(Error::NonConvergence { bits: self.precision_bits })
        }
    }
}

/// Finds all complex roots of `p` with multiplicity.
///
/// Exact zeros at the origin (vanishing low-order coefficients) are split
/// off before iterating. A returned set with `certified == false` reached
/// the precision ceiling without meeting the certificate.
pub fn find_roots<S: Scalar>(p: &DensePolynomial<S>, cfg: &RootConfig) -> Result<RootSet> {
    if p.is_zero() || p.degree() < 1 {
        return Err(Error::DegreeTooSmall(1));
    }
    let degree = p.degree();
    let at_origin = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let reduced = &p.coeffs()[at_origin..];
    let m = reduced.len() - 1;

    let origin_root = |prec: u32| Root { value: Complex::new(prec), multiplicity: at_origin, residual: 0.0, error: 0.0 };
    if m == 0 {
        return Ok(RootSet {
            roots: vec![origin_root(cfg.start_bits)],
            degree,
            precision_bits: cfg.start_bits,
            cert_tol: cfg.cert_tol,
            certified: true,
        });
    }

    let max_sweeps = cfg.max_sweeps.unwrap_or(60 + 6 * m);
    let mut prec = cfg.start_bits.max(16);
    let mut approx: Option<Vec<Complex>> = None;
    let mut previous_clusters: Option<Vec<Cluster>> = None;
    loop {
        let coeffs: Vec<Complex> = reduced.iter().map(|c| c.to_complex(prec)).collect();
        let full: Vec<Complex> = p.coeffs().iter().map(|c| c.to_complex(prec)).collect();
        let mut zs = match approx.take() {
            Some(prev) => prev.iter().map(|z| Complex::with_val(prec, z)).collect(),
            None => initial_guesses(&coeffs, prec),
        };
        aberth(&coeffs, &mut zs, prec, max_sweeps);
        let diag = diagnose(&coeffs, &full, &zs, prec);
        let clusters = cluster(&zs, &diag.errors);

        let tol = cfg.cert_tol;
        let residual_ok = diag.residuals.iter().all(|&r| r <= tol);
        let forward_ok = clusters
            .iter()
            .filter(|c| c.members.len() == 1)
            .all(|c| diag.errors[c.members[0]] <= tol * diag.moduli[c.members[0]].max(1.0));
        let multiple: Vec<Cluster> = clusters.iter().filter(|c| c.members.len() > 1).cloned().collect();
        let clusters_confirmed =
            multiple.is_empty() || previous_clusters.as_ref().is_some_and(|prev| same_clusters(prev, &multiple));
        let certified = residual_ok && forward_ok && clusters_confirmed;

        if certified || prec.saturating_mul(2) > cfg.max_bits {
            let mut roots: Vec<Root> = clusters.iter().map(|c| c.to_root(&full, &zs, &diag, prec)).collect();
            if at_origin > 0 {
                roots.push(origin_root(prec));
            }
            sort_roots(&mut roots);
            return Ok(RootSet { roots, degree, precision_bits: prec, cert_tol: tol, certified });
        }
        previous_clusters = Some(multiple);
        approx = Some(zs);
        prec *= 2;
    }
}

fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        a.value
            .real()
            .partial_cmp(b.value.real())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.value.imag().partial_cmp(b.value.imag()).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Equally spaced points on a circle about the root centroid, rotated by a
/// golden-ratio fraction of the spacing.
fn initial_guesses(coeffs: &[Complex], prec: u32) -> Vec<Complex> {
    let n = coeffs.len() - 1;
    let lead = &coeffs[n];
    let sub = Complex::with_val(prec, &coeffs[n - 1] / lead);
    let mut centroid = Complex::with_val(prec, -&sub);
    centroid /= n as u32;
    let ratio = Float::with_val(MAG_BITS, sub.abs_ref()).to_f64();
    let geometric = {
        let c0 = Float::with_val(MAG_BITS, coeffs[0].abs_ref());
        let cn = Float::with_val(MAG_BITS, lead.abs_ref());
        let q = Float::with_val(MAG_BITS, c0 / cn);
        Float::with_val(MAG_BITS, q.ln() / n as u32).exp().to_f64()
    };
    let radius = (1.0 + ratio).max(geometric);
    let offset = (5f64.sqrt() - 1.0) / 2.0 * 2.0 * PI / n as f64;
    (0..n)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64 + offset;
            let point = Complex::with_val(prec, (radius * theta.cos(), radius * theta.sin()));
            Complex::with_val(prec, &centroid + &point)
        })
        .collect()
}

fn horner(coeffs: &[Complex], z: &Complex, p: &mut Complex, dp: &mut Complex) {
    let n = coeffs.len() - 1;
    p.assign(&coeffs[n]);
    dp.assign(0);
    for c in coeffs[..n].iter().rev() {
        *dp *= z;
        *dp += &*p;
        *p *= z;
        *p += c;
    }
}

fn horner_abs(abs_coeffs: &[Float], r: &Float) -> Float {
    let n = abs_coeffs.len() - 1;
    let mut acc = abs_coeffs[n].clone();
    for c in abs_coeffs[..n].iter().rev() {
        acc *= r;
        acc += c;
    }
    acc
}

fn modulus(z: &Complex) -> Float {
    Float::with_val(MAG_BITS, z.abs_ref())
}

/// Unit roundoff `2^{1-prec}`.
fn unit_roundoff(prec: u32) -> Float {
    Float::with_val(MAG_BITS, Float::i_exp(1, 1 - prec as i32))
}

fn aberth(coeffs: &[Complex], zs: &mut [Complex], prec: u32, max_sweeps: usize) {
    let n = zs.len();
    let abs_coeffs: Vec<Float> = coeffs.iter().map(modulus).collect();
    let eps = unit_roundoff(prec);
    let noise = Float::with_val(MAG_BITS, &eps * (4 * n as u32));
    let mut done = vec![false; n];
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    let mut sum = Complex::new(prec);
    let mut diff = Complex::new(prec);
    let mut w = Complex::new(prec);
    let mut denom = Complex::new(prec);

    for _ in 0..max_sweeps {
        let mut moved = false;
        for i in 0..n {
            if done[i] {
                continue;
            }
            horner(coeffs, &zs[i], &mut p, &mut dp);
            if p.real().is_zero() && p.imag().is_zero() {
                done[i] = true;
                continue;
            }
            let r = modulus(&zs[i]);
            let bound = Float::with_val(MAG_BITS, horner_abs(&abs_coeffs, &r) * &noise);
            if modulus(&p) <= bound {
                done[i] = true;
                continue;
            }
            if dp.real().is_zero() && dp.imag().is_zero() {
                // stationary point: nudge off it
                let nudge = Float::with_val(prec, Float::with_val(MAG_BITS, &r + 1u32) * Float::with_val(MAG_BITS, eps.sqrt_ref()));
                *zs[i].mut_real() += &nudge;
                moved = true;
                continue;
            }
            // Newton ratio
            w.assign(&p / &dp);
            sum.assign(0);
            for j in 0..n {
                if j == i {
                    continue;
                }
                diff.assign(&zs[i] - &zs[j]);
                if diff.real().is_zero() && diff.imag().is_zero() {
                    continue;
                }
                diff.recip_mut();
                sum += &diff;
            }
            denom.assign(&w * &sum);
            denom.neg_assign();
            denom += 1;
            w /= &denom;
            if !w.real().is_finite() || !w.imag().is_finite() {
                continue;
            }
            zs[i] -= &w;
            moved = true;
            let step = modulus(&w);
            let scale = Float::with_val(MAG_BITS, &noise * modulus(&zs[i]).max(&Float::with_val(MAG_BITS, 1)));
            if step <= scale {
                done[i] = true;
            }
        }
        if !moved {
            break;
        }
    }
}

struct Diagnostics {
    residuals: Vec<f64>,
    errors: Vec<f64>,
    moduli: Vec<f64>,
}

fn residual_at(full: &[Complex], z: &Complex, prec: u32) -> f64 {
    let deg = full.len() - 1;
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    horner(full, z, &mut p, &mut dp);
    let norm1 = full.iter().map(modulus).fold(Float::new(MAG_BITS), |acc, x| acc + x);
    let r = modulus(z).max(&Float::with_val(MAG_BITS, 1));
    let scale = Float::with_val(MAG_BITS, r.pow(deg as u32)) * norm1;
    Float::with_val(MAG_BITS, modulus(&p) / scale).to_f64()
}

fn diagnose(coeffs: &[Complex], full: &[Complex], zs: &[Complex], prec: u32) -> Diagnostics {
    let n = coeffs.len() - 1;
    let abs_coeffs: Vec<Float> = coeffs.iter().map(modulus).collect();
    let eps = unit_roundoff(prec);
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    let mut residuals = Vec::with_capacity(zs.len());
    let mut errors = Vec::with_capacity(zs.len());
    let mut moduli = Vec::with_capacity(zs.len());
    for z in zs {
        horner(coeffs, z, &mut p, &mut dp);
        let r = modulus(z);
        let rounding = Float::with_val(MAG_BITS, horner_abs(&abs_coeffs, &r) * &eps) * (4 * n as u32);
        let dp_abs = modulus(&dp);
        let err = if dp_abs.is_zero() {
            f64::INFINITY
        } else {
            Float::with_val(MAG_BITS, (modulus(&p) + rounding) * n as u32 / dp_abs).to_f64()
        };
        residuals.push(residual_at(full, z, prec));
        errors.push(err);
        moduli.push(r.to_f64());
    }
    Diagnostics { residuals, errors, moduli }
}

#[derive(Clone, Debug)]
struct Cluster {
    members: Vec<usize>,
    centroid: Complex,
    radius: f64,
}

impl Cluster {
    fn to_root(&self, full: &[Complex], zs: &[Complex], diag: &Diagnostics, prec: u32) -> Root {
        let error = if self.members.len() == 1 { diag.errors[self.members[0]] } else { self.radius };
        let residual =
            if self.members.len() == 1 { diag.residuals[self.members[0]] } else { residual_at(full, &self.centroid, prec) };
        let _ = zs;
        Root { value: self.centroid.clone(), multiplicity: self.members.len(), residual, error }
    }
}

/// Groups approximations whose separation does not exceed ten times the
/// larger of their error estimates.
fn cluster(zs: &[Complex], errors: &[f64]) -> Vec<Cluster> {
    let n = zs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = Float::with_val(MAG_BITS, Complex::with_val(MAG_BITS, &zs[i] - &zs[j]).abs_ref()).to_f64();
            if d <= 10.0 * errors[i].max(errors[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups
        .into_values()
        .map(|members| {
            let prec = zs[members[0]].prec().0;
            let mut centroid = Complex::new(prec);
            for &i in &members {
                centroid += &zs[i];
            }
            centroid /= members.len() as u32;
            let radius = members
                .iter()
                .map(|&i| {
                    let d = modulus(&Complex::with_val(prec, &zs[i] - &centroid)).to_f64();
                    d + errors[i]
                })
                .fold(0.0, f64::max);
            Cluster { members, centroid, radius }
        })
        .collect()
}

/// True when every multiple cluster of `current` has a counterpart of the
/// same size in `previous` whose centroid lies within the previous radius.
fn same_clusters(previous: &[Cluster], current: &[Cluster]) -> bool {
    if previous.len() != current.len() {
        return false;
    }
    current.iter().all(|c| {
        previous.iter().any(|p| {
            p.members.len() == c.members.len() && {
                let d = modulus(&Complex::with_val(MAG_BITS, &c.centroid - &p.centroid)).to_f64();
                d <= p.radius.max(c.radius)
            }
        })
    })
}

/// Outcome of the Vieta sum and product checks.
#[derive(Clone, Debug, PartialEq)]
pub struct VietaCheck {
    /// `|Σ r + c_{n-1}/c_n| / Σ max(1,|r|)`.
    pub sum_deviation: f64,
    /// `|Π r - (-1)^n c_0/c_n| / (n Π max(1,|r|))`.
    pub product_deviation: f64,
    pub tolerance: f64,
}

impl VietaCheck {
    pub fn passed(&self) -> bool {
        self.sum_deviation <= self.tolerance && self.product_deviation <= self.tolerance
    }
}

/// Compares the roots against the polynomial's two outer coefficients at
/// relative tolerance `10 · cert_tol`.
pub fn vieta_check<S: Scalar>(p: &DensePolynomial<S>, roots: &RootSet) -> VietaCheck {
    let prec = roots.precision_bits;
    let n = p.degree();
    let coeffs = p.to_complex_coeffs(prec);
    let lead = &coeffs[n];
    let values = roots.values();

    let mut sum = Complex::new(prec);
    let mut prod = Complex::with_val(prec, 1);
    let mut sum_scale = Float::new(MAG_BITS);
    let mut prod_scale = Float::with_val(MAG_BITS, 1);
    let one = Float::with_val(MAG_BITS, 1);
    for v in &values {
        sum += v;
        prod *= v;
        let m = modulus(v).max(&one);
        sum_scale += &m;
        prod_scale *= &m;
    }
    let expected_sum = Complex::with_val(prec, -Complex::with_val(prec, &coeffs[n - 1] / lead));
    let mut expected_prod = Complex::with_val(prec, &coeffs[0] / lead);
    if n % 2 == 1 {
        expected_prod = Complex::with_val(prec, -&expected_prod);
    }
    let sum_dev = Float::with_val(MAG_BITS, modulus(&Complex::with_val(prec, &sum - &expected_sum)) / &sum_scale);
    let prod_dev = Float::with_val(
        MAG_BITS,
        modulus(&Complex::with_val(prec, &prod - &expected_prod)) / (prod_scale * n as u32),
    );
    VietaCheck {
        sum_deviation: sum_dev.to_f64(),
        product_deviation: prod_dev.to_f64(),
        tolerance: 10.0 * roots.cert_tol,
    }
}

/// Matches each root with the conjugate of another, greedily by distance.
/// Returns whether every match lies within `10 · cert_tol · max(1,|r|)` and
/// the largest scaled mismatch.
pub fn conjugate_closure(roots: &RootSet) -> (bool, f64) {
    let values = roots.values();
    let prec = roots.precision_bits;
    let conj: Vec<Complex> = values.iter().map(|v| Complex::with_val(prec, v.conj_ref())).collect();
    let mut used = vec![false; values.len()];
    let mut worst = 0.0f64;
    for v in &values {
        let mut best: Option<(usize, f64)> = None;
        for (j, c) in conj.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = modulus(&Complex::with_val(prec, v - c)).to_f64();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.expect("same length");
        used[j] = true;
        let scaled = d / modulus(v).to_f64().max(1.0);
        worst = worst.max(scaled);
    }
    (worst <= 10.0 * roots.cert_tol, worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Cplx, Real};
    use rug::Rational;

    fn poly(v: &[(i64, i64)]) -> DensePolynomial<Rational> {
        DensePolynomial::from_ratios(v)
    }

    #[test]
    fn unit_imaginary_pair() {
        let rs = find_roots(&poly(&[(1, 1), (0, 1), (1, 1)]), &RootConfig::default()).unwrap();
        assert!(rs.certified);
        assert_eq!(rs.count_with_multiplicity(), 2);
        let mut ims: Vec<f64> = rs.roots.iter().map(Root::im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-30 && (ims[1] - 1.0).abs() < 1e-30);
        assert!(rs.roots.iter().all(|r| r.re().abs() < 1e-30));
    }

    #[test]
    fn quadratic_formula() {
        let rs = find_roots(&poly(&[(1, 3), (1, 1), (1, 1)]), &RootConfig::default()).unwrap();
        let expect_im = 1.0 / (2.0 * 3f64.sqrt());
        for r in &rs.roots {
            assert!((r.re() + 0.5).abs() < 1e-15);
            assert!((r.im().abs() - expect_im).abs() < 1e-15);
            assert!(r.residual <= 1e-30);
        }
        let half = Float::with_val(256, -0.5);
        for r in &rs.roots {
            let d = Float::with_val(256, r.value.real() - &half).abs();
            assert!(d < 1e-35);
        }
    }

    #[test]
    fn monomial_is_one_multiple_root() {
        let rs = find_roots(&poly(&[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1)]), &RootConfig::default()).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert_eq!(rs.roots[0].multiplicity, 5);
        assert!(rs.roots[0].value.real().is_zero());
    }

    #[test]
    fn double_root_away_from_origin_is_declared() {
        // (s - 1/3)^2 (s + 2)
        let p = poly(&[(1, 9), (-2, 3), (1, 1)]).mul(&poly(&[(2, 1), (1, 1)]));
        let p = p.mul(&poly(&[(1, 1)]));
        let rs = find_roots(&p, &RootConfig::default()).unwrap();
        assert!(rs.certified, "{rs:?}");
        assert_eq!(rs.count_with_multiplicity(), 3);
        let double = rs.roots.iter().find(|r| r.multiplicity == 2).expect("double root");
        assert!((double.re() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_constants() {
        assert_eq!(find_roots(&poly(&[(3, 1)]), &RootConfig::default()).unwrap_err(), Error::DegreeTooSmall(1));
    }

    #[test]
    fn linear_root() {
        let rs = find_roots(&poly(&[(3, 1), (2, 1)]), &RootConfig::default()).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert!((rs.roots[0].re() + 1.5).abs() < 1e-30);
    }

    #[test]
    fn vieta_and_conjugates_on_wilkinson_like() {
        let mut p = poly(&[(1, 1)]);
        for k in 1..=12 {
            p = p.mul(&poly(&[(-k, 1), (1, 1)]));
        }
        let rs = find_roots(&p, &RootConfig::default()).unwrap();
        assert!(rs.certified);
        assert!(vieta_check(&p, &rs).passed(), "{:?}", vieta_check(&p, &rs));
        assert!(conjugate_closure(&rs).0);
        for (k, r) in rs.roots.iter().enumerate() {
            assert!((r.re() - (k + 1) as f64).abs() < 1e-25);
        }
    }

    #[test]
    fn high_precision_real_and_complex_coefficients() {
        let prec = 200;
        let p = DensePolynomial::from_coeffs(vec![Real::new(prec, 2.0), Real::new(prec, -3.0), Real::new(prec, 1.0)]);
        let rs = find_roots(&p, &RootConfig::default()).unwrap();
        let mut re: Vec<f64> = rs.roots.iter().map(Root::re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] - 1.0).abs() < 1e-30 && (re[1] - 2.0).abs() < 1e-30);

        // (s - i)(s - 1 - 2i) = s^2 - (1 + 3i) s + (-2 + i)
        let q = DensePolynomial::from_coeffs(vec![
            Cplx::new(prec, -2.0, 1.0),
            Cplx::new(prec, -1.0, -3.0),
            Cplx::new(prec, 1.0, 0.0),
        ]);
        let rs = find_roots(&q, &RootConfig::default()).unwrap();
        assert!(rs.certified);
        assert!(rs.roots.iter().all(|r| r.im() > 0.5));
    }

    #[test]
    fn doubling_precision_moves_roots_less_than_error() {
        let p = poly(&[(1, 42), (0, 1), (-1, 2), (0, 1), (5, 2), (-3, 1), (1, 1)]);
        let a = find_roots(&p, &RootConfig { start_bits: 128, max_bits: 128, ..Default::default() }).unwrap();
        let b = find_roots(&p, &RootConfig { start_bits: 256, max_bits: 256, ..Default::default() }).unwrap();
        for ra in &a.roots {
            let nearest = b
                .roots
                .iter()
                .map(|rb| modulus(&Complex::with_val(256, &ra.value - &rb.value)).to_f64())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= ra.error, "moved {nearest:e} > error {:e}", ra.error);
        }
    }

    #[test]
    fn bernoulli_six_zeros_are_symmetric_about_one_half() {
        let p = poly(&[(1, 42), (0, 1), (-1, 2), (0, 1), (5, 2), (-3, 1), (1, 1)]);
        let rs = find_roots(&p, &RootConfig::with_bits(256)).unwrap();
        let values = rs.values();
        for v in &values {
            // s -> 1 - conj(s)
            let mirrored = Complex::with_val(256, (Float::with_val(256, 1 - v.real()), v.imag()));
            let nearest = values
                .iter()
                .map(|w| modulus(&Complex::with_val(256, &mirrored - w)).to_f64())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-30);
        }
    }
}
