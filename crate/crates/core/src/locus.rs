//! Zero-set classification and the symmetry checks for critical lines.

use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};
use crate::roots::{find_roots, RootConfig, RootSet};
use crate::scalar::{Cplx, Scalar};
use crate::series::{named, Series};
use crate::sheffer::{DensePolynomial, ShefferPair};

const MAG_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroClass {
    Real,
    OnLine,
    Other,
}

impl ZeroClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroClass::Real => "real",
            ZeroClass::OnLine => "on_line",
            ZeroClass::Other => "other",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifiedRoot {
    pub value: Complex,
    pub multiplicity: usize,
    pub class: ZeroClass,
    /// Set on on-line roots that are also within the real tolerance.
    pub also_real: bool,
    /// `|Re r - c|`.
    pub line_distance: f64,
}

#[derive(Clone, Debug)]
pub struct LocusReport {
    pub line_c: Rational,
    pub line_tol: f64,
    pub real_tol: f64,
    pub roots: Vec<ClassifiedRoot>,
}

impl LocusReport {
    fn count(&self, class: ZeroClass) -> usize {
        self.roots.iter().filter(|r| r.class == class).map(|r| r.multiplicity).sum()
    }

    pub fn on_line(&self) -> usize {
        self.count(ZeroClass::OnLine)
    }

    pub fn real(&self) -> usize {
        self.count(ZeroClass::Real)
    }

    pub fn other(&self) -> usize {
        self.count(ZeroClass::Other)
    }

    pub fn total(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn of_class(&self, class: ZeroClass) -> impl Iterator<Item = &ClassifiedRoot> {
        self.roots.iter().filter(move |r| r.class == class)
    }
}

/// `1e-12 · (1 + max|r|)`.
pub fn default_tol(roots: &RootSet) -> f64 {
    1e-12 * (1.0 + roots.max_modulus())
}

/// Partitions roots into on-line (`|Re r - c| ≤ tol`), real (`|Im r| ≤ tol`)
/// and other. A root satisfying both is on-line with `also_real` set.
pub fn classify(roots: &RootSet, c: &Rational, tol: f64) -> Result<LocusReport> {
    classify_with(roots, c, tol, tol)
}

/// As [`classify`] with separate tolerances for the line and the real axis.
pub fn classify_with(roots: &RootSet, c: &Rational, line_tol: f64, real_tol: f64) -> Result<LocusReport> {
    if !(line_tol > 0.0 && real_tol > 0.0) {
        return Err(Error::Precondition(format!("tolerances must be positive, got {line_tol} and {real_tol}")));
    }
    let classified = roots
        .roots
        .iter()
        .map(|r| {
            let prec = r.value.prec().0;
            let dist = Float::with_val(prec, r.value.real() - c).abs().to_f64();
            let imag = r.value.imag().to_f64().abs();
            let is_real = imag <= real_tol;
            let (class, also_real) = if dist <= line_tol {
                (ZeroClass::OnLine, is_real)
            } else if is_real {
                (ZeroClass::Real, false)
            } else {
                (ZeroClass::Other, false)
            };
            ClassifiedRoot { value: r.value.clone(), multiplicity: r.multiplicity, class, also_real, line_distance: dist }
        })
        .collect();
    Ok(LocusReport { line_c: c.clone(), line_tol, real_tol, roots: classified })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryCheck {
    pub symmetric: bool,
    pub max_mismatch: f64,
}

fn lex_cmp(a: &Complex, b: &Complex) -> std::cmp::Ordering {
    a.real()
        .partial_cmp(b.real())
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(a.imag().partial_cmp(b.imag()).unwrap_or(std::cmp::Ordering::Equal))
}

/// Tests invariance of the root multiset under `s ↦ -m - s`, pairing each
/// root greedily with the nearest unused reflected root.
pub fn check_line_symmetry(roots: &RootSet, m: &Rational, tol: f64) -> SymmetryCheck {
    let mut values = roots.values();
    values.sort_by(lex_cmp);
    let reflected: Vec<Complex> = values
        .iter()
        .map(|v| {
            let prec = v.prec().0;
            let re = Float::with_val(prec, -Float::with_val(prec, v.real() + m));
            let im = Float::with_val(prec, -v.imag());
            Complex::with_val(prec, (re, im))
        })
        .collect();
    let mut used = vec![false; reflected.len()];
    let mut worst = 0.0f64;
    for v in &values {
        let mut best: Option<(usize, f64)> = None;
        for (j, w) in reflected.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = Float::with_val(MAG_BITS, Complex::with_val(v.prec().0, v - w).abs_ref()).to_f64();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, d)) = best {
            used[j] = true;
            worst = worst.max(d);
        }
    }
    SymmetryCheck { symmetric: worst <= tol, max_mismatch: worst }
}

/// Coefficientwise test of `G(-s) = (-1)^n G(s - m)`.
pub fn check_reflection_identity<S: Scalar>(p: &DensePolynomial<S>, m: &S) -> bool {
    let n = p.degree();
    let shifted = p.shift(&m.neg());
    let rhs = if n % 2 == 1 { shifted.negate_all() } else { shifted };
    p.negate_arg() == rhs
}

trait NegateAll {
    fn negate_all(&self) -> Self;
}

impl<S: Scalar> NegateAll for DensePolynomial<S> {
    fn negate_all(&self) -> Self {
        DensePolynomial::from_coeffs(self.coeffs().iter().map(Scalar::neg).collect())
    }
}

/// `2 g'(0) / g(0)`, the exponential rate for which
/// `g(z) = g(-z) e^{rate z}` can hold.
pub fn appell_rate<S: Scalar>(g: &Series<S>) -> Result<S> {
    let g0 = g.coeff(0);
    if g0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if g.order() < 2 {
        return Ok(g0.zero_like());
    }
    Ok(g.coeff(1).mul_i64(2).div(g0).expect("nonzero"))
}

/// Checks `g(z) = g(-z) e^{rate z}` through the truncation order with
/// `rate = 2 g'(0)/g(0)`.
pub fn check_appell_condition<S: Scalar>(g: &Series<S>) -> Result<bool> {
    let rate = appell_rate(g)?;
    let rhs = g.negate_arg().mul(&Series::exp_linear(g.order(), &rate))?;
    Ok(g.sub(&rhs)?.is_zero())
}

/// Line data for an Appell pair `(g, a z)` whose `g` passes
/// [`check_appell_condition`].
#[derive(Clone, Debug, PartialEq)]
pub struct AppellLine<S> {
    /// `m` in `G_n(-s) = (-1)^n G_n(s - m)`; equals `rate / a`.
    pub reflection_shift: S,
    /// `Re s = -m/2`.
    pub line: S,
    /// `g'(0)`.
    pub derivative_at_zero: S,
    /// `g'(0)/g(0)`.
    pub log_derivative: S,
}

pub fn appell_line<S: Scalar>(pair: &ShefferPair<S>) -> Result<AppellLine<S>> {
    if !pair.is_appell() {
        return Err(Error::NotAppell);
    }
    let g = pair.pair.g();
    let a = pair.pair.f().coeff(1);
    let rate = appell_rate(g)?;
    let m = rate.div(a).ok_or(Error::ZeroLinearCoefficient)?;
    let line = m.neg().div_i64(2).expect("nonzero");
    let derivative_at_zero = if g.order() > 1 { g.coeff(1).clone() } else { g.coeff(0).zero_like() };
    let log_derivative = derivative_at_zero.div(g.coeff(0)).expect("nonzero");
    Ok(AppellLine { reflection_shift: m, line, derivative_at_zero, log_derivative })
}

/// `g = scale · 2ρ(z)(1 + tanh(kz))` with `ρ` even and `ρ(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TanhDecomposition {
    pub rho: Series<Rational>,
    pub k: Rational,
    /// `g(0)/2`.
    pub scale: Rational,
}

pub fn tanh_decompose(g: &Series<Rational>) -> Result<TanhDecomposition> {
    let g0 = g.coeff(0).clone();
    if Scalar::is_zero(&g0) {
        return Err(Error::ZeroConstantTerm);
    }
    let order = g.order();
    let scale = Rational::from(&g0 / 2u32);
    let normalized = g.scale(&(2u32 / Rational::from(&g0)));
    let rho = normalized.even_part().scale(&Rational::from((1, 2)));
    let k = if order > 1 { Rational::from(normalized.coeff(1) / 2u32) } else { Rational::new() };
    let like = Rational::new();
    let one_plus_tanh = Series::one(order, &like).add(&named::tanh_linear(order, &k))?;
    let rebuilt = rho.mul(&one_plus_tanh)?.scale(&Rational::from(&scale * 2u32));
    if rebuilt != *g {
        return Err(Error::TanhDecomposition("reconstruction differs from the input series"));
    }
    Ok(TanhDecomposition { rho, k, scale })
}

#[derive(Clone, Debug)]
pub struct HalfPlaneSum {
    pub all_real: bool,
    pub max_abs_imag: f64,
    pub roots: RootSet,
}

/// For `G` with every zero in the open upper half-plane, checks that
/// `G + Ḡ` has only real zeros within `tol`.
pub fn upper_halfplane_sum_test(g: &DensePolynomial<Cplx>, cfg: &RootConfig, tol: f64) -> Result<HalfPlaneSum> {
    let own = find_roots(g, cfg)?.require_certified()?;
    if let Some(bad) = own.roots.iter().find(|r| r.im() - r.error <= 0.0) {
        return Err(Error::Precondition(format!(
            "zero {} + {}i is not in the open upper half-plane",
            bad.re(),
            bad.im()
        )));
    }
    let sum = g.add(&g.conj());
    let roots = find_roots(&sum, cfg)?.require_certified()?;
    let max_abs_imag = roots.roots.iter().map(|r| r.im().abs()).fold(0.0, f64::max);
    Ok(HalfPlaneSum { all_real: max_abs_imag <= tol, max_abs_imag, roots })
}
