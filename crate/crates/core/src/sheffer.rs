//! Sheffer, Appell and cognate polynomial sequences.

use rug::{Complex, Rational};

use crate::error::{Error, Result};
use crate::riordan::{cognate_map, group_mul, RiordanPair};
use crate::scalar::{Cplx, Scalar};
use crate::series::{named, Series};

/// A polynomial in `s`; `coeffs[k]` multiplies `s^k`. Trailing zeros are
/// trimmed on construction, so the last stored coefficient is the leading one.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePolynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> DensePolynomial<S> {
    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        DensePolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn eval(&self, s: &S) -> Option<S> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for c in it {
            acc = acc.mul(s).add(c);
        }
        Some(acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let Some(like) = self.coeffs.first().or(other.coeffs.first()) else {
            return self.clone();
        };
        let zero = like.zero_like();
        let coeffs = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&zero).add(other.coeffs.get(k).unwrap_or(&zero)))
            .collect();
        DensePolynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&DensePolynomial { coeffs: other.coeffs.iter().map(Scalar::neg).collect() })
    }

    pub fn scale(&self, factor: &S) -> Self {
        DensePolynomial::from_coeffs(self.coeffs.iter().map(|c| c.mul(factor)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return DensePolynomial { coeffs: Vec::new() };
        }
        let like = &self.coeffs[0];
        let mut out = vec![like.zero_like(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        DensePolynomial::from_coeffs(out)
    }

    /// `P(-s)`.
    pub fn negate_arg(&self) -> Self {
        DensePolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        }
    }

    /// `P(a s)`.
    pub fn scale_arg(&self, a: &S) -> Self {
        let Some(like) = self.coeffs.first() else {
            return self.clone();
        };
        let mut power = like.one_like();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.mul(&power));
            power = power.mul(a);
        }
        DensePolynomial::from_coeffs(coeffs)
    }

    /// Taylor shift `P(s + a)`.
    pub fn shift(&self, a: &S) -> Self {
        let n = self.coeffs.len();
        let mut c = self.coeffs.clone();
        // repeated synthetic division by (s - (-a))
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].mul(a);
                c[j] = c[j].add(&t);
            }
        }
        DensePolynomial::from_coeffs(c)
    }

    pub fn to_complex_coeffs(&self, prec: u32) -> Vec<Complex> {
        self.coeffs.iter().map(|c| c.to_complex(prec)).collect()
    }
}

impl DensePolynomial<Cplx> {
    /// Polynomial with complex-conjugated coefficients.
    pub fn conj(&self) -> Self {
        DensePolynomial { coeffs: self.coeffs.iter().map(Cplx::conj).collect() }
    }
}

impl DensePolynomial<Rational> {
    pub fn from_ratios(values: &[(i64, i64)]) -> Self {
        DensePolynomial::from_coeffs(values.iter().map(|&(n, d)| Rational::from((n, d))).collect())
    }
}

/// A labelled admissible pair `(g, f)` generating `Σ G_n(s) z^n/n! = g e^{s f}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShefferPair<S: Scalar> {
    pub pair: RiordanPair<S>,
    pub label: String,
}

impl<S: Scalar> ShefferPair<S> {
    pub fn new(label: impl Into<String>, pair: RiordanPair<S>) -> Self {
        ShefferPair { pair, label: label.into() }
    }

    pub fn order(&self) -> usize {
        self.pair.order()
    }

    /// The pair `(f'/g, f)` one order lower.
    pub fn cognate(&self) -> Result<Self> {
        Ok(ShefferPair { pair: cognate_map(&self.pair)?, label: format!("{}-cognate", self.label) })
    }

    pub fn is_appell(&self) -> bool {
        self.pair.f().is_linear()
    }
}

impl ShefferPair<Rational> {
    /// `(1, z)`: the monomials `s^n`.
    pub fn monomials(order: usize) -> Self {
        ShefferPair::new("monomials", RiordanPair::identity(order, &Rational::new()))
    }

    /// `(z/(e^z - 1), z)`.
    pub fn bernoulli(order: usize) -> Self {
        let g = named::expm1_over_z(order).reciprocal().expect("constant term 1");
        Self::appell("bernoulli", g, 1)
    }

    /// `((e^z - 1)/z, z)`: the cognate sequence of the Bernoulli polynomials.
    pub fn bernoulli_cognate(order: usize) -> Self {
        Self::appell("bernoulli-cognate", named::expm1_over_z(order), 1)
    }

    /// `(2/(e^z + 1), z)`.
    pub fn euler(order: usize) -> Self {
        let like = Rational::new();
        let denom = named::exp(order).add(&Series::one(order, &like)).expect("same order");
        let g = denom.reciprocal().expect("constant term 2").scale(&Rational::from(2));
        Self::appell("euler", g, 1)
    }

    /// `(e^{-z^2}, 2z)`.
    pub fn hermite(order: usize) -> Self {
        let minus_z2 = Series::monomial(order, 2, Rational::from(-1));
        let g = minus_z2.exp().expect("zero constant term");
        Self::appell("hermite", g, 2)
    }

    /// `(g, a z)`.
    pub fn appell(label: &str, g: Series<Rational>, a: i64) -> Self {
        let order = g.order();
        let f = Series::monomial(order, 1, Rational::from(a));
        ShefferPair::new(label, RiordanPair::new(g, f).expect("Appell pairs with g(0) != 0 are admissible"))
    }

    /// Looks up a classical pair by name.
    pub fn named(name: &str, order: usize) -> Option<Self> {
        match name {
            "bernoulli" => Some(Self::bernoulli(order)),
            "bernoulli-cognate" => Some(Self::bernoulli_cognate(order)),
            "euler" => Some(Self::euler(order)),
            "hermite" => Some(Self::hermite(order)),
            "monomials" | "1,z" => Some(Self::monomials(order)),
            _ => None,
        }
    }
}

/// `G_n(s)`: row `n` of the materialized Riordan array.
pub fn sheffer_poly<S: Scalar>(p: &ShefferPair<S>, n: usize) -> Result<DensePolynomial<S>> {
    Ok(DensePolynomial::from_coeffs(p.pair.row(n)?))
}

/// `G_n^c(s)`, the `n`-th polynomial of the cognate sequence.
pub fn cognate_poly<S: Scalar>(p: &ShefferPair<S>, n: usize) -> Result<DensePolynomial<S>> {
    if n + 1 > p.order() {
        return Err(Error::OrderTooSmall { needed: n + 1, available: p.order() });
    }
    sheffer_poly(&p.cognate()?, n)
}

/// `Σ_k a_{n,k} B_k(s)`: the umbral composition of the sequence of `a`
/// with that of `b`.
pub fn umbral_compose<S: Scalar>(a: &ShefferPair<S>, b: &ShefferPair<S>, n: usize) -> Result<DensePolynomial<S>> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: b.order() });
    }
    let row = a.pair.row(n)?;
    let mut acc = DensePolynomial { coeffs: Vec::new() };
    for (k, coeff) in row.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        acc = acc.add(&sheffer_poly(b, k)?.scale(coeff));
    }
    Ok(acc)
}

/// The sequence `G_n(a s)` of an Appell pair `(g, c z)`, realized as the
/// pair `(g, a c z)`.
pub fn scale_variable<S: Scalar>(p: &ShefferPair<S>, a: &S) -> Result<ShefferPair<S>> {
    if a.is_zero() {
        return Err(Error::ZeroScale);
    }
    if !p.is_appell() {
        return Err(Error::NotAppell);
    }
    let pair = RiordanPair::new(p.pair.g().clone(), p.pair.f().scale(a))?;
    Ok(ShefferPair::new(format!("{}(s*{a})", p.label), pair))
}

/// Sheffer polynomial of the product pair; equals [`umbral_compose`].
pub fn product_poly<S: Scalar>(a: &ShefferPair<S>, b: &ShefferPair<S>, n: usize) -> Result<DensePolynomial<S>> {
    let pair = group_mul(&a.pair, &b.pair)?;
    sheffer_poly(&ShefferPair::new("product", pair), n)
}
