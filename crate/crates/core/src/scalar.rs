//! Coefficient fields.
//!
//! Exact work happens over [`rug::Rational`], which GMP keeps in lowest
//! terms with a positive denominator. [`Real`] and [`Cplx`] are
//! high-precision floating fields that carry their precision; binary
//! operations on two values of different precision round to the smaller.

use std::fmt;

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

/// A commutative field of series and polynomial coefficients.
///
/// Constructors take `&self` as a template so that precision-carrying
/// fields can produce constants at the right precision.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;

    fn one_like(&self) -> Self {
        self.from_rational_like(&Rational::from(1))
    }

    fn from_rational_like(&self, value: &Rational) -> Self;

    fn from_i64_like(&self, value: i64) -> Self {
        self.from_rational_like(&Rational::from(value))
    }

    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// `None` on division by zero.
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Self;

    fn mul_i64(&self, k: i64) -> Self {
        self.mul(&self.from_i64_like(k))
    }

    fn div_i64(&self, k: i64) -> Option<Self> {
        self.div(&self.from_i64_like(k))
    }

    /// Rounds into a complex number with `prec` bits per component.
    fn to_complex(&self, prec: u32) -> Complex;

    /// True when arithmetic in this field is exact.
    fn is_exact() -> bool;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }

    fn from_rational_like(&self, value: &Rational) -> Self {
        value.clone()
    }

    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        if Scalar::is_zero(rhs) {
            None
        } else {
            Some(Rational::from(self / rhs))
        }
    }

    fn neg(&self) -> Self {
        Rational::from(-self)
    }

    fn mul_i64(&self, k: i64) -> Self {
        Rational::from(self * k)
    }

    fn to_complex(&self, prec: u32) -> Complex {
        Complex::with_val(prec, (self, 0))
    }

    fn is_exact() -> bool {
        true
    }
}

/// High-precision real number.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Real(pub Float);

impl Real {
    pub fn new(prec: u32, value: f64) -> Self {
        Real(Float::with_val(prec, value))
    }

    pub fn from_rational(prec: u32, value: &Rational) -> Self {
        Real(Float::with_val(prec, value))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn join_prec(&self, rhs: &Self) -> u32 {
        self.prec().min(rhs.prec())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Scalar for Real {
    fn zero_like(&self) -> Self {
        Real(Float::new(self.prec()))
    }

    fn from_rational_like(&self, value: &Rational) -> Self {
        Real::from_rational(self.prec(), value)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Real(Float::with_val(self.join_prec(rhs), &self.0 + &rhs.0))
    }

    fn sub(&self, rhs: &Self) -> Self {
        Real(Float::with_val(self.join_prec(rhs), &self.0 - &rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        Real(Float::with_val(self.join_prec(rhs), &self.0 * &rhs.0))
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        if rhs.0.is_zero() {
            None
        } else {
            Some(Real(Float::with_val(self.join_prec(rhs), &self.0 / &rhs.0)))
        }
    }

    fn neg(&self) -> Self {
        Real(Float::with_val(self.prec(), -&self.0))
    }

    fn to_complex(&self, prec: u32) -> Complex {
        Complex::with_val(prec, (&self.0, 0))
    }

    fn is_exact() -> bool {
        false
    }
}

/// High-precision complex number.
#[derive(Clone, Debug, PartialEq)]
pub struct Cplx(pub Complex);

impl Cplx {
    pub fn new(prec: u32, re: f64, im: f64) -> Self {
        Cplx(Complex::with_val(prec, (re, im)))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0.min(self.0.prec().1)
    }

    pub fn conj(&self) -> Self {
        Cplx(self.0.clone().conj())
    }

    fn join_prec(&self, rhs: &Self) -> u32 {
        self.prec().min(rhs.prec())
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Scalar for Cplx {
    fn zero_like(&self) -> Self {
        Cplx(Complex::new(self.prec()))
    }

    fn from_rational_like(&self, value: &Rational) -> Self {
        Cplx(Complex::with_val(self.prec(), (value, 0)))
    }

    fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Cplx(Complex::with_val(self.join_prec(rhs), &self.0 + &rhs.0))
    }

    fn sub(&self, rhs: &Self) -> Self {
        Cplx(Complex::with_val(self.join_prec(rhs), &self.0 - &rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        Cplx(Complex::with_val(self.join_prec(rhs), &self.0 * &rhs.0))
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        if Scalar::is_zero(rhs) {
            None
        } else {
            Some(Cplx(Complex::with_val(self.join_prec(rhs), &self.0 / &rhs.0)))
        }
    }

    fn neg(&self) -> Self {
        Cplx(Complex::with_val(self.prec(), -&self.0))
    }

    fn to_complex(&self, prec: u32) -> Complex {
        Complex::with_val(prec, &self.0)
    }

    fn is_exact() -> bool {
        false
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-1.25"` or
/// `"2.5e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = || Error::Parse(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if s.contains('/') {
        return s.parse::<Rational>().map_err(|_| err());
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: Integer = all_digits.parse().map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = Integer::from(10);
    let mut value = Rational::from(numer);
    if scale >= 0 {
        value *= Rational::from(ten.pow(scale as u32));
    } else {
        value /= Rational::from(ten.pow((-scale) as u32));
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let a = Rational::from((6, -8));
        assert_eq!(*a.numer(), -3);
        assert_eq!(*a.denom(), 4);
        let b = Scalar::mul(&a, &Rational::from((4, 3)));
        assert_eq!(b, Rational::from(-1));
    }

    #[test]
    fn mixing_precisions_takes_the_smaller() {
        let a = Real::new(64, 1.5);
        let b = Real::new(256, 2.0);
        assert_eq!(Scalar::add(&a, &b).prec(), 64);
        assert_eq!(Scalar::mul(&b, &a).prec(), 64);
        let c = Cplx::new(100, 1.0, 1.0);
        let d = Cplx::new(300, 0.0, 2.0);
        assert_eq!(Scalar::sub(&d, &c).prec(), 100);
    }

    #[test]
    fn division_by_zero_is_none() {
        assert!(Scalar::div(&Rational::from(1), &Rational::new()).is_none());
        assert!(Scalar::div(&Real::new(64, 1.0), &Real::new(64, 0.0)).is_none());
    }

    #[test]
    fn parses_decimal_and_fraction_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::from((3, 2)));
        assert_eq!(parse_rational("-1.25").unwrap(), Rational::from((-5, 4)));
        assert_eq!(parse_rational("7").unwrap(), Rational::from(7));
        assert_eq!(parse_rational("2.5e-3").unwrap(), Rational::from((1, 400)));
        assert_eq!(parse_rational("1e2").unwrap(), Rational::from(100));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
