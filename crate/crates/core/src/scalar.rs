//! The scalar abstraction shared by matrices, polynomials and the kernel
//! solver.
//!
//! Everything downstream is written against [`Scalar`], a thin layer over
//! `num_traits::Num` that adds an embedding of the rationals and a notion of
//! "negligible" so that the same code runs exactly over `BigRational`,
//! `QuadScalar` and Gaussian rationals, or approximately over `f32`/`f64`.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Gaussian rational `a + b·i`, used for complex normal-form coordinates.
pub type GaussianRational = Complex<Rational>;

pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + PartialEq + Send + Sync + 'static {
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    /// Zero test used by every equality check in the crate. Exact types use
    /// `is_zero`; floating types accept a small absolute tolerance.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// Square-free radicand of the ambient quadratic field, `0` when the
    /// value is rational.
    fn radicand(&self) -> u64 {
        0
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for GaussianRational {
    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.clone(), Rational::zero())
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
}

impl Scalar for f32 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-4
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `p`, `-p`, `p/q` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// LaTeX rendering of a rational: `\frac{1}{2}`, `-\frac{3}{4}`, `5`.
pub fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
}
