//! Elements of a real quadratic field `Q(√d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{format_rational, latex_rational, parse_rational, Rational, Scalar};

/// `a + b·√d` with `d` square-free.
///
/// Values with `b = 0` are canonicalized to `d = 0`, so equality is
/// structural. Arithmetic between two irrational values with different
/// radicands panics; matrix-level code checks compatibility first and
/// reports [`Error::IncompatibleRadicals`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: u64,
}

pub fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self, Error> {
        if b.is_zero() {
            return Ok(Self::rational(a));
        }
        if d == 1 {
            return Ok(Self::rational(a + b));
        }
        if !is_square_free(d) {
            return Err(Error::NotSquareFree(d));
        }
        Ok(Self { a, b, d })
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), d: 0 }
    }

    /// `√d` itself.
    pub fn sqrt(d: u64) -> Result<Self, Error> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    /// Common radicand of two values, `None` when both are irrational over
    /// different fields.
    pub fn common_radicand(&self, other: &Self) -> Option<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Some(d),
            (d1, d2) if d1 == d2 => Some(d1),
            _ => None,
        }
    }

    fn ambient(&self, other: &Self) -> u64 {
        self.common_radicand(other).unwrap_or_else(|| {
            panic!("incompatible radicals: sqrt({}) and sqrt({})", self.d, other.d)
        })
    }

    fn canonical(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            Self::rational(a)
        } else {
            Self { a, b, d }
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    pub fn to_latex(&self) -> String {
        if self.is_rational() {
            return latex_rational(&self.a);
        }
        let radical = format!("\\sqrt{{{}}}", self.d);
        let b_abs = self.b.abs();
        let b_part = if b_abs.is_one() {
            radical
        } else if b_abs.is_integer() {
            format!("{}{}", b_abs.numer(), radical)
        } else {
            format!("\\frac{{{}{}}}{{{}}}", show_coeff(b_abs.numer()), radical, b_abs.denom())
        };
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            if self.b.is_negative() {
                format!("-{b_part}")
            } else {
                b_part
            }
        } else {
            format!("{} {sign} {b_part}", latex_rational(&self.a))
        }
    }
}

fn show_coeff(n: &BigInt) -> String {
    if n.is_one() {
        String::new()
    } else {
        n.to_string()
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rational(&self.a));
        }
        if self.a.is_zero() {
            write!(f, "{}*sqrt({})", format_rational(&self.b), self.d)
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {}*sqrt({})", format_rational(&self.a), format_rational(&self.b.abs()), self.d)
        }
    }
}

impl std::str::FromStr for QuadScalar {
    type Err = Error;

    /// Accepts `r`, `r*sqrt(d)` and `r + s*sqrt(d)` / `r - s*sqrt(d)`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse { line: 0, message: format!("invalid quadratic scalar `{s}`") };
        let s = s.trim();
        let surd = |t: &str| -> Result<(Rational, u64), Error> {
            let t = t.trim();
            let (coeff, rest) = match t.split_once("sqrt(") {
                Some((c, r)) => (c.trim().trim_end_matches('*').trim(), r),
                None => return Err(bad()),
            };
            let d: u64 = rest.trim_end_matches(')').trim().parse().map_err(|_| bad())?;
            let coeff = match coeff {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                c => parse_rational(c).ok_or_else(bad)?,
            };
            Ok((coeff, d))
        };
        if !s.contains("sqrt") {
            return parse_rational(s).map(Self::rational).ok_or_else(bad);
        }
        // split "a + b*sqrt(d)" at the last top-level sign
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .find(|&i| !s[..i].contains("sqrt") && s[..i].trim_end().chars().last().map_or(false, |c| c != '*' && c != '/'));
        match split {
            Some(i) => {
                let a = parse_rational(&s[..i]).ok_or_else(bad)?;
                let (b, d) = surd(&s[i..].replace(' ', ""))?;
                Self::new(a, b, d)
            }
            None => {
                let (b, d) = surd(s)?;
                Self::new(Rational::zero(), b, d)
            }
        }
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical ordering by `(d, a, b)`; used for deterministic sorting, not as
/// the real-number order.
impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.d, &self.a, &self.b).cmp(&(other.d, &other.a, &other.b))
    }
}

impl From<Rational> for QuadScalar {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Add for QuadScalar {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let d = self.ambient(&rhs);
        Self::canonical(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadScalar {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let d = self.ambient(&rhs);
        Self::canonical(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for QuadScalar {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let d = self.ambient(&rhs);
        let dd = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + dd * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::canonical(a, b, d)
    }
}

impl Div for QuadScalar {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        let norm = rhs.norm();
        assert!(!norm.is_zero(), "division by zero in Q(sqrt(d))");
        let num = self * rhs.conjugate();
        Self::canonical(num.a / &norm, num.b / &norm, num.d)
    }
}

/// Fields have trivial remainders.
impl Rem for QuadScalar {
    type Output = Self;

    fn rem(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "remainder by zero");
        Self::zero()
    }
}

impl Neg for QuadScalar {
    type Output = Self;

    fn neg(self) -> Self {
        Self::canonical(-self.a, -self.b, self.d)
    }
}

impl Num for QuadScalar {
    type FromStrRadixErr = Error;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Error> {
        if radix != 10 {
            return Err(Error::Parse { line: 0, message: format!("unsupported radix {radix}") });
        }
        s.parse()
    }
}

impl Scalar for QuadScalar {
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }

    fn radicand(&self) -> u64 {
        self.d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn q(a: Rational, b: Rational, d: u64) -> QuadScalar {
        QuadScalar::new(a, b, d).unwrap()
    }

    #[test]
    fn canonicalizes_rational_values() {
        let x = q(rat(1, 2), int(0), 3);
        assert_eq!(x.d(), 0);
        assert_eq!(x, QuadScalar::rational(rat(1, 2)));
        assert_eq!(q(int(1), int(2), 1), QuadScalar::rational(int(3)));
        assert!(matches!(QuadScalar::new(int(0), int(1), 12), Err(Error::NotSquareFree(12))));
    }

    #[test]
    fn half_sqrt3_identity() {
        let s = q(int(0), rat(1, 2), 3);
        let c = QuadScalar::rational(rat(-1, 2));
        let sum = s.clone() * s + c.clone() * c;
        assert_eq!(sum, QuadScalar::one());
    }

    #[test]
    fn inverse_through_conjugate() {
        let x = q(int(2), int(1), 3);
        let inv = QuadScalar::one() / x.clone();
        assert_eq!(inv, q(int(2), int(-1), 3));
        assert_eq!(x * inv, QuadScalar::one());
    }

    #[test]
    #[should_panic(expected = "incompatible radicals")]
    fn mixed_radicals_panic() {
        let _ = QuadScalar::sqrt(2).unwrap() + QuadScalar::sqrt(3).unwrap();
    }

    #[test]
    fn parse_and_display() {
        for s in ["3/2", "1/2*sqrt(3)", "-1/2 + 1/2*sqrt(3)", "-1/2*sqrt(3)", "2 - 3*sqrt(5)"] {
            let x: QuadScalar = s.parse().unwrap();
            assert_eq!(x.to_string().parse::<QuadScalar>().unwrap(), x, "{s}");
        }
        let x: QuadScalar = "sqrt(3)".parse().unwrap();
        assert_eq!(x, QuadScalar::sqrt(3).unwrap());
        assert_eq!(QuadScalar::new(int(0), rat(1, 2), 3).unwrap().to_latex(), "\\frac{\\sqrt{3}}{2}");
        assert_eq!(QuadScalar::new(int(0), rat(-1, 2), 3).unwrap().to_latex(), "-\\frac{\\sqrt{3}}{2}");
    }

    #[test]
    fn ordering_is_by_radicand_first() {
        let r = QuadScalar::rational(int(100));
        let s = QuadScalar::sqrt(2).unwrap();
        assert!(r < s);
    }
}
