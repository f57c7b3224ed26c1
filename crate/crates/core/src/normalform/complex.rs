//! Conversion between real fields on `R⁴` and their complex form
//! `(ż1, ż2) = (F1, F2)` in the variables `(z1, z̄1, z2, z̄2)`.

use num_complex::Complex;
use num_traits::Zero;

use super::resonance::ResMonomial;
use crate::poly::{Monomial, Poly};
use crate::scalar::{rat, GaussianRational, Rational};
use crate::vecfield::PolyVF;

/// Polynomial in `(z1, z̄1, z2, z̄2)`.
pub type CPoly = Poly<GaussianRational, 4>;

fn c(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

fn linear(terms: [(usize, GaussianRational); 2]) -> CPoly {
    Poly::from_terms(terms.map(|(v, k)| (Monomial::var(v), k)))
}

/// `F1 = ẋ1 + i·ẋ2`, `F2 = ẏ1 + i·ẏ2` with `x1 = (z1 + z̄1)/2`,
/// `x2 = (z1 − z̄1)/(2i)` and likewise for `y`.
pub fn to_complex(x: &PolyVF<Rational>) -> [CPoly; 2] {
    let (half, zero) = (rat(1, 2), Rational::zero());
    let re = |z: usize| linear([(z, c(half.clone(), zero.clone())), (z + 1, c(half.clone(), zero.clone()))]);
    let im = |z: usize| linear([(z, c(zero.clone(), -half.clone())), (z + 1, c(zero.clone(), half.clone()))]);
    let subs = [re(0), im(0), re(2), im(2)];
    let k = x.max_degree();
    let comps: Vec<CPoly> = x.components().iter().map(|p| p.map_coeffs(|v| c(v.clone(), zero.clone())).compose(&subs, k)).collect();
    let i = Poly::constant(c(zero.clone(), Rational::from_integer(1.into())));
    [comps[0].add(&comps[1].mul(&i)), comps[2].add(&comps[3].mul(&i))]
}

/// Inverse of [`to_complex`]: real and imaginary parts of `F_j(z(x))`.
pub fn from_complex(f: &[CPoly; 2], max_degree: u32) -> PolyVF<Rational> {
    let (one, zero) = (Rational::from_integer(1.into()), Rational::zero());
    let z = |x: usize, sign: i64| {
        linear([(x, c(one.clone(), zero.clone())), (x + 1, c(zero.clone(), Rational::from_integer(sign.into())))])
    };
    let subs = [z(0, 1), z(0, -1), z(2, 1), z(2, -1)];
    let g: Vec<CPoly> = f.iter().map(|p| p.compose(&subs, max_degree)).collect();
    let re = |p: &CPoly| p.map_coeffs(|v| v.re.clone());
    let im = |p: &CPoly| p.map_coeffs(|v| v.im.clone());
    PolyVF::new([re(&g[0]), im(&g[0]), re(&g[1]), im(&g[1])], max_degree)
}

/// Complex monomials with a nonzero coefficient, constant and linear terms
/// included.
pub fn complex_support(x: &PolyVF<Rational>) -> Vec<(ResMonomial, GaussianRational)> {
    let f = to_complex(x);
    let mut out: Vec<_> = f
        .iter()
        .enumerate()
        .flat_map(|(j, p)| {
            p.terms().map(move |(m, k)| (ResMonomial::new(j as u8 + 1, m.0.map(u32::from)), k.clone()))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::a_matrix;
    use crate::scalar::int;
    use crate::vecfield::parse_field;

    #[test]
    fn linear_part_is_diagonal() {
        let x = PolyVF::linear(&a_matrix(&int(3), &int(5)), 1);
        let s = complex_support(&x);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0], (ResMonomial::new(1, [1, 0, 0, 0]), c(int(0), int(3))));
        assert_eq!(s[1], (ResMonomial::new(2, [0, 0, 1, 0]), c(int(0), int(5))));
    }

    #[test]
    fn round_trip() {
        let x = parse_field("degree = 4\ndx1 = -3*x2 + 1/2*x1*y2^2\ndx2 = 3*x1 - 7*x2^3\ndy1 = -5*y2 + 1*x1*x2*y1*y2\ndy2 = 5*y1 + 2*x1^2").unwrap();
        assert_eq!(from_complex(&to_complex(&x), 4), x);
    }

    #[test]
    fn delta_one_term() {
        // ż1 = i z1 Δ1 is ẋ1 = −x2 Δ1, ẋ2 = x1 Δ1
        let mut f1 = CPoly::zero();
        f1.add_term(Monomial([2, 1, 0, 0]), c(int(0), int(1)));
        let x = from_complex(&[f1, CPoly::zero()], 3);
        let expected = parse_field("degree = 3\ndx1 = -1*x2*x1^2 - 1*x2^3\ndx2 = 1*x1^3 + 1*x1*x2^2\ndy1 = 0\ndy2 = 0").unwrap();
        assert_eq!(x, expected);
    }
}
