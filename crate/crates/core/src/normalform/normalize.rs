//! Degree-by-degree Belitskii normalization for the semisimple linear part
//! `A(p, q)`.
//!
//! In complex coordinates `L_A` is diagonal: the monomial
//! `z1^a z̄1^b z2^c z̄2^d ∂/∂z_j` is an eigenvector with eigenvalue `i·μ`,
//! `μ = p(a − b) + q(c − d) − λ_j`. Non-resonant terms (`μ ≠ 0`) span
//! `im(L_A)` and are removed by `Φ = Id − h` with `h = Σ κ/(iμ) · m`; the
//! resonant ones span `ker(L_Aᵀ)` and are kept.

use num_complex::Complex;

use super::complex::{from_complex, to_complex, CPoly};
use super::resonance::ResonanceSpec;
use crate::error::Error;
use crate::matrix::a_matrix;
use crate::poly::Poly;
use crate::scalar::{int, Rational};
use crate::vecfield::{conjugate, PolyMap, PolyVF};

fn weight(spec: &ResonanceSpec, component: u8, exps: &[u16; 4]) -> i64 {
    spec.weight(exps.map(u32::from)) - spec.lambda(component)
}

/// Generator of the change at degree `k`, as a real map component list.
fn homological_correction(f: &[CPoly; 2], spec: &ResonanceSpec, k: u32) -> Option<PolyVF<Rational>> {
    let mut h = [CPoly::zero(), CPoly::zero()];
    let mut any = false;
    for (j, comp) in f.iter().enumerate() {
        for (m, kappa) in comp.homogeneous(k).terms() {
            let mu = weight(spec, j as u8 + 1, &m.0);
            if mu == 0 {
                continue;
            }
            // κ/(iμ) = −i·κ/μ
            let d = int(mu);
            let eta = Complex::new(kappa.im.clone() / d.clone(), -kappa.re.clone() / d);
            h[j].add_term(*m, eta);
            any = true;
        }
    }
    any.then(|| from_complex(&h, k))
}

fn non_resonant_degree(x: &PolyVF<Rational>, spec: &ResonanceSpec, k: u32) -> bool {
    to_complex(x)
        .iter()
        .enumerate()
        .any(|(j, p)| p.homogeneous(k).terms().any(|(m, _)| weight(spec, j as u8 + 1, &m.0) != 0))
}

/// Normalizes `x` through `degree`. Returns `(Y, Ψ)` with `Y = Ψ_* X` and
/// every nonlinear term of `Y` resonant.
pub fn belitskii_normalize(
    x: &PolyVF<Rational>,
    spec: &ResonanceSpec,
    degree: u32,
) -> Result<(PolyVF<Rational>, PolyMap<Rational>), Error> {
    let a = a_matrix::<Rational>(&int(spec.p() as i64), &int(spec.q() as i64));
    if x.linear_part() != a || x.components().iter().any(|c| c.min_degree() == Some(0)) {
        return Err(Error::UnexpectedLinearPart);
    }
    let mut y = x.with_max_degree(degree);
    let mut psi = PolyMap::identity(degree);
    for k in 2..=degree {
        let f = to_complex(&y);
        let Some(h) = homological_correction(&f, spec, k) else {
            continue;
        };
        let comps: [Poly<Rational, 4>; 4] =
            std::array::from_fn(|i| Poly::var(i).sub(h.component(i)));
        let phi = PolyMap::new(comps, degree)?;
        y = conjugate(&y, &phi)?;
        psi = phi.compose(&psi);
        if non_resonant_degree(&y, spec, k) {
            return Err(Error::SplittingFailure(k));
        }
    }
    Ok((y, psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vecfield::parse_field;

    fn spec(p: u32, q: u32) -> ResonanceSpec {
        ResonanceSpec::new(p, q).unwrap()
    }

    #[test]
    fn linear_field_is_fixed() {
        let x = PolyVF::linear(&a_matrix(&int(3), &int(5)), 5);
        let (y, psi) = belitskii_normalize(&x, &spec(3, 5), 5).unwrap();
        assert_eq!(y, x);
        assert_eq!(psi, PolyMap::identity(5));
    }

    #[test]
    fn removes_range_terms() {
        let s = spec(3, 5);
        let a = a_matrix::<Rational>(&int(3), &int(5));
        // L_A h = Dh·Aξ − A·h for h = (x1², 0, x2·y1, 0)
        let h = parse_field("degree = 2\ndx1 = 1*x1^2\ndx2 = 0\ndy1 = 1*x2*y1\ndy2 = 0").unwrap();
        let lin = PolyVF::linear(&a, 2);
        let jac = crate::vecfield::PolyMap::new(
            std::array::from_fn(|i| Poly::var(i).add(h.component(i))),
            2,
        )
        .unwrap();
        let range = conjugate(&lin, &jac).unwrap().sub(&lin);
        assert!(!range.is_zero());
        let x = lin.add(&range);
        let (y, _) = belitskii_normalize(&x, &s, 2).unwrap();
        assert_eq!(y, lin);
    }

    #[test]
    fn idempotent() {
        let s = spec(1, 2);
        let x = parse_field(
            "degree = 4\ndx1 = -1*x2 + 1*x1*y1 + 2*x2^3\ndx2 = 1*x1 - 1/3*x1*x2*y2\ndy1 = -2*y2 + 1*x1^2 - 1*y1^2*x2\ndy2 = 2*y1 + 5*x2*y1*y2^2",
        )
        .unwrap();
        let (y, psi) = belitskii_normalize(&x, &s, 4).unwrap();
        assert_eq!(conjugate(&x, &psi).unwrap(), y);
        let (y2, psi2) = belitskii_normalize(&y, &s, 4).unwrap();
        assert_eq!(y2, y);
        assert_eq!(psi2, PolyMap::identity(4));
    }

    #[test]
    fn rejects_wrong_linear_part() {
        let x = PolyVF::linear(&a_matrix(&int(1), &int(3)), 3);
        assert_eq!(belitskii_normalize(&x, &spec(3, 5), 3).unwrap_err(), Error::UnexpectedLinearPart);
    }
}
