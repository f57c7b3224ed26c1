//! Finite matrix groups generated by a handful of 4×4 matrices.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::matrix::{anticommutes, commutes, Mat4};
use crate::scalar::Scalar;
use crate::solver::LinearPart;

pub const DEFAULT_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatGroup<T> {
    elements: Vec<Mat4<T>>,
    generators: Vec<Mat4<T>>,
}

impl<T: Scalar + Ord> MatGroup<T> {
    /// Canonically sorted elements.
    pub fn elements(&self) -> &[Mat4<T>] {
        &self.elements
    }

    pub fn generators(&self) -> &[Mat4<T>] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Mat4<T>) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn same_elements(&self, other: &Self) -> bool {
        self.elements == other.elements
    }

    /// Order of `m` as a group element, `None` if it exceeds the group order.
    pub fn element_order(&self, m: &Mat4<T>) -> Option<usize> {
        element_order(m, self.order())
    }
}

pub fn element_order<T: Scalar>(m: &Mat4<T>, cap: usize) -> Option<usize> {
    let mut p = m.clone();
    for k in 1..=cap.max(1) {
        if p.is_identity() {
            return Some(k);
        }
        p = p.checked_mul(m).ok()?;
    }
    None
}

pub fn generate_closure<T: Scalar + Ord>(gens: &[Mat4<T>]) -> Result<MatGroup<T>, Error> {
    generate_closure_capped(gens, DEFAULT_CAP)
}

pub fn generate_closure_capped<T: Scalar + Ord>(gens: &[Mat4<T>], cap: usize) -> Result<MatGroup<T>, Error> {
    if gens.iter().any(|g| g.determinant().is_negligible()) {
        return Err(Error::SingularGenerator);
    }
    let mut seen: BTreeSet<Mat4<T>> = BTreeSet::new();
    seen.insert(Mat4::identity());
    let mut frontier = vec![Mat4::identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.checked_mul(g)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::ClosureCap { cap });
                }
                frontier.push(y);
            }
        }
    }
    Ok(MatGroup { elements: seen.into_iter().collect(), generators: gens.to_vec() })
}

/// `true` iff `g` has order `2n`, contains an element `r` of order `n`, and
/// every element outside `⟨r⟩` is an involution inverting `r` by conjugation.
/// For `n = 2` this is the Klein four-group.
pub fn is_dihedral<T: Scalar + Ord>(g: &MatGroup<T>, n: usize) -> bool {
    if n == 0 || g.order() != 2 * n {
        return false;
    }
    g.elements().iter().filter(|r| g.element_order(r) == Some(n)).any(|r| {
        let Some(r_inv) = r.inverse() else { return false };
        let mut cyclic = BTreeSet::new();
        let mut p = Mat4::identity();
        for _ in 0..n {
            cyclic.insert(p.clone());
            p = &p * r;
        }
        g.elements().iter().filter(|x| !cyclic.contains(*x)).all(|x| {
            let involution = (x * x).is_identity();
            // x r x⁻¹ = r⁻¹ with x⁻¹ = x
            involution && (&(x * r) * x).approx_eq(&r_inv)
        })
    })
}

/// `ρ: G → {±1}` with `ρ(φ) = −1` exactly for the elements anticommuting
/// with the linear part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment<T> {
    entries: Vec<(Mat4<T>, i8)>,
}

impl<T: Scalar + Ord> SignAssignment<T> {
    pub fn sign(&self, m: &Mat4<T>) -> Option<i8> {
        self.entries.binary_search_by(|(e, _)| e.cmp(m)).ok().map(|i| self.entries[i].1)
    }

    pub fn entries(&self) -> &[(Mat4<T>, i8)] {
        &self.entries
    }

    pub fn reversing(&self) -> usize {
        self.entries.iter().filter(|(_, s)| *s < 0).count()
    }

    pub fn preserving(&self) -> usize {
        self.entries.len() - self.reversing()
    }
}

pub fn sign_assignment<T: Scalar + Ord>(g: &MatGroup<T>, lin: &LinearPart) -> Result<SignAssignment<T>, Error> {
    let a = lin.matrix::<T>();
    let entries = g
        .elements()
        .iter()
        .map(|phi| {
            if commutes(phi, &a) {
                Ok((phi.clone(), 1))
            } else if anticommutes(phi, &a) {
                Ok((phi.clone(), -1))
            } else {
                Err(Error::NotCompatible)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rho = SignAssignment { entries };
    for (x, sx) in rho.entries() {
        for (y, sy) in rho.entries() {
            let xy = x * y;
            if rho.sign(&xy) != Some(sx * sy) {
                return Err(Error::NotMultiplicative);
            }
        }
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::r0;
    use crate::scalar::{int, Rational};

    type M = Mat4<Rational>;

    fn diag(d: [i64; 4]) -> M {
        Mat4::diagonal(d.map(int))
    }

    fn xi1_first() -> M {
        Mat4::from_i64([[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
    }

    #[test]
    fn closure_of_r0_has_order_two() {
        let g = generate_closure(&[r0::<Rational>()]).unwrap();
        assert_eq!(g.order(), 2);
        assert!(is_dihedral(&g, 1));
        assert!(!is_dihedral(&g, 4));
    }

    #[test]
    fn klein_group_from_commuting_involutions() {
        let g = generate_closure(&[r0(), diag([-1, 1, 1, -1])]).unwrap();
        assert_eq!(g.order(), 4);
        assert!(is_dihedral(&g, 2));
    }

    #[test]
    fn d4_closure_by_hand() {
        // explicit closure: keep multiplying until the set stops growing
        let gens = [r0::<Rational>(), xi1_first()];
        let mut set: Vec<M> = gens.to_vec();
        loop {
            let mut grown = set.clone();
            for a in &set {
                for b in &set {
                    let c = a * b;
                    if !grown.contains(&c) {
                        grown.push(c);
                    }
                }
            }
            if grown.len() == set.len() {
                break;
            }
            set = grown;
        }
        assert_eq!(set.len(), 8);

        let g = generate_closure(&gens).unwrap();
        assert_eq!(g.order(), 8);
        assert!(set.iter().all(|m| g.contains(m)));
        assert!(is_dihedral(&g, 4));
        assert!(!is_dihedral(&g, 2));
    }

    #[test]
    fn closure_is_idempotent() {
        let g = generate_closure(&[r0::<Rational>(), xi1_first()]).unwrap();
        let again = generate_closure(g.elements()).unwrap();
        assert!(g.same_elements(&again));
    }

    #[test]
    fn cap_and_singular_generators() {
        let rot = crate::matrix::a_matrix::<Rational>(&int(1), &int(1));
        // 2·I has infinite order
        let two = Mat4::<Rational>::identity().scale(&int(2));
        assert_eq!(generate_closure(&[two]), Err(Error::ClosureCap { cap: DEFAULT_CAP }));
        assert_eq!(generate_closure(&[rot]).unwrap().order(), 4);
        assert_eq!(generate_closure(&[Mat4::<Rational>::zero()]), Err(Error::SingularGenerator));
    }

    #[test]
    fn sign_homomorphism() {
        let lin = LinearPart::new(int(1), int(2)).unwrap();
        let s = xi1_first();
        let g = generate_closure(&[r0(), s.clone()]).unwrap();
        let rho = sign_assignment(&g, &lin).unwrap();
        assert_eq!(rho.sign(&r0()), Some(-1));
        assert_eq!(rho.sign(&Mat4::identity()), Some(1));
        assert_eq!(rho.sign(&(&r0() * &s)), Some(1));
        assert_eq!(rho.reversing(), 4);
        assert_eq!(rho.preserving(), 4);
    }

    #[test]
    fn incompatible_element_is_rejected() {
        let lin = LinearPart::new(int(1), int(2)).unwrap();
        let swap = Mat4::<Rational>::from_i64([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        let g = generate_closure(&[swap]).unwrap();
        assert_eq!(sign_assignment(&g, &lin), Err(Error::NotCompatible));
    }
}
