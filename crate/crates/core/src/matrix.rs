//! 4×4 matrices over a [`Scalar`].

use std::fmt;

use crate::error::Error;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Mat4<T> {
    rows: [[T; 4]; 4],
}

impl<T: Scalar> Mat4<T> {
    /// Builds a matrix, rejecting entries drawn from two different quadratic
    /// fields.
    pub fn new(rows: [[T; 4]; 4]) -> Result<Self, Error> {
        let m = Self { rows };
        m.radicand()?;
        Ok(m)
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Self { rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::diagonal([T::one(), T::one(), T::one(), T::one()])
    }

    pub fn diagonal(d: [T; 4]) -> Self {
        let [a, b, c, e] = d;
        let d = [a, b, c, e];
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn from_i64(rows: [[i64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| T::from_i64(rows[i][j]))
    }

    /// Block-diagonal matrix with two 2×2 blocks.
    pub fn block_diagonal(top: [[T; 2]; 2], bottom: [[T; 2]; 2]) -> Self {
        Self::from_fn(|i, j| match (i / 2, j / 2) {
            (0, 0) => top[i][j].clone(),
            (1, 1) => bottom[i - 2][j - 2].clone(),
            _ => T::zero(),
        })
    }

    pub fn rows(&self) -> &[[T; 4]; 4] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.rows.iter().flatten()
    }

    /// The single radicand shared by all irrational entries (0 if rational).
    pub fn radicand(&self) -> Result<u64, Error> {
        let mut d = 0;
        for e in self.entries() {
            match (d, e.radicand()) {
                (_, 0) => {}
                (0, r) => d = r,
                (a, b) if a != b => return Err(Error::MixedRadicals(a, b)),
                _ => {}
            }
        }
        Ok(d)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat4<U> {
        Mat4::from_fn(|i, j| f(&self.rows[i][j]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(|i, j| c.clone() * self.rows[i][j].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].clone() + other.rows[i][j].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].clone() - other.rows[i][j].clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(|i, j| -self.rows[i][j].clone())
    }

    /// Exact product; fails only when the operands live in different
    /// quadratic fields.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        let (l, r) = (self.radicand()?, other.radicand()?);
        if l != 0 && r != 0 && l != r {
            return Err(Error::IncompatibleRadicals { left: l, right: r });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..4).fold(T::zero(), |acc, k| acc + self.rows[i][k].clone() * other.rows[k][j].clone())
        })
    }

    pub fn apply(&self, v: &[T; 4]) -> [T; 4] {
        std::array::from_fn(|i| (0..4).fold(T::zero(), |acc, k| acc + self.rows[i][k].clone() * v[k].clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|e| e.is_negligible())
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.approx_eq(&Self::identity())
    }

    pub fn determinant(&self) -> T {
        let mut m = self.rows.clone();
        let mut det = T::one();
        for col in 0..4 {
            let Some(pivot) = (col..4).find(|&r| !m[r][col].is_negligible()) else {
                return T::zero();
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det = det * p.clone();
            for r in col + 1..4 {
                let factor = m[r][col].clone() / p.clone();
                for c in col..4 {
                    let v = m[r][c].clone() - factor.clone() * m[col][c].clone();
                    m[r][c] = v;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Option<Self> {
        let mut m = self.rows.clone();
        let mut inv = Self::identity().rows;
        for col in 0..4 {
            let pivot = (col..4).find(|&r| !m[r][col].is_negligible())?;
            m.swap(pivot, col);
            inv.swap(pivot, col);
            let p = m[col][col].clone();
            for c in 0..4 {
                m[col][c] = m[col][c].clone() / p.clone();
                inv[col][c] = inv[col][c].clone() / p.clone();
            }
            for r in 0..4 {
                if r == col || m[r][col].is_negligible() {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in 0..4 {
                    m[r][c] = m[r][c].clone() - factor.clone() * m[col][c].clone();
                    inv[r][c] = inv[r][c].clone() - factor.clone() * inv[col][c].clone();
                }
            }
        }
        Some(Self { rows: inv })
    }
}

impl<T: Scalar> std::ops::Mul for &Mat4<T> {
    type Output = Mat4<T>;

    /// Panics on incompatible radicals; see [`Mat4::checked_mul`].
    fn mul(self, rhs: &Mat4<T>) -> Mat4<T> {
        self.checked_mul(rhs).expect("matrix product across incompatible radicals")
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Mat4<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn mat_mul<T: Scalar>(x: &Mat4<T>, y: &Mat4<T>) -> Result<Mat4<T>, Error> {
    x.checked_mul(y)
}

pub fn is_involution<T: Scalar>(s: &Mat4<T>) -> bool {
    s.checked_mul(s).map_or(false, |sq| sq.is_identity())
}

pub fn anticommutes<T: Scalar>(s: &Mat4<T>, a: &Mat4<T>) -> bool {
    match (s.checked_mul(a), a.checked_mul(s)) {
        (Ok(sa), Ok(as_)) => sa.add(&as_).is_zero(),
        _ => false,
    }
}

pub fn commutes<T: Scalar>(s: &Mat4<T>, a: &Mat4<T>) -> bool {
    match (s.checked_mul(a), a.checked_mul(s)) {
        (Ok(sa), Ok(as_)) => sa.approx_eq(&as_),
        _ => false,
    }
}

/// The block rotation generator `A(α, β)`.
pub fn a_matrix<T: Scalar>(alpha: &Rational, beta: &Rational) -> Mat4<T> {
    let (a, b) = (T::from_rational(alpha), T::from_rational(beta));
    let z = T::zero;
    Mat4::block_diagonal([[z(), -a.clone()], [a, z()]], [[z(), -b.clone()], [b, z()]])
}

/// The canonical involution `(x1, x2, y1, y2) ↦ (x1, −x2, y1, −y2)`.
pub fn r0<T: Scalar>() -> Mat4<T> {
    Mat4::diagonal([T::one(), -T::one(), T::one(), -T::one()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadScalar;
    use crate::scalar::{int, rat};

    type Q = QuadScalar;

    fn half_sqrt3() -> Q {
        Q::new(int(0), rat(1, 2), 3).unwrap()
    }

    fn d3_s1() -> Mat4<Q> {
        let c = Q::rational(rat(-1, 2));
        let s = half_sqrt3();
        let blk = [[c.clone(), s.clone()], [s, -c]];
        Mat4::block_diagonal(blk.clone(), blk)
    }

    #[test]
    fn r0_squares_to_identity() {
        let r = r0::<Q>();
        assert!((&r * &r).is_identity());
        assert!(is_involution(&r));
    }

    #[test]
    fn r0_anticommutes_with_rotation() {
        let a = a_matrix::<Q>(&int(1), &int(2));
        let r = r0::<Q>();
        assert_eq!(&r * &a, (&a * &r).neg());
        assert!(anticommutes(&r, &a));
        assert!(!anticommutes(&Mat4::identity(), &a));
    }

    #[test]
    fn rotation_generator_is_not_an_involution() {
        let a = a_matrix::<Q>(&int(1), &int(2));
        assert_eq!(&a * &a, Mat4::diagonal([int(-1), int(-1), int(-4), int(-4)].map(Q::rational)));
        assert!(!is_involution(&a));
    }

    #[test]
    fn d3_solution_is_an_involution() {
        let s = d3_s1();
        assert!((&s * &s).is_identity());
        assert!(anticommutes(&s, &a_matrix(&int(3), &int(7))));
        assert_eq!(s.determinant(), Q::rational(int(1)));
    }

    #[test]
    fn mixed_radicals_rejected() {
        let mut rows = Mat4::<Q>::identity().rows().clone();
        rows[0][1] = Q::sqrt(2).unwrap();
        rows[2][3] = Q::sqrt(3).unwrap();
        assert_eq!(Mat4::new(rows), Err(Error::MixedRadicals(2, 3)));

        let mut two = Mat4::<Q>::identity().rows().clone();
        two[0][0] = Q::sqrt(2).unwrap();
        let x = Mat4::new(two).unwrap();
        assert_eq!(
            mat_mul(&x, &d3_s1()),
            Err(Error::IncompatibleRadicals { left: 2, right: 3 })
        );
    }

    #[test]
    fn inverse_and_determinant() {
        let a = a_matrix::<Rational>(&int(2), &rat(1, 3));
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.determinant(), int(4) * rat(1, 9));
        assert!(Mat4::<Rational>::zero().inverse().is_none());
    }

    #[test]
    fn works_over_floats() {
        let a = a_matrix::<f64>(&int(1), &int(2));
        assert!(anticommutes(&r0::<f64>(), &a));
        let h = 3f64.sqrt() / 2.0;
        let s = Mat4::block_diagonal([[-0.5, h], [h, 0.5]], [[1.0, 0.0], [0.0, -1.0]]);
        assert!(is_involution(&s));
    }
}
