//! Linear involutions `S` with `SA = −AS` and `⟨R₀, S⟩` dihedral.
//!
//! No Gröbner engine is involved. The structure of the solution set is
//! derived by construction:
//!
//! 1. The linear conditions `SA + AS = 0` are solved exactly
//!    ([`anticommutant_basis`]). When `|α| ≠ |β|` the solution space is
//!    4-dimensional and consists of block-diagonal matrices whose 2×2 blocks
//!    have the reflection shape `[[a, b], [b, −a]]`; off-diagonal blocks are
//!    forced to vanish. This is checked, not assumed.
//! 2. `S² = I` turns each block into a unit reflection
//!    `[[cos θ, sin θ], [sin θ, −cos θ]]`.
//! 3. `R₀ S` is then a block rotation by `(−θ₁, −θ₂)`, so `(R₀S)ⁿ = I`
//!    forces `θᵢ = 2πkᵢ/n`.
//!
//! Enumerating `(k₁, k₂)` therefore lists every solution. The independent
//! check is [`verify_raw_system`], which substitutes a matrix into the raw
//! polynomial system generated entry by entry from the matrix equations.
//!
//! Only `n ∈ {2, 3, 4, 6}` is supported: these are the orders whose
//! reflection angles have coordinates in `Q(√3)`.

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::groups::{generate_closure, MatGroup};
use crate::linalg::{nullspace, SparseRow};
use crate::matrix::{a_matrix, r0, Mat4};
use crate::poly::{Monomial, Poly};
use crate::quad::QuadScalar;
use crate::scalar::{rat, Rational, Scalar};

pub use crate::QMat4;

pub const SUPPORTED_ORDERS: [u32; 4] = [2, 3, 4, 6];

/// Frequencies of the linear part `A(α, β)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearPart {
    alpha: Rational,
    beta: Rational,
}

impl LinearPart {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self, Error> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::ZeroFrequency);
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn is_resonance_degenerate(&self) -> bool {
        self.alpha.abs() == self.beta.abs()
    }

    pub fn matrix<T: Scalar>(&self) -> Mat4<T> {
        a_matrix(&self.alpha, &self.beta)
    }
}

/// Reflection angles `θᵢ = 2π kᵢ / n` of the two diagonal blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockAngles {
    pub k1: u32,
    pub k2: u32,
    pub n: u32,
}

impl BlockAngles {
    /// The angles as fractions of a full turn, `(k₁/n, k₂/n)`.
    pub fn turns(&self) -> (Rational, Rational) {
        (rat(self.k1 as i64, self.n as i64), rat(self.k2 as i64, self.n as i64))
    }

    /// Order of the block rotation `R₀S`.
    pub fn rotation_order(&self) -> u32 {
        let o = |k: u32| self.n / num_integer::gcd(k, self.n);
        num_integer::lcm(o(self.k1), o(self.k2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionSolution {
    pub s: QMat4,
    pub angles: BlockAngles,
    /// Order of `⟨R₀, S⟩`, computed by closure.
    pub group_order: usize,
    /// `⟨R₀, S⟩` has fewer than `2n` elements (this includes `S = R₀`).
    pub degenerate: bool,
}

/// `(cos, sin)` of `m·π/6`.
fn twelfth_turn(m: u32) -> (QuadScalar, QuadScalar) {
    let r = |n, d| QuadScalar::rational(rat(n, d));
    let h3 = |sign: i64| QuadScalar::new(Rational::zero(), rat(sign, 2), 3).expect("3 is square-free");
    match m % 12 {
        0 => (r(1, 1), r(0, 1)),
        1 => (h3(1), r(1, 2)),
        2 => (r(1, 2), h3(1)),
        3 => (r(0, 1), r(1, 1)),
        4 => (r(-1, 2), h3(1)),
        5 => (h3(-1), r(1, 2)),
        6 => (r(-1, 1), r(0, 1)),
        7 => (h3(-1), r(-1, 2)),
        8 => (r(-1, 2), h3(-1)),
        9 => (r(0, 1), r(-1, 1)),
        10 => (r(1, 2), h3(-1)),
        _ => (h3(1), r(-1, 2)),
    }
}

/// `[[cos θ, sin θ], [sin θ, −cos θ]]` for `θ = 2πk/n`.
pub fn reflection_block(k: u32, n: u32) -> Result<[[QuadScalar; 2]; 2], Error> {
    if !SUPPORTED_ORDERS.contains(&n) {
        return Err(Error::UnsupportedOrder(n));
    }
    let (c, s) = twelfth_turn((12 / n) * (k % n));
    Ok([[c.clone(), s.clone()], [s, -c]])
}

pub fn block_reflection(angles: BlockAngles) -> Result<QMat4, Error> {
    Ok(Mat4::block_diagonal(reflection_block(angles.k1, angles.n)?, reflection_block(angles.k2, angles.n)?))
}

fn entry_index(i: usize, j: usize) -> usize {
    4 * i + j
}

/// Exact basis of `{S : SA + AS = 0}` as flattened row-major matrices.
pub fn anticommutant_basis(lin: &LinearPart) -> Vec<Mat4<Rational>> {
    let a: Mat4<Rational> = lin.matrix();
    // (SA + AS)_{ij} = Σ_k S_ik A_kj + A_ik S_kj, linear in the 16 unknowns
    let rows = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| {
        let mut row = SparseRow::new();
        for k in 0..4 {
            let mut bump = |idx: usize, v: &Rational| {
                if !v.is_zero() {
                    let e = row.entry(idx).or_insert_with(Rational::zero);
                    *e += v;
                }
            };
            bump(entry_index(i, k), a.get(k, j));
            bump(entry_index(k, j), a.get(i, k));
        }
        row.retain(|_, v| !v.is_zero());
        row
    });
    nullspace(16, rows.collect::<Vec<_>>())
        .into_iter()
        .map(|v| Mat4::from_fn(|i, j| v[entry_index(i, j)].clone()))
        .collect()
}

/// The structure theorem for a concrete linear part: every anticommuting
/// matrix is block diagonal with reflection-shaped blocks.
pub fn block_reduction_holds(lin: &LinearPart) -> bool {
    let basis = anticommutant_basis(lin);
    basis.len() == 4
        && basis.iter().all(|m| {
            let off_diagonal_zero = (0..4).all(|i| (0..4).all(|j| i / 2 == j / 2 || m.get(i, j).is_zero()));
            let reflection_shape = [0, 2].iter().all(|&o| {
                m.get(o, o) == &-m.get(o + 1, o + 1).clone() && m.get(o, o + 1) == m.get(o + 1, o)
            });
            off_diagonal_zero && reflection_shape
        })
}

/// Every involution `S` with `SA = −AS` and `(R₀S)ⁿ = I`, sorted
/// canonically. Solutions whose group `⟨R₀, S⟩` has order below `2n` are
/// kept and flagged `degenerate`.
pub fn solve_involutions(lin: &LinearPart, n: u32) -> Result<Vec<InvolutionSolution>, Error> {
    if !SUPPORTED_ORDERS.contains(&n) {
        return Err(Error::UnsupportedOrder(n));
    }
    if lin.is_resonance_degenerate() || !block_reduction_holds(lin) {
        return Err(Error::DegenerateResonance);
    }
    let r0 = r0::<QuadScalar>();
    let mut out = Vec::new();
    for k1 in 0..n {
        for k2 in 0..n {
            let angles = BlockAngles { k1, k2, n };
            let s = block_reflection(angles)?;
            let group = generate_closure(&[r0.clone(), s.clone()])?;
            let group_order = group.order();
            out.push(InvolutionSolution { s, angles, group_order, degenerate: group_order < 2 * n as usize });
        }
    }
    out.sort_by(|a, b| a.s.cmp(&b.s));
    Ok(out)
}

pub fn non_degenerate(solutions: &[InvolutionSolution]) -> Vec<InvolutionSolution> {
    solutions.iter().filter(|s| !s.degenerate).cloned().collect()
}

/// Solutions sharing the same generated group `⟨R₀, S⟩`.
#[derive(Clone, Debug)]
pub struct XiClass {
    pub members: Vec<InvolutionSolution>,
    pub group_order: usize,
    pub group: MatGroup<QuadScalar>,
}

pub fn partition_by_group(solutions: &[InvolutionSolution]) -> Result<Vec<XiClass>, Error> {
    let r0 = r0::<QuadScalar>();
    let mut classes: Vec<XiClass> = Vec::new();
    let mut sorted = solutions.to_vec();
    sorted.sort_by(|a, b| a.s.cmp(&b.s));
    for sol in sorted {
        let group = generate_closure(&[r0.clone(), sol.s.clone()])?;
        match classes.iter_mut().find(|c| c.group.same_elements(&group)) {
            Some(c) => c.members.push(sol),
            None => classes.push(XiClass { group_order: group.order(), members: vec![sol], group }),
        }
    }
    Ok(classes)
}

/// Names of the sixteen unknown entries, row `i` being `aᵢ bᵢ cᵢ dᵢ`.
pub const ENTRY_NAMES: [&str; 16] = [
    "a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2", "a3", "b3", "c3", "d3", "a4", "b4", "c4", "d4",
];

#[derive(Clone, Debug, PartialEq)]
pub struct RawEquation {
    pub label: String,
    pub poly: Poly<Rational, 16>,
}

type PolyMatrix = [[Poly<Rational, 16>; 4]; 4];

fn poly_matmul(x: &PolyMatrix, y: &PolyMatrix) -> PolyMatrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(Poly::zero(), |acc, k| acc.add(&x[i][k].mul(&y[k][j]))))
    })
}

fn constant_matrix(m: &Mat4<Rational>) -> PolyMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| Poly::constant(m.get(i, j).clone())))
}

/// The raw polynomial system in the entries of `S`: `SA + AS = 0`,
/// `S² − I = 0` and `SR₀ − (R₀S)ⁿ⁻¹ = 0`, one equation per matrix entry.
pub fn raw_system(lin: &LinearPart, n: u32) -> Vec<RawEquation> {
    let s: PolyMatrix = std::array::from_fn(|i| std::array::from_fn(|j| Poly::var(entry_index(i, j))));
    let a = constant_matrix(&lin.matrix());
    let r = constant_matrix(&r0());
    let id = constant_matrix(&Mat4::identity());

    let anti = {
        let (sa, as_) = (poly_matmul(&s, &a), poly_matmul(&a, &s));
        std::array::from_fn::<_, 4, _>(|i| std::array::from_fn::<_, 4, _>(|j| sa[i][j].add(&as_[i][j])))
    };
    let square = {
        let ss = poly_matmul(&s, &s);
        std::array::from_fn::<_, 4, _>(|i| std::array::from_fn::<_, 4, _>(|j| ss[i][j].sub(&id[i][j])))
    };
    let relation = {
        let rs = poly_matmul(&r, &s);
        let mut power = id.clone();
        for _ in 1..n {
            power = poly_matmul(&power, &rs);
        }
        let sr = poly_matmul(&s, &r);
        std::array::from_fn::<_, 4, _>(|i| std::array::from_fn::<_, 4, _>(|j| sr[i][j].sub(&power[i][j])))
    };

    let mut eqs = Vec::new();
    for (name, block) in [("SA+AS", anti), ("S^2-I", square), (&*format!("SR0-(R0S)^{}", n - 1), relation)] {
        for i in 0..4 {
            for j in 0..4 {
                if !block[i][j].is_zero() {
                    eqs.push(RawEquation { label: format!("{name}[{},{}]", i + 1, j + 1), poly: block[i][j].clone() });
                }
            }
        }
    }
    eqs
}

#[derive(Clone, Debug)]
pub struct RawSystemReport {
    pub residuals: Vec<(String, QuadScalar)>,
    pub failing: Vec<String>,
}

impl RawSystemReport {
    pub fn passes(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Substitutes the entries of `s` into every raw equation.
pub fn verify_raw_system(s: &QMat4, lin: &LinearPart, n: u32) -> RawSystemReport {
    let point: [QuadScalar; 16] = std::array::from_fn(|k| s.get(k / 4, k % 4).clone());
    let mut residuals = Vec::new();
    let mut failing = Vec::new();
    for eq in raw_system(lin, n) {
        let r = eq.poly.map_coeffs(|c| QuadScalar::rational(c.clone())).eval(&point);
        if !r.is_zero() {
            failing.push(eq.label.clone());
        }
        residuals.push((eq.label, r));
    }
    RawSystemReport { residuals, failing }
}

/// Monomial helper for writing raw-system polynomials by hand.
pub fn entry_monomial(names: &[&str]) -> Monomial<16> {
    let mut e = [0u16; 16];
    for n in names {
        let i = ENTRY_NAMES.iter().position(|x| x == n).expect("entry name");
        e[i] += 1;
    }
    Monomial(e)
}

impl InvolutionSolution {
    pub fn is_r0(&self) -> bool {
        self.s == r0()
    }
}

pub fn is_identity_power(m: &QMat4, n: u32) -> bool {
    let mut p = Mat4::identity();
    for _ in 0..n {
        p = &p * m;
    }
    p.is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{anticommutes, is_involution};
    use crate::scalar::int;

    fn lin(a: i64, b: i64) -> LinearPart {
        LinearPart::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn structure_theorem_holds_off_resonance() {
        assert!(block_reduction_holds(&lin(1, 2)));
        assert!(block_reduction_holds(&LinearPart::new(rat(2, 3), rat(-5, 7)).unwrap()));
        // at |α| = |β| extra non-block solutions appear
        assert_eq!(anticommutant_basis(&lin(1, 1)).len(), 8);
        assert_eq!(anticommutant_basis(&lin(1, -1)).len(), 8);
        assert!(!block_reduction_holds(&lin(2, 2)));
    }

    #[test]
    fn degenerate_resonance_is_rejected() {
        assert_eq!(solve_involutions(&lin(3, 3), 4).unwrap_err(), Error::DegenerateResonance);
        assert_eq!(solve_involutions(&lin(3, -3), 4).unwrap_err(), Error::DegenerateResonance);
        assert_eq!(solve_involutions(&lin(1, 2), 5).unwrap_err(), Error::UnsupportedOrder(5));
        assert_eq!(LinearPart::new(int(0), int(1)).unwrap_err(), Error::ZeroFrequency);
    }

    #[test]
    fn every_solution_satisfies_the_matrix_equations() {
        let l = lin(1, 2);
        let a = l.matrix::<QuadScalar>();
        for n in SUPPORTED_ORDERS {
            let sols = solve_involutions(&l, n).unwrap();
            assert_eq!(sols.len(), (n * n) as usize);
            for s in &sols {
                assert!(is_involution(&s.s));
                assert!(anticommutes(&s.s, &a));
                assert!(is_identity_power(&(&r0::<QuadScalar>() * &s.s), n));
                assert_eq!(s.group_order, 2 * s.angles.rotation_order() as usize);
            }
            assert!(sols.windows(2).all(|w| w[0].s < w[1].s));
        }
    }

    #[test]
    fn r0_is_the_degenerate_solution() {
        let sols = solve_involutions(&lin(1, 2), 2).unwrap();
        let r = sols.iter().find(|s| s.is_r0()).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.group_order, 2);
    }

    #[test]
    fn identity_fails_the_raw_system() {
        let report = verify_raw_system(&Mat4::identity(), &lin(1, 2), 4);
        assert!(!report.passes());
        assert!(report.failing.iter().any(|l| l.starts_with("SA+AS")));
        assert!(!report.failing.iter().any(|l| l.starts_with("S^2-I")));
    }

    #[test]
    fn raw_system_matches_monstro_for_klein_case() {
        // two equations of the n = 2 system, α = 1, β = 2
        let eqs = raw_system(&lin(1, 2), 2);
        let find = |p: &Poly<Rational, 16>| eqs.iter().any(|e| &e.poly == p || e.poly == p.neg());
        // (S^2 - I)[1,1]
        let s2_11 = Poly::from_terms([
            (entry_monomial(&["a1", "a1"]), int(1)),
            (entry_monomial(&["b1", "a2"]), int(1)),
            (entry_monomial(&["c1", "a3"]), int(1)),
            (entry_monomial(&["d1", "a4"]), int(1)),
            (Monomial::one(), int(-1)),
        ]);
        assert!(find(&s2_11));
        // -c1 β - α d2 = 0
        let lin_eq = Poly::from_terms([(entry_monomial(&["c1"]), int(-2)), (entry_monomial(&["d2"]), int(-1))]);
        assert!(find(&lin_eq));
    }
}
