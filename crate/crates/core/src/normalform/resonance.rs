//! Resonant monomials in complex coordinates and the constraints that
//! antiholomorphic involutions impose on their coefficients.
//!
//! Orientation: `z1 = x1 + i·x2`, `z2 = y1 + i·y2`, so the linear part
//! `A(p, q)` reads `ż1 = i·p·z1`, `ż2 = i·q·z2`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::Error;
use crate::matrix::Mat4;
use crate::scalar::Rational;

/// A `p:q` resonance with `gcd(p, q) = 1` and `p ≠ q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResonanceSpec {
    p: u32,
    q: u32,
}

impl ResonanceSpec {
    pub fn new(p: u32, q: u32) -> Result<Self, Error> {
        let reject = |reason: &str| Err(Error::InvalidResonance { p, q, reason: reason.to_string() });
        if p == 0 || q == 0 {
            return reject("frequencies must be positive integers");
        }
        if p == q {
            return reject("the 1:1 case (lambda = 1) is a deep degeneracy and is not handled");
        }
        if p.gcd(&q) != 1 {
            return reject("p and q must be coprime (write lambda = p/q in lowest terms)");
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Frequency of component `j ∈ {1, 2}`.
    pub fn lambda(&self, component: u8) -> i64 {
        if component == 1 {
            self.p as i64
        } else {
            self.q as i64
        }
    }

    /// Eigenvalue weight `p(a − b) + q(c − d)` of a monomial.
    pub fn weight(&self, exps: [u32; 4]) -> i64 {
        let [a, b, c, d] = exps.map(|e| e as i64);
        self.p as i64 * (a - b) + self.q as i64 * (c - d)
    }
}

/// `z1^a z̄1^b z2^c z̄2^d ∂/∂z_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResMonomial {
    pub component: u8,
    pub exps: [u32; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialKind {
    /// `z_j Δ1^m Δ2^n ∂/∂z_j`.
    Delta12 { m: u32, n: u32 },
    /// Anything involving `Δ3` or `Δ4`.
    Mixed,
}

impl ResMonomial {
    pub fn new(component: u8, exps: [u32; 4]) -> Self {
        assert!(component == 1 || component == 2, "component must be 1 or 2");
        Self { component, exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_resonant(&self, spec: &ResonanceSpec) -> bool {
        spec.weight(self.exps) == spec.lambda(self.component)
    }

    pub fn kind(&self) -> MonomialKind {
        let [a, b, c, d] = self.exps;
        match self.component {
            1 if a == b + 1 && c == d => MonomialKind::Delta12 { m: b, n: d },
            2 if c == d + 1 && a == b => MonomialKind::Delta12 { m: b, n: d },
            _ => MonomialKind::Mixed,
        }
    }

    pub fn is_delta12(&self) -> bool {
        matches!(self.kind(), MonomialKind::Delta12 { .. })
    }

    pub fn to_latex(&self) -> String {
        let names = ["z_1", "\\overline{z}_1", "z_2", "\\overline{z}_2"];
        let mut out = String::new();
        for (n, &e) in names.iter().zip(&self.exps) {
            match e {
                0 => {}
                1 => out.push_str(n),
                e => out.push_str(&format!("{n}^{{{e}}}")),
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        format!("{out}\\frac{{\\partial}}{{\\partial z_{}}}", self.component)
    }
}

impl Ord for ResMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.component.cmp(&other.component))
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for ResMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ResMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["z1", "zb1", "z2", "zb2"];
        let factors: Vec<String> = names
            .iter()
            .zip(&self.exps)
            .filter(|(_, &e)| e > 0)
            .map(|(n, &e)| if e == 1 { n.to_string() } else { format!("{n}^{e}") })
            .collect();
        let body = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
        write!(f, "{body} d/dz{}", self.component)
    }
}

/// All resonant monomials of total degree `1..=degree`, in canonical order.
pub fn resonant_monomials(spec: &ResonanceSpec, degree: u32) -> Vec<ResMonomial> {
    let mut out = Vec::new();
    for total in 1..=degree {
        for a in 0..=total {
            for b in 0..=total - a {
                for c in 0..=total - a - b {
                    let exps = [a, b, c, total - a - b - c];
                    for component in [1, 2] {
                        let m = ResMonomial { component, exps };
                        if m.is_resonant(spec) {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// A power of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Unit(u8);

impl Unit {
    pub const ONE: Unit = Unit(0);
    pub const I: Unit = Unit(1);
    pub const MINUS_ONE: Unit = Unit(2);
    pub const MINUS_I: Unit = Unit(3);

    pub fn i_pow(k: i64) -> Self {
        Unit(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, other: Self) -> Self {
        Unit((self.0 + other.0) % 4)
    }

    pub fn pow(self, k: i64) -> Self {
        Self::i_pow(self.0 as i64 * k)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvolutionTag {
    /// `(z1, z2) ↦ (z̄1, z̄2)`, the complex form of `R₀`.
    R0,
    Phi(u8),
}

impl fmt::Display for InvolutionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::R0 => f.write_str("R0"),
            Self::Phi(j) => write!(f, "phi{j}"),
        }
    }
}

/// `(z1, z2) ↦ s·(ε1·z̄1, ε2·z̄2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RevInvolution {
    pub tag: InvolutionTag,
    pub eps1: Unit,
    pub eps2: Unit,
    pub global_sign: i8,
}

impl RevInvolution {
    pub fn r0() -> Self {
        Self { tag: InvolutionTag::R0, eps1: Unit::ONE, eps2: Unit::ONE, global_sign: 1 }
    }

    /// `φ0 … φ6`.
    pub fn phi(j: u8) -> Result<Self, Error> {
        use Unit as U;
        let (s, e1, e2) = match j {
            0 => (-1, U::ONE, U::ONE),
            1 => (1, U::I, U::ONE),
            2 => (-1, U::ONE, U::MINUS_I),
            3 => (1, U::ONE, U::I),
            4 => (-1, U::MINUS_I, U::MINUS_I),
            5 => (-1, U::MINUS_I, U::ONE),
            6 => (1, U::I, U::MINUS_I),
            _ => return Err(Error::GroupIndex(j as u32)),
        };
        Ok(Self { tag: InvolutionTag::Phi(j), eps1: e1, eps2: e2, global_sign: s })
    }

    /// `s·ε1` and `s·ε2`.
    pub fn effective(&self) -> (Unit, Unit) {
        let s = if self.global_sign < 0 { Unit::MINUS_ONE } else { Unit::ONE };
        (s.mul(self.eps1), s.mul(self.eps2))
    }

    /// The same map in real coordinates `(x1, x2, y1, y2)`.
    pub fn real_matrix(&self) -> Mat4<Rational> {
        // z ↦ i^k z̄ is the reflection [[cos kπ/2, sin kπ/2], [sin kπ/2, −cos kπ/2]]
        let block = |u: Unit| -> [[i64; 2]; 2] {
            match u.exponent() {
                0 => [[1, 0], [0, -1]],
                1 => [[0, 1], [1, 0]],
                2 => [[-1, 0], [0, 1]],
                _ => [[0, -1], [-1, 0]],
            }
        };
        let (e1, e2) = self.effective();
        let (t, b) = (block(e1), block(e2));
        Mat4::from_fn(|i, j| {
            let v = match (i / 2, j / 2) {
                (0, 0) => t[i][j],
                (1, 1) => b[i - 2][j - 2],
                _ => 0,
            };
            Rational::from_integer(v.into())
        })
    }
}

/// Restriction that reversibility places on a complex coefficient `κ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffConstraint {
    Free,
    ReZero,
    ImZero,
    ReEqIm,
    ReEqMinusIm,
    Zero,
}

impl CoeffConstraint {
    pub const ALL: [CoeffConstraint; 6] =
        [Self::Free, Self::ReZero, Self::ImZero, Self::ReEqIm, Self::ReEqMinusIm, Self::Zero];

    /// From `κ̄ = χ·κ`.
    pub fn from_chi(chi: Unit) -> Self {
        match chi {
            Unit::ONE => Self::ImZero,
            Unit::MINUS_ONE => Self::ReZero,
            Unit::I => Self::ReEqMinusIm,
            _ => Self::ReEqIm,
        }
    }

    /// Conjunction. Each non-trivial constraint is a real line through the
    /// origin of `C = R²`, so two different ones meet only at zero.
    pub fn meet(self, other: Self) -> Self {
        match (self, other) {
            (Self::Free, x) | (x, Self::Free) => x,
            (x, y) if x == y => x,
            _ => Self::Zero,
        }
    }

    /// Real dimension of the allowed coefficients.
    pub fn parameter_count(self) -> usize {
        match self {
            Self::Free => 2,
            Self::Zero => 0,
            _ => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Free => "Free",
            Self::ReZero => "ReZero",
            Self::ImZero => "ImZero",
            Self::ReEqIm => "ReEqIm",
            Self::ReEqMinusIm => "ReEqMinusIm",
            Self::Zero => "Zero",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }

    pub fn to_latex(self) -> &'static str {
        match self {
            Self::Free => "b\\in\\mathbb{C}",
            Self::ReZero => "\\Re(b)=0",
            Self::ImZero => "\\Im(b)=0",
            Self::ReEqIm => "\\Re(b)=\\Im(b)",
            Self::ReEqMinusIm => "\\Re(b)=-\\Im(b)",
            Self::Zero => "b=0",
        }
    }
}

impl fmt::Display for CoeffConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `χ` with `κ̄ = χ·κ` forced by `φ·v(z) = −v(φ(z))` on `v = κ·m`.
///
/// For `φ(z) = s·(ε1 z̄1, ε2 z̄2)` and `m = z1^a z̄1^b z2^c z̄2^d ∂/∂z1`
/// this is `χ = −(sε1)^(a−b−1)·(sε2)^(c−d)`; for `∂/∂z2` the `−1` moves
/// to the second exponent.
pub fn reversibility_chi(m: &ResMonomial, phi: &RevInvolution) -> Unit {
    let [a, b, c, d] = m.exps.map(|e| e as i64);
    let (x, y) = if m.component == 1 { (a - b - 1, c - d) } else { (a - b, c - d - 1) };
    let (e1, e2) = phi.effective();
    Unit::MINUS_ONE.mul(e1.pow(x)).mul(e2.pow(y))
}

pub fn constraint_for(m: &ResMonomial, phi: &RevInvolution) -> CoeffConstraint {
    CoeffConstraint::from_chi(reversibility_chi(m, phi))
}
