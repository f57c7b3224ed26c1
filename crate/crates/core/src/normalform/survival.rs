//! Which resonant monomials survive reversibility under a pair of
//! involutions, and with what coefficient constraint.

use std::collections::BTreeMap;

use super::resonance::{constraint_for, resonant_monomials, CoeffConstraint, ResMonomial, ResonanceSpec, RevInvolution};
use crate::error::Error;

/// First involution of the generating pair.
///
/// `R0` is the complex form of `R₀` itself, so `{R0, φ_j}` generates
/// `⟨R₀, S_j⟩`. `Phi0` uses `φ0 = −R₀` instead.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BasePairing {
    #[default]
    R0,
    Phi0,
}

impl BasePairing {
    pub fn involution(self) -> RevInvolution {
        match self {
            Self::R0 => RevInvolution::r0(),
            Self::Phi0 => RevInvolution::phi(0).expect("phi0 exists"),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::R0 => "r0",
            Self::Phi0 => "phi0",
        }
    }
}

/// Group selection: one class `1..=6`, or all six at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupChoice {
    Single(u32),
    AllClasses,
}

impl GroupChoice {
    pub fn involutions(self, base: BasePairing) -> Result<Vec<RevInvolution>, Error> {
        let mut out = vec![base.involution()];
        match self {
            Self::Single(j) if (1..=6).contains(&j) => out.push(RevInvolution::phi(j as u8)?),
            Self::Single(j) => return Err(Error::GroupIndex(j)),
            Self::AllClasses => out.extend((1..=6).map(|j| RevInvolution::phi(j).expect("1..=6"))),
        }
        Ok(out)
    }
}

/// The relaxed arithmetic hypothesis on `(p, q)` and what was observed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypothesisStatus {
    /// `p`, `q` odd with `pq > 1`.
    pub odd_pair: bool,
    pub q_condition: bool,
    pub p_nonzero_mod4: bool,
    pub p_condition: bool,
    /// Every survivor is a `z_j Δ1^m Δ2^n` monomial.
    pub only_delta12: bool,
    /// Every survivor is constrained `ReZero`.
    pub all_re_zero: bool,
}

impl HypothesisStatus {
    pub fn relaxed_holds(&self) -> bool {
        self.q_condition && self.p_nonzero_mod4 && self.p_condition
    }

    /// The predicted conclusion holds whenever the hypothesis does.
    pub fn consistent(&self) -> bool {
        !self.relaxed_holds() || (self.only_delta12 && self.all_re_zero)
    }
}

/// `x ≡ 1, 3`, or `x ≡ 0` with `odd`, or `x ≡ 2` without it (mod 4).
fn mod4_cond(x: u32, odd: bool) -> bool {
    match x % 4 {
        1 | 3 => true,
        0 => odd,
        _ => !odd,
    }
}

/// Evaluates the three-line arithmetic condition on `(p, q)`.
pub fn relaxed_hypothesis(spec: &ResonanceSpec) -> (bool, bool, bool) {
    let (p, q) = (spec.p(), spec.q());
    // q ≡ 0 needs p + q odd, q ≡ 2 needs p + q even
    let q_cond = mod4_cond(q, (p + q) % 2 == 1);
    let p_nonzero = p % 4 != 0;
    // p ≡ 0 needs q odd, p ≡ 2 needs q even
    let p_cond = mod4_cond(p, q % 2 == 1);
    (q_cond, p_nonzero, p_cond)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormResult {
    pub spec: ResonanceSpec,
    pub group: GroupChoice,
    pub base: BasePairing,
    pub degree: u32,
    /// Canonical order, never `Zero`.
    pub surviving: Vec<(ResMonomial, CoeffConstraint)>,
    pub hypothesis: HypothesisStatus,
}

impl NormalFormResult {
    /// Real free parameters contributed by survivors of total degree `k`.
    pub fn parameter_count(&self, k: u32) -> usize {
        self.surviving.iter().filter(|(m, _)| m.degree() == k).map(|(_, c)| c.parameter_count()).sum()
    }

    pub fn parameter_counts(&self) -> BTreeMap<u32, usize> {
        (1..=self.degree).map(|k| (k, self.parameter_count(k))).collect()
    }

    pub fn mixed_survivors(&self) -> Vec<(ResMonomial, CoeffConstraint)> {
        self.surviving.iter().filter(|(m, c)| !m.is_delta12() || *c != CoeffConstraint::ReZero).copied().collect()
    }

    pub fn contains(&self, m: &ResMonomial) -> bool {
        self.surviving.iter().any(|(s, _)| s == m)
    }
}

/// Conjoined constraint of every involution on every resonant monomial of
/// degree `<= degree`, including those forced to zero.
pub fn constraints_under(
    spec: &ResonanceSpec,
    involutions: &[RevInvolution],
    degree: u32,
) -> Vec<(ResMonomial, CoeffConstraint)> {
    resonant_monomials(spec, degree)
        .into_iter()
        .map(|m| {
            let c = involutions.iter().fold(CoeffConstraint::Free, |acc, phi| acc.meet(constraint_for(&m, phi)));
            (m, c)
        })
        .collect()
}

pub fn survival_analysis_with(
    spec: &ResonanceSpec,
    group: GroupChoice,
    base: BasePairing,
    degree: u32,
) -> Result<NormalFormResult, Error> {
    let involutions = group.involutions(base)?;
    let surviving: Vec<_> =
        constraints_under(spec, &involutions, degree).into_iter().filter(|(_, c)| *c != CoeffConstraint::Zero).collect();
    let (q_condition, p_nonzero_mod4, p_condition) = relaxed_hypothesis(spec);
    let (p, q) = (spec.p(), spec.q());
    let hypothesis = HypothesisStatus {
        odd_pair: p % 2 == 1 && q % 2 == 1 && p * q > 1,
        q_condition,
        p_nonzero_mod4,
        p_condition,
        only_delta12: surviving.iter().all(|(m, _)| m.is_delta12()),
        all_re_zero: surviving.iter().all(|(_, c)| *c == CoeffConstraint::ReZero),
    };
    Ok(NormalFormResult { spec: *spec, group, base, degree, surviving, hypothesis })
}

/// Survivors for `⟨R₀, S_j⟩`, `j ∈ 1..=6`.
pub fn survival_analysis(spec: &ResonanceSpec, group_index: u32, degree: u32) -> Result<NormalFormResult, Error> {
    survival_analysis_with(spec, GroupChoice::Single(group_index), BasePairing::R0, degree)
}

/// Constraint on the two monomials `z̄1^(nq−1) z2^(np) ∂/∂z1` and
/// `z1^(nq) z̄2^(np−1) ∂/∂z2`.
pub fn pure_resonance_constraints(
    spec: &ResonanceSpec,
    n: u32,
    involutions: &[RevInvolution],
) -> [(ResMonomial, CoeffConstraint); 2] {
    let (p, q) = (spec.p(), spec.q());
    let ms = [ResMonomial::new(1, [0, n * q - 1, n * p, 0]), ResMonomial::new(2, [n * q, 0, 0, n * p - 1])];
    ms.map(|m| (m, involutions.iter().fold(CoeffConstraint::Free, |acc, phi| acc.meet(constraint_for(&m, phi)))))
}
