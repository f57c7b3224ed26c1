//! Independent check of the survival analysis: the Belitskii complement
//! `ker L_{Aᵀ}` intersected with the reversibility conditions, solved as a
//! sparse linear system over `Q` in real coordinates.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::resonance::ResonanceSpec;
use super::survival::BasePairing;
use crate::builtins::d4_representative_rational;
use crate::error::Error;
use crate::linalg::{EchelonBasis, SparseRow};
use crate::matrix::{a_matrix, r0, Mat4};
use crate::poly::{Monomial, Poly};
use crate::scalar::{int, Rational};
use crate::vecfield::PolyVF;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OracleMode {
    /// `φX(ξ) + X(φξ) = 0`.
    #[default]
    Reversible,
    /// `φX(ξ) − X(φξ) = 0`.
    Equivariant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelAtDegree {
    pub degree: u32,
    pub dimension: usize,
    /// Homogeneous fields of degree `degree` spanning the kernel.
    pub basis: Vec<PolyVF<Rational>>,
}

/// Real matrices of the generating pair `{R₀, S_j}` (or `{−R₀, S_j}`).
pub fn oracle_involutions(group_index: u32, base: BasePairing) -> Result<Vec<Mat4<Rational>>, Error> {
    let first = match base {
        BasePairing::R0 => r0(),
        BasePairing::Phi0 => r0::<Rational>().neg(),
    };
    Ok(vec![first, d4_representative_rational(group_index)?])
}

/// Kernel at a single degree `k >= 1`.
pub fn kernel_at_degree(
    spec: &ResonanceSpec,
    involutions: &[Mat4<Rational>],
    k: u32,
    mode: OracleMode,
) -> KernelAtDegree {
    let mons = Monomial::<4>::of_degree(k);
    let index: HashMap<Monomial<4>, usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let width = mons.len();
    let unknowns = 4 * width;
    let b = a_matrix::<Rational>(&int(spec.p() as i64), &int(spec.q() as i64)).transpose();

    // rows keyed by (block, component, monomial)
    let mut rows: BTreeMap<usize, SparseRow<Rational>> = BTreeMap::new();
    let mut put = |block: usize, comp: usize, m: &Monomial<4>, unknown: usize, v: Rational| {
        let r = block * unknowns + comp * width + index[m];
        let e = rows.entry(r).or_default().entry(unknown).or_insert_with(|| int(0));
        *e += v;
    };

    let moved: Vec<Vec<Poly<Rational, 4>>> =
        involutions.iter().map(|phi| mons.iter().map(|m| Poly::term(*m, int(1)).substitute_linear(phi)).collect()).collect();
    let sign = match mode {
        OracleMode::Reversible => int(1),
        OracleMode::Equivariant => int(-1),
    };

    for comp in 0..4 {
        for (mi, m) in mons.iter().enumerate() {
            let u = comp * width + mi;
            // L_B X = DX·Bξ − B·X
            for j in 0..4 {
                let e = m.0[j];
                if e == 0 {
                    continue;
                }
                let mut base = *m;
                base.0[j] -= 1;
                for l in 0..4 {
                    let bjl = b.get(j, l);
                    if *bjl != int(0) {
                        let mut target = base;
                        target.0[l] += 1;
                        put(0, comp, &target, u, int(e as i64) * bjl.clone());
                    }
                }
            }
            for r in 0..4 {
                let bri = b.get(r, comp);
                if *bri != int(0) {
                    put(0, r, m, u, -bri.clone());
                }
            }
            // φX(ξ) ± X(φξ)
            for (pi, phi) in involutions.iter().enumerate() {
                let block = pi + 1;
                for r in 0..4 {
                    let v = phi.get(r, comp);
                    if *v != int(0) {
                        put(block, r, m, u, v.clone());
                    }
                }
                for (tm, tc) in moved[pi][mi].terms() {
                    put(block, comp, tm, u, sign.clone() * tc.clone());
                }
            }
        }
    }

    let mut echelon = EchelonBasis::new(unknowns);
    for (_, mut row) in rows {
        row.retain(|_, v| *v != int(0));
        if !row.is_empty() {
            echelon.insert(row);
        }
    }
    let basis: Vec<PolyVF<Rational>> = echelon
        .nullspace()
        .into_iter()
        .map(|v| {
            let comps: [Poly<Rational, 4>; 4] = std::array::from_fn(|comp| {
                Poly::from_terms(mons.iter().enumerate().map(|(mi, m)| (*m, v[comp * width + mi].clone())))
            });
            PolyVF::new(comps, k)
        })
        .collect();
    KernelAtDegree { degree: k, dimension: basis.len(), basis }
}

/// Kernels for degrees `2..=degree`, computed in parallel.
pub fn brute_force_kernel_with(
    spec: &ResonanceSpec,
    involutions: &[Mat4<Rational>],
    degree: u32,
    mode: OracleMode,
) -> BTreeMap<u32, KernelAtDegree> {
    (2..=degree)
        .into_par_iter()
        .map(|k| (k, kernel_at_degree(spec, involutions, k, mode)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Reversibility kernel for `⟨R₀, S_j⟩` at degrees `2..=degree`.
pub fn brute_force_kernel(
    spec: &ResonanceSpec,
    group_index: u32,
    degree: u32,
) -> Result<BTreeMap<u32, KernelAtDegree>, Error> {
    let invs = oracle_involutions(group_index, BasePairing::R0)?;
    Ok(brute_force_kernel_with(spec, &invs, degree, OracleMode::Reversible))
}

pub fn dimensions(kernels: &BTreeMap<u32, KernelAtDegree>) -> BTreeMap<u32, usize> {
    kernels.iter().map(|(k, v)| (*k, v.dimension)).collect()
}
