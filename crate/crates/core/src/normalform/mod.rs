//! Resonant normal forms of reversible-equivariant fields at a `p:q`
//! resonance.

pub mod complex;
pub mod normalize;
pub mod oracle;
pub mod realform;
pub mod resonance;
pub mod survival;
pub mod tables;

pub use normalize::belitskii_normalize;
pub use oracle::{brute_force_kernel, brute_force_kernel_with, kernel_at_degree, KernelAtDegree, OracleMode};
pub use realform::{emit_real_normal_form, RealNormalForm};
pub use resonance::{
    constraint_for, resonant_monomials, CoeffConstraint, InvolutionTag, MonomialKind, ResMonomial, ResonanceSpec,
    RevInvolution, Unit,
};
pub use survival::{
    pure_resonance_constraints, survival_analysis, survival_analysis_with, BasePairing, GroupChoice, HypothesisStatus,
    NormalFormResult,
};
pub use tables::{check_all_rows, constraint_table_rows, RowCheck, RowFlag, Stated, TableRow};
