//! Exact classification of dihedral reversing-symmetry involutions for the
//! 4-dimensional rotation generator `A(α, β)`, and normal forms of vector
//! fields that are reversible-equivariant under the resulting groups.
//!
//! Everything numeric is generic over [`Scalar`]; the exact path uses
//! [`Rational`] and [`QuadScalar`] (elements of `Q(√d)`).

pub mod builtins;
pub mod error;
pub mod groups;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod normalform;
pub mod poly;
pub mod quad;
pub mod scalar;
pub mod solver;
pub mod vecfield;

pub use error::Error;
pub use matrix::Mat4;
pub use quad::QuadScalar;
pub use scalar::{GaussianRational, Rational, Scalar};

/// Matrices over `Q(√d)`.
pub type QMat4 = Mat4<QuadScalar>;
/// Matrices over `Q`.
pub type RMat4 = Mat4<Rational>;
pub type F64Mat4 = Mat4<f64>;
pub type F32Mat4 = Mat4<f32>;
