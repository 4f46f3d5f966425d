//! Simplex geometry and symmetric inverse M-matrix classification.
//!
//! The crate connects two views of the same objects: an n-simplex given by
//! its vertices, and the symmetric positive definite "vertex Gramians" that
//! encode it up to rigid motion. On top of that bridge sit matrix-class
//! predicates (Stieltjes, diagonally dominant, ultrametric, type-D,
//! nonblocking), dual-hull and sub-orthocentric geometry, and constructive
//! completely positive factorizations.
//!
//! All predicates run over exact rationals by default; a tolerance-guarded
//! floating backend is available behind the same [`scalar::Scalar`] trait.

pub mod classes;
pub mod cp;
pub mod dual;
pub mod mat;
pub mod scalar;
pub mod simplex;

pub use mat::{MatError, RatMat, SymMat};
pub use scalar::{Fp, Rat, Scalar, Sign};
pub use simplex::{Simplex, VertexGramian};

/// Version string stamped into every CLI JSON payload.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
