//! Simplex generators, theorem-verification suites, extremal searches, and
//! conjecture campaigns with persistent counterexample logs.

pub mod conjecture;
pub mod gen;
pub mod record;
pub mod search;
pub mod theorems;

use thiserror::Error;

pub use conjecture::{test_conjecture_kfacets, test_conjecture_suborthocentric};
pub use gen::{derive_seed, generate, Family, GenParams};
pub use record::{JsonlLog, TrialRecord, Verdict};
pub use search::extremal_search;
pub use theorems::verify_theorem_suite;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Gen(#[from] gen::GenError),
    #[error(transparent)]
    Mat(#[from] simplicia::mat::MatError),
    #[error(transparent)]
    Simplex(#[from] simplicia::simplex::SimplexError),
    #[error(transparent)]
    Dual(#[from] simplicia::dual::DualError),
    #[error(transparent)]
    Cp(#[from] simplicia::cp::CpError),
    #[error("proven bound violated; witness preserved: {0:?}")]
    TheoremViolation(Box<record::TrialRecord>),
    #[error("unsupported dimension {n}: {reason}")]
    UnsupportedDimension { n: usize, reason: String },
}
