//! Numerical matrix-Lie-algebra oracle for the classical families.
//!
//! Everything here is floating point and independent of the exact tables:
//! the restricted roots, multiplicities and bracket norms are measured from
//! explicit matrices and then compared against the symbolic layers.

pub mod algebra;
pub mod checks;
pub mod linalg;
pub mod report;
pub mod spectrum;

pub use algebra::MatrixAlgebra;
pub use checks::{bracket_norms, contact_rank, curvature_checks, ricci_polar_numeric, verify_j_action, ContactRank};
pub use report::{classical_suite, run_suite, Check, VerificationReport};
pub use spectrum::{restricted_spectrum, RestrictedSpectrum, RootSpace};
