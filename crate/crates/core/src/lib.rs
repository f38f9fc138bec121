//! Isotropy orbits of irreducible compact Hermitian symmetric spaces.
//!
//! The symbolic layers (`rootsys`, `spaces`, `orbits`, `einstein`) work in
//! exact rational arithmetic. The `oracle` module builds explicit matrix
//! models of the classical families and measures the same quantities
//! numerically.

pub mod einstein;
pub mod error;
pub mod oracle;
pub mod orbits;
pub mod rational;
pub mod rootsys;
pub mod spaces;

pub use error::{Error, Result};
pub use rational::Rational;
