//! Exact dynamics of two qubits coupled by the magnetic dipolar interaction.
//!
//! The crate keeps two independent evolution paths, closed-form states and a
//! numeric spectral propagator, and cross-validates one against the other.
//! On top of those it provides the standard two-qubit quantifiers
//! (Wootters concurrence, l1-norm coherence, purity) and a deterministic
//! sweep engine that tabulates them over initial-state and time grids.

pub mod dynamics;
mod error;
pub mod linalg;
pub mod measures;
pub mod model;
pub mod states;
pub mod sweep;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
