//! Numerical tolerance ladder, fixed once for the whole crate.
//!
//! Double precision with nothing larger than 4x4 matrices leaves a wide
//! margin, so two levels suffice: plain arithmetic identities sit at
//! [`ALGEBRAIC`], anything mediated by an eigendecomposition at [`SPECTRAL`].

/// Plain arithmetic identities: products, traces, tensor algebra,
/// normalization checks.
pub const ALGEBRAIC: f64 = 1e-12;

/// Results that pass through an eigendecomposition: propagators, Gibbs
/// weights, Wootters eigenvalues, reconstruction residuals.
pub const SPECTRAL: f64 = 1e-10;

/// Negative eigenvalues of theoretically positive matrices are clamped to
/// zero when smaller than this; anything larger is reported as numerical
/// instability rather than silently absorbed.
pub const EIGENVALUE_CLAMP: f64 = 1e-9;

/// Eigenvalues of theoretically PSD products whose magnitude falls below
/// this fraction of the matrix scale are rounding noise and snap to zero.
/// Without the floor, sqrt turns 1e-15 of noise into 3e-8 of error.
pub const EIGENVALUE_FLOOR: f64 = 1e-13;

/// Sweep-surface symmetry comparisons (reflections, rotations, period checks).
pub const SYMMETRY: f64 = 1e-8;
