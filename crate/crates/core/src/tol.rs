// SPDX-License-Identifier: Apache-2.0

//! Numerical thresholds shared across the crate.
//!
//! Two regimes: identities that hold in exact arithmetic are checked at
//! [`ALGEBRAIC`], while anything that validates user-supplied numbers
//! (probabilities, Kraus entries typed from a file) uses [`INPUT`].

/// Algebraic identities on 2×2, 3×3 and 4×4 double-precision matrices.
pub const ALGEBRAIC: f64 = 1e-12;

/// Validation of user-supplied data.
pub const INPUT: f64 = 1e-9;

/// Maximum entry of `Σ K†K − 1` accepted for a channel.
pub const TRACE_PRESERVATION: f64 = 1e-9;

/// Smallest Choi eigenvalue accepted as positive semidefinite.
pub const CP_MIN_EIGENVALUE: f64 = -1e-9;

/// Agreement required between the closed-form average fidelity expressions.
pub const FIDELITY_ROUTES: f64 = 1e-10;

/// Relative gap `(λ₁ − λ₂) / max(|λ₁|, 1e-12)` below which the top of `Q` counts as degenerate.
pub const DEGENERACY: f64 = 1e-9;

/// `λ_max` at or below this is treated as "no improvement possible".
pub const NO_GAIN: f64 = 1e-12;
