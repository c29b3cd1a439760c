// SPDX-License-Identifier: Apache-2.0

//! Qubit channels, their average fidelity, and the unitary correction that
//! maximizes it.
//!
//! A channel is given by Kraus operators `K_i = a_i + b_i·σ` and induces an
//! affine map `r ↦ M r + t` on Bloch vectors. Its average fidelity depends
//! only on `Tr M`. Following the channel with a unitary `V` changes `Tr M`
//! by a quadratic form in the components of `V`, so the best correction is
//! the top eigenvector of a 4×4 symmetric matrix.
//!
//! ```
//! use qubit_qi::channel::make_amplitude_damping;
//! use qubit_qi::quasi_inverse::quasi_inverse;
//! use qubit_qi::tol;
//!
//! let ch = make_amplitude_damping(-0.5, false)?;
//! let qi = quasi_inverse(&ch, tol::DEGENERACY)?;
//! assert!((qi.f_before - 0.375).abs() < 1e-12);
//! assert!((qi.delta_f - 1.0 / 3.0).abs() < 1e-12);
//! // The optimal correction is σz.
//! assert!((qi.v_opt.x()[2] - 1.0).abs() < 1e-12);
//! # Ok::<(), qubit_qi::Error>(())
//! ```

pub mod channel;
pub mod error;
pub mod fidelity;
pub mod linalg;
pub mod pauli;
pub mod quasi_inverse;
pub mod sampling;
pub mod tol;

pub use channel::{AffineMap, QubitChannel};
pub use error::{Error, Result};
pub use fidelity::avg_fidelity;
pub use pauli::{BlochVector, PauliForm, UnitaryRotation};
pub use quasi_inverse::{quasi_inverse, QuasiInverseResult};
