// SPDX-License-Identifier: Apache-2.0

//! Optimal unitary correction of a qubit channel.
//!
//! For a qubit every quasi-inverse can be taken unitary, so the search runs
//! over `V = x0 + i x·σ` on the unit 3-sphere. The gain `ΔF̄` is a quadratic
//! form in `(x0, x)`, maximized by the top eigenvector of the 4×4 matrix `Q`
//! ([`q_form`]). When the top eigenvalue is not positive no unitary helps and
//! the identity is returned.

mod geometric;
mod qform;
mod search;

pub use geometric::{geometric_quasi_inverse, GeometricQuasiInverse, Vertex};
pub use qform::{q_form, QForm};
pub use search::{
    best_unital_mixture, brute_force_best_unitary, mixture_delta_f, BruteForceOptimum, MIN_SEARCH_SAMPLES,
};

use nalgebra::Vector4;

use crate::channel::{AffineMap, QubitChannel};
use crate::error::{Error, Result};
use crate::fidelity::{avg_fidelity, composed_avg_fidelity};
use crate::linalg::sym_eigen4;
use crate::pauli::UnitaryRotation;
use crate::tol;

/// Shape of the optimal correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Correction {
    /// No unitary improves the fidelity.
    Identity,
    /// `x0 = 0`: a π-rotation (an inversion through an axis).
    PiRotation,
    /// Any other rotation angle.
    Rotation,
}

impl Correction {
    pub fn label(&self) -> &'static str {
        match self {
            Correction::Identity => "identity",
            Correction::PiRotation => "pi_rotation",
            Correction::Rotation => "rotation",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiInverseResult {
    pub v_opt: UnitaryRotation,
    pub lambda_max: f64,
    pub delta_f: f64,
    pub f_before: f64,
    pub f_after: f64,
    /// Top two eigenvalues of `Q` coincide within the requested relative tolerance.
    pub degenerate: bool,
    /// `λ1 − λ2`.
    pub gap: f64,
    /// Spectrum of `Q`, descending.
    pub eigenvalues: Vector4<f64>,
}

impl QuasiInverseResult {
    pub fn correction(&self) -> Correction {
        if self.delta_f == 0.0 {
            Correction::Identity
        } else if self.v_opt.x0().abs() <= tol::INPUT {
            Correction::PiRotation
        } else {
            Correction::Rotation
        }
    }

    /// Affine map of the correcting unitary.
    pub fn correction_map(&self) -> AffineMap {
        AffineMap::new(*self.v_opt.rotation().matrix(), nalgebra::Vector3::zeros())
    }
}

pub(crate) fn is_degenerate(l1: f64, l2: f64, degeneracy_tol: f64) -> bool {
    (l1 - l2) / l1.abs().max(tol::ALGEBRAIC) < degeneracy_tol
}

/// Top eigenpair of `Q`. Pass [`tol::DEGENERACY`] for the default degeneracy test.
pub fn quasi_inverse(ch: &QubitChannel, degeneracy_tol: f64) -> Result<QuasiInverseResult> {
    let q = q_form(ch)?;
    let eig = sym_eigen4(&q.q)?;
    let (l1, l2) = (eig.values[0], eig.values[1]);
    let f_before = avg_fidelity(ch)?;

    let (v_opt, delta_f) = if l1 <= tol::NO_GAIN {
        (UnitaryRotation::identity(), 0.0)
    } else {
        let e = eig.vectors.column(0);
        let v = UnitaryRotation::new(e[0], nalgebra::Vector3::new(e[1], e[2], e[3]))?;
        (v, 2.0 / 3.0 * l1)
    };

    let result = QuasiInverseResult {
        v_opt,
        lambda_max: l1,
        delta_f,
        f_before,
        f_after: f_before + delta_f,
        degenerate: is_degenerate(l1, l2, degeneracy_tol),
        gap: l1 - l2,
        eigenvalues: eig.values,
    };

    let direct = composed_avg_fidelity(&result.correction_map(), ch.affine());
    let difference = (direct - result.f_after).abs();
    if difference > tol::FIDELITY_ROUTES + 4.0 * ch.tp_residual() {
        return Err(Error::Inconsistent { what: "corrected fidelity against composed affine map", difference });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{
        make_amplitude_damping, make_diagonal, make_mixed_rotation, make_pauli, make_tetrahedron_pair,
    };
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector3;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn qi(ch: &QubitChannel) -> QuasiInverseResult {
        quasi_inverse(ch, tol::DEGENERACY).unwrap()
    }

    #[test]
    fn pauli_example() {
        let r = qi(&make_pauli(0.1, 0.6, 0.2, 0.1).unwrap());
        assert_abs_diff_eq!(r.delta_f, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.f_before, 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(r.f_after, 2.2 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.v_opt.to_array()[..], [0.0, 1.0, 0.0, 0.0][..], epsilon = 1e-12);
        assert_eq!(r.correction(), Correction::PiRotation);
        assert!(!r.degenerate);
    }

    #[test]
    fn amplitude_damping_signs() {
        let r = qi(&make_amplitude_damping(0.5, false).unwrap());
        assert_eq!(r.delta_f, 0.0);
        assert!(r.v_opt.is_identity(0.0));
        assert_eq!(r.correction(), Correction::Identity);

        let r = qi(&make_amplitude_damping(-0.5, false).unwrap());
        assert_abs_diff_eq!(r.lambda_max, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.delta_f, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.f_before, 0.375, epsilon = 1e-12);
        assert_abs_diff_eq!(r.f_after, 0.375 + 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.v_opt.to_array()[..], [0.0, 0.0, 0.0, 1.0][..], epsilon = 1e-12);
    }

    #[test]
    fn twisted_amplitude_damping() {
        let r = qi(&make_amplitude_damping(0.6, true).unwrap());
        assert_abs_diff_eq!(r.lambda_max, 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(r.delta_f, 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(r.f_after, 0.76, epsilon = 1e-12);
        assert_abs_diff_eq!(r.v_opt.angle(), FRAC_PI_4, epsilon = 1e-12);
        assert_abs_diff_eq!(r.v_opt.axis().unwrap().into_inner(), Vector3::z(), epsilon = 1e-12);
        assert_eq!(r.correction(), Correction::Rotation);
    }

    #[test]
    fn mixed_rotation_spot_value() {
        let r = qi(&make_mixed_rotation(1.0 / 3.0, 2.0 * std::f64::consts::FRAC_PI_3).unwrap());
        assert_abs_diff_eq!(r.lambda_max, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(r.delta_f, 1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.v_opt.angle(), FRAC_PI_4, epsilon = 1e-12);
        let axis = Vector3::repeat(1.0 / 3f64.sqrt());
        assert_abs_diff_eq!(r.v_opt.axis().unwrap().into_inner(), axis, epsilon = 1e-12);
    }

    #[test]
    fn edge_channel_is_degenerate() {
        let ch = make_diagonal(0.0, 0.0, -1.0).unwrap();
        let r = qi(&ch);
        assert!(r.degenerate);
        assert_abs_diff_eq!(r.delta_f, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.v_opt.x0(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.v_opt.x()[2], 0.0, epsilon = 1e-12);
        // Any π-rotation about an axis in the x–y plane does as well.
        let q = q_form(&ch).unwrap();
        for angle in [0.0, 0.3, 1.2, 2.9] {
            let v = UnitaryRotation::new(0.0, Vector3::new(f64::cos(angle), f64::sin(angle), 0.0)).unwrap();
            assert_abs_diff_eq!(q.delta_f(&v), 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn tetrahedron_pair_axis() {
        let r = qi(&make_tetrahedron_pair(0.3, 0.1).unwrap());
        assert_abs_diff_eq!(r.delta_f, 0.4 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.v_opt.x0(), 0.0, epsilon = 1e-12);
        let axis = Vector3::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0);
        assert_abs_diff_eq!(*r.v_opt.x(), axis, epsilon = 1e-12);
    }

    #[test]
    fn identity_channel_is_left_alone() {
        let r = qi(&QubitChannel::identity());
        assert_eq!(r.delta_f, 0.0);
        assert_eq!(r.f_after, 1.0);
        assert_eq!(r.correction(), Correction::Identity);
    }
}
