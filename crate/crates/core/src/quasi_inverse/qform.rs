// SPDX-License-Identifier: Apache-2.0

//! The 4×4 quadratic form whose top eigenpair gives the optimal unitary.
//!
//! Writing the correction as `V = x0 + i x·σ`, the fidelity gain of `V ∘ ℰ` is
//!
//! ```text
//! ΔF̄ = ⅔ (xᵀ B̂ x + x0 v·x) = ⅔ (x0, x) Q (x0, x)ᵀ,    Q = ½ [[0, vᵀ], [v, 2B̂]]
//! ```
//!
//! with `B̂ = B − 1 + Tr(B)·1` and `v = i⟨a*b − ab*⟩`. Both ingredients can
//! also be read off the affine map: `B̂ = ½(S − Tr(M)·1)` and `v` is the axial
//! vector of the antisymmetric part of `M`.

use nalgebra::{Matrix3, Matrix4, Vector3};

use crate::channel::{affine_closed_form, AffineMap, QubitChannel};
use crate::error::{Error, Result};
use crate::pauli::UnitaryRotation;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QForm {
    pub q: Matrix4<f64>,
    pub b_hat: Matrix3<f64>,
    pub v: Vector3<f64>,
}

impl QForm {
    pub fn assemble(b_hat: Matrix3<f64>, v: Vector3<f64>) -> Self {
        let mut q = Matrix4::zeros();
        for i in 0..3 {
            q[(0, i + 1)] = 0.5 * v[i];
            q[(i + 1, 0)] = 0.5 * v[i];
            for j in 0..3 {
                q[(i + 1, j + 1)] = 0.5 * (b_hat[(i, j)] + b_hat[(j, i)]);
            }
        }
        QForm { q, b_hat, v }
    }

    /// From Kraus coefficients: `B̂ = B − 1 + Tr(B)·1`, `v = i⟨a*b − ab*⟩`.
    pub fn from_kraus_data(ch: &QubitChannel) -> Self {
        let cf = affine_closed_form(ch);
        let b_hat = cf.b + Matrix3::identity() * (cf.b.trace() - 1.0);
        Self::assemble(b_hat, cf.split.v)
    }

    /// From the affine map alone: `B̂ = ½(S − Tr(M)·1)`.
    pub fn from_affine(map: &AffineMap) -> Self {
        let split = map.split();
        let b_hat = (split.s - Matrix3::identity() * map.m.trace()) * 0.5;
        Self::assemble(b_hat, split.v)
    }

    /// `⅔ (xᵀ B̂ x + x0 v·x)` for an arbitrary 4-vector `(x0, x)`.
    pub fn gain(&self, x: &[f64; 4]) -> f64 {
        let xv = Vector3::new(x[1], x[2], x[3]);
        2.0 / 3.0 * ((xv.transpose() * self.b_hat * xv)[0] + x[0] * self.v.dot(&xv))
    }

    /// Fidelity gain of the correction `V ∘ ℰ`.
    pub fn delta_f(&self, v: &UnitaryRotation) -> f64 {
        self.gain(&v.to_array())
    }
}

/// `Q` from Kraus data, cross-checked against the affine-map route.
pub fn q_form(ch: &QubitChannel) -> Result<QForm> {
    let kraus = QForm::from_kraus_data(ch);
    let affine = QForm::from_affine(ch.affine());
    let difference = (kraus.q - affine.q).amax();
    if difference > tol::ALGEBRAIC + 4.0 * ch.tp_residual() {
        return Err(Error::Inconsistent { what: "Kraus-route and affine-route Q matrices", difference });
    }
    Ok(kraus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{make_amplitude_damping, make_mixed_rotation};
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector4;

    #[test]
    fn amplitude_damping_q() {
        for g in [-0.7, -0.5, 0.2, 0.6] {
            let q = q_form(&make_amplitude_damping(g, false).unwrap()).unwrap();
            let d = -g * (g + 1.0);
            let expected = Matrix4::from_diagonal(&Vector4::new(0.0, d, d, -2.0 * g)) * 0.5;
            assert_abs_diff_eq!(q.q, expected, epsilon = 1e-15);
        }
    }

    #[test]
    fn twisted_amplitude_damping_q() {
        for g in [-0.4, 0.6] {
            let q = q_form(&make_amplitude_damping(g, true).unwrap()).unwrap();
            let mut expected = Matrix4::from_diagonal(&Vector4::new(0.0, -g * g, -g * g, 0.0));
            expected[(0, 3)] = g;
            expected[(3, 0)] = g;
            assert_abs_diff_eq!(q.q, expected * 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn mixed_rotation_q() {
        let (p, theta) = (0.3, 1.3);
        let q = q_form(&make_mixed_rotation(p, theta).unwrap()).unwrap();
        let v = p * theta.sin();
        let d = 4.0 * p * (theta / 2.0).sin().powi(2) - 1.0;
        for i in 1..4 {
            assert_abs_diff_eq!(q.q[(0, i)], v / 2.0, epsilon = 1e-15);
            assert_abs_diff_eq!(q.q[(i, i)], d, epsilon = 1e-15);
            for j in 1..4 {
                if i != j {
                    assert_abs_diff_eq!(q.q[(i, j)], 0.0, epsilon = 1e-15);
                }
            }
        }
        assert_eq!(q.q[(0, 0)], 0.0);
    }

    #[test]
    fn gain_is_zero_at_identity() {
        let q = q_form(&make_mixed_rotation(0.2, 0.7).unwrap()).unwrap();
        assert_eq!(q.delta_f(&UnitaryRotation::identity()), 0.0);
    }
}
