// SPDX-License-Identifier: Apache-2.0

//! Quasi-inverse of a diagonal unital channel `M = diag(λ1, λ2, λ3)` by
//! comparing it with the four vertices of the tetrahedron of allowed
//! `λ`-vectors. The vertices are the identity and the three Pauli
//! conjugations; composing with vertex `k` flips the signs of two of the
//! `λ`'s, and the best vertex is the one maximizing
//!
//! ```text
//! λ1 + λ2 + λ3,   λ1 − λ2 − λ3,   λ2 − λ1 − λ3,   λ3 − λ1 − λ2
//! ```
//!
//! The eigenvalues of `Q` are these expressions minus the first, over four.

use nalgebra::{Matrix3, Vector3, Vector4};

use super::{is_degenerate, QuasiInverseResult};
use crate::channel::{fujiwara_algoet, AffineMap};
use crate::error::Result;
use crate::fidelity::composed_avg_fidelity;
use crate::pauli::UnitaryRotation;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    Identity,
    SigmaX,
    SigmaY,
    SigmaZ,
}

impl Vertex {
    pub const ALL: [Vertex; 4] = [Vertex::Identity, Vertex::SigmaX, Vertex::SigmaY, Vertex::SigmaZ];

    pub fn unitary(&self) -> UnitaryRotation {
        match self {
            Vertex::Identity => UnitaryRotation::identity(),
            Vertex::SigmaX => UnitaryRotation::pauli(0),
            Vertex::SigmaY => UnitaryRotation::pauli(1),
            Vertex::SigmaZ => UnitaryRotation::pauli(2),
        }
    }

    /// Signs the vertex conjugation puts on `(λ1, λ2, λ3)`.
    pub fn signs(&self) -> Vector3<f64> {
        match self {
            Vertex::Identity => Vector3::new(1.0, 1.0, 1.0),
            Vertex::SigmaX => Vector3::new(1.0, -1.0, -1.0),
            Vertex::SigmaY => Vector3::new(-1.0, 1.0, -1.0),
            Vertex::SigmaZ => Vector3::new(-1.0, -1.0, 1.0),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Vertex::Identity => "identity",
            Vertex::SigmaX => "sigma_x",
            Vertex::SigmaY => "sigma_y",
            Vertex::SigmaZ => "sigma_z",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricQuasiInverse {
    pub vertex: Vertex,
    /// Every vertex whose expression is within 1e-9 of the best, including `vertex`.
    pub ties: Vec<Vertex>,
    /// The four vertex expressions, in [`Vertex::ALL`] order.
    pub expressions: [f64; 4],
    pub result: QuasiInverseResult,
}

pub fn geometric_quasi_inverse(l1: f64, l2: f64, l3: f64) -> Result<GeometricQuasiInverse> {
    fujiwara_algoet([l1, l2, l3])?;
    let lambda = Vector3::new(l1, l2, l3);
    let expressions = Vertex::ALL.map(|v| v.signs().dot(&lambda));

    let mut best = 0;
    for k in 1..4 {
        if expressions[k] > expressions[best] {
            best = k;
        }
    }
    let top = expressions[best];
    let ties: Vec<Vertex> = (0..4)
        .filter(|&k| top - expressions[k] <= tol::DEGENERACY)
        .map(|k| Vertex::ALL[k])
        .collect();

    let mut q_eigen: [f64; 4] = expressions.map(|e| (e - expressions[0]) / 4.0);
    q_eigen.sort_by(|a, b| b.total_cmp(a));
    let (lambda_max, second) = (q_eigen[0], q_eigen[1]);

    let vertex = if lambda_max <= tol::NO_GAIN { Vertex::Identity } else { Vertex::ALL[best] };
    let delta_f = 2.0 / 3.0 * lambda_max.max(0.0);
    let delta_f = if vertex == Vertex::Identity { 0.0 } else { delta_f };
    let f_before = 0.5 * (1.0 + (l1 + l2 + l3) / 3.0);

    let corrected = AffineMap::new(Matrix3::from_diagonal(&vertex.signs()), Vector3::zeros());
    let f_after = composed_avg_fidelity(&corrected, &AffineMap::diagonal(l1, l2, l3));

    let result = QuasiInverseResult {
        v_opt: vertex.unitary(),
        lambda_max,
        delta_f,
        f_before,
        f_after,
        degenerate: is_degenerate(lambda_max, second, tol::DEGENERACY),
        gap: lambda_max - second,
        eigenvalues: Vector4::from(q_eigen),
    };
    Ok(GeometricQuasiInverse { vertex, ties, expressions, result })
}
