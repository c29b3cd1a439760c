// SPDX-License-Identifier: Apache-2.0

//! Complete-positivity checks through the Choi matrix
//! `C = Σ_ij |i⟩⟨j| ⊗ ℰ(|i⟩⟨j|)`.
//!
//! The matrix is left unnormalized, so a trace-preserving map has `Tr C = 2`.
//! It can be built from a Kraus list or from a bare affine map; the second
//! form is what decides whether an arbitrary `(M, t)` is a channel at all.

use nalgebra::{Matrix2, Matrix4, Vector3, Vector4};
use num_complex::Complex64;

use super::{AffineMap, QubitChannel};
use crate::error::Result;
use crate::linalg::hermitian_eigenvalues4;
use crate::pauli::{identity2, sigma, Mat2, PauliForm};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    pub matrix: Matrix4<Complex64>,
    /// Descending.
    pub eigenvalues: Vector4<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CpReport {
    pub completely_positive: bool,
    pub min_eigenvalue: f64,
    pub eigenvalues: Vector4<f64>,
    pub trace: f64,
}

fn unit(i: usize, j: usize) -> Mat2 {
    let mut e = Matrix2::zeros();
    e[(i, j)] = Complex64::new(1.0, 0.0);
    e
}

fn assemble(image: impl Fn(&Mat2) -> Mat2) -> Result<ChoiMatrix> {
    let mut matrix = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let block = image(&unit(i, j));
            for r in 0..2 {
                for c in 0..2 {
                    matrix[(2 * i + r, 2 * j + c)] = block[(r, c)];
                }
            }
        }
    }
    let eigenvalues = hermitian_eigenvalues4(&matrix)?;
    Ok(ChoiMatrix { matrix, eigenvalues })
}

pub fn choi_of(ch: &QubitChannel) -> Result<ChoiMatrix> {
    assemble(|x| ch.apply_density(x))
}

/// Choi matrix of the linear extension of `r ↦ M r + t` to all 2×2 matrices:
/// writing `X = ½(x₀ + x·σ)`, the image is `½(x₀(1 + t·σ) + (M x)·σ)`.
pub fn choi_of_affine(map: &AffineMap) -> Result<ChoiMatrix> {
    assemble(|x| {
        let p = PauliForm::from_matrix(x).expect("unit matrices are finite");
        let x0 = p.a * 2.0;
        let xv = p.b * Complex64::new(2.0, 0.0);
        let mx = Vector3::from_fn(|a, _| {
            (0..3).map(|b| xv[b] * map.m[(a, b)]).sum::<Complex64>()
        });
        let mut out = identity2() * x0;
        for a in 0..3 {
            out += sigma(a) * (x0 * map.t[a] + mx[a]);
        }
        out * Complex64::new(0.5, 0.0)
    })
}

impl ChoiMatrix {
    pub fn report(&self) -> CpReport {
        let min_eigenvalue = self.eigenvalues[3];
        CpReport {
            completely_positive: min_eigenvalue >= tol::CP_MIN_EIGENVALUE,
            min_eigenvalue,
            eigenvalues: self.eigenvalues,
            trace: self.matrix.trace().re,
        }
    }

    pub fn max_hermitian_defect(&self) -> f64 {
        (self.matrix - self.matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// CP test for a bare affine map: minimum Choi eigenvalue ≥ −1e-9.
pub fn is_completely_positive(map: &AffineMap) -> Result<CpReport> {
    Ok(choi_of_affine(map)?.report())
}
