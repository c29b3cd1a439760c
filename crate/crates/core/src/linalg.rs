// SPDX-License-Identifier: Apache-2.0

//! Cyclic Jacobi eigensolver for small real symmetric matrices.
//!
//! Each sweep visits every off-diagonal pair `(p, q)` once and applies the
//! plane rotation that annihilates `a_pq`. Rotations are accumulated into the
//! eigenvector matrix. For 3×3 and 4×4 inputs two or three sweeps reach
//! machine precision; the loop stops when the off-diagonal Frobenius norm
//! drops below `1e-14 · max(1, ‖A‖_F)` or after [`MAX_SWEEPS`].
//!
//! Complex Hermitian matrices are handled through the real symmetric
//! embedding `[[Re H, −Im H], [Im H, Re H]]`, whose spectrum is that of `H`
//! with every eigenvalue doubled.

use nalgebra::{Matrix4, SMatrix, SVector, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub const MAX_SWEEPS: usize = 50;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigenpairs sorted by descending eigenvalue; eigenvectors are the columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen<const N: usize> {
    pub values: SVector<f64, N>,
    pub vectors: SMatrix<f64, N, N>,
    pub sweeps: usize,
}

impl<const N: usize> SymmetricEigen<N> {
    pub fn reconstruct(&self) -> SMatrix<f64, N, N> {
        self.vectors * SMatrix::from_diagonal(&self.values) * self.vectors.transpose()
    }
}

fn max_asymmetry<const N: usize>(a: &SMatrix<f64, N, N>) -> f64 {
    (a - a.transpose()).amax()
}

fn off_diagonal_norm<const N: usize>(a: &SMatrix<f64, N, N>) -> f64 {
    let mut sum = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Eigen-decomposition of a symmetric matrix. Rejects inputs whose
/// asymmetry exceeds [`tol::ALGEBRAIC`] (scaled by the largest entry when that exceeds 1).
pub fn jacobi_eigen<const N: usize>(a: &SMatrix<f64, N, N>) -> Result<SymmetricEigen<N>> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let asym = max_asymmetry(a);
    if asym > tol::ALGEBRAIC * a.amax().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }

    let mut a = (a + a.transpose()) * 0.5;
    let mut v = SMatrix::<f64, N, N>::identity();
    let threshold = OFF_DIAGONAL_TOL * a.norm().max(1.0);
    let mut sweeps = 0;

    while sweeps < MAX_SWEEPS && off_diagonal_norm(&a) >= threshold {
        sweeps += 1;
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // A ← A·P, then A ← Pᵀ·A, with P_pp = P_qq = c, P_pq = s, P_qp = −s.
                for k in 0..N {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..N {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = SVector::<f64, N>::from_fn(|i, _| a[(order[i], order[i])]);
    let vectors = SMatrix::<f64, N, N>::from_fn(|r, c| v[(r, order[c])]);
    Ok(SymmetricEigen { values, vectors, sweeps })
}

/// Eigen-decomposition of the 4×4 quadratic form behind the quasi-inverse.
pub fn sym_eigen4(q: &Matrix4<f64>) -> Result<SymmetricEigen<4>> {
    jacobi_eigen(q)
}

/// Eigenvalues of a 4×4 Hermitian matrix, descending.
pub fn hermitian_eigenvalues4(h: &Matrix4<Complex64>) -> Result<Vector4<f64>> {
    let embedded = SMatrix::<f64, 8, 8>::from_fn(|r, c| {
        let z = h[(r % 4, c % 4)];
        match (r < 4, c < 4) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let eig = jacobi_eigen(&embedded)?;
    Ok(Vector4::from_fn(|i, _| eig.values[2 * i]))
}
