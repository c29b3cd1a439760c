// SPDX-License-Identifier: Apache-2.0

//! Seeded random generators and random channels for the oracles and tests.

use nalgebra::{SMatrix, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channel::QubitChannel;
use crate::pauli::{Mat2, UnitaryRotation};

pub use crate::pauli::haar_bloch_sample;

/// Stream `stream` of the ChaCha8 generator seeded with `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform on S³ (Haar on SU(2)): four independent normals, normalized.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> UnitaryRotation {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            let x = Vector3::new(q[1], q[2], q[3]) / norm;
            return UnitaryRotation::new(q[0] / norm, x).expect("normalized");
        }
    }
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A random channel with `n_kraus` Kraus operators (1 to 4), taken as the
/// 2×2 blocks of a random isometry `V: C² → C^{2n}` (Gram–Schmidt on a
/// complex Gaussian matrix), so `Σ K†K = V†V = 1`.
pub fn random_channel<R: Rng + ?Sized>(rng: &mut R, n_kraus: usize) -> QubitChannel {
    assert!((1..=4).contains(&n_kraus), "n_kraus must be in 1..=4");
    let mut cols: [SMatrix<Complex64, 8, 1>; 2] = std::array::from_fn(|_| SMatrix::zeros());
    for col in cols.iter_mut() {
        for r in 0..2 * n_kraus {
            col[r] = complex_normal(rng);
        }
    }
    let n0 = cols[0].norm();
    cols[0] /= Complex64::from(n0);
    let overlap = cols[0].dotc(&cols[1]);
    let projected = cols[1] - cols[0] * overlap;
    let n1 = projected.norm();
    cols[1] = projected / Complex64::from(n1);

    let ops: Vec<Mat2> = (0..n_kraus)
        .map(|k| Mat2::from_fn(|r, c| cols[c][2 * k + r]))
        .collect();
    QubitChannel::from_matrices(&ops).expect("isometry blocks form a trace-preserving set")
}

/// Dirichlet(1, …, 1) weights: normalized standard exponentials.
pub fn uniform_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x| x / total).collect()
}
