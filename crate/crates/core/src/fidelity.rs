// SPDX-License-Identifier: Apache-2.0

//! Average input-output fidelity
//!
//! ```text
//! F̄(ℰ) = ∫ dφ ⟨φ|ℰ(|φ⟩⟨φ|)|φ⟩
//! ```
//!
//! over the unitarily invariant measure on pure states. For a qubit this has
//! several equivalent closed forms, in Kraus coefficients, in the `B` matrix
//! and in the affine matrix:
//!
//! ```text
//! F̄ = ⟨a*a⟩ + ⅓⟨b·b*⟩ = 1 − ⅔⟨b·b*⟩ = ⅓(1 + 2⟨a*a⟩) = 1 − ⅔ Tr B = ½(1 + ⅓ Tr M)
//! ```
//!
//! [`avg_fidelity`] evaluates all of them and refuses to answer if they
//! disagree. [`mc_avg_fidelity`] samples the defining integral directly.

use nalgebra::Matrix3;
use rayon::prelude::*;

use crate::channel::{AffineMap, QubitChannel};
use crate::error::{Error, Result};
use crate::pauli::{haar_bloch_sample, BlochVector};
use crate::sampling::seeded_rng;
use crate::tol;

pub use crate::channel::b_matrix;

/// Every closed-form expression for `F̄`, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityRoutes {
    /// `⟨a*a⟩ + ⅓⟨b·b*⟩`
    pub kraus_ab: f64,
    /// `1 − ⅔⟨b·b*⟩`
    pub kraus_b: f64,
    /// `⅓(1 + 2⟨a*a⟩)`
    pub kraus_a: f64,
    /// `1 − ⅔ Tr B`
    pub b_trace: f64,
    /// `½(1 + ⅓ Tr M)`
    pub affine: f64,
}

impl FidelityRoutes {
    pub fn of(ch: &QubitChannel) -> Self {
        let aa: f64 = ch.kraus().iter().map(|k| k.a.norm_sqr()).sum();
        let bb: f64 = ch.kraus().iter().flat_map(|k| k.b.iter()).map(|c| c.norm_sqr()).sum();
        FidelityRoutes {
            kraus_ab: aa + bb / 3.0,
            kraus_b: 1.0 - 2.0 * bb / 3.0,
            kraus_a: (1.0 + 2.0 * aa) / 3.0,
            b_trace: 1.0 - 2.0 * b_matrix(ch).trace() / 3.0,
            affine: 0.5 * (1.0 + ch.affine().m.trace() / 3.0),
        }
    }

    pub fn values(&self) -> [f64; 5] {
        [self.kraus_ab, self.kraus_b, self.kraus_a, self.b_trace, self.affine]
    }

    /// Largest pairwise difference.
    pub fn spread(&self) -> f64 {
        let v = self.values();
        let hi = v.iter().copied().fold(f64::MIN, f64::max);
        let lo = v.iter().copied().fold(f64::MAX, f64::min);
        hi - lo
    }
}

/// `1 − ⅔⟨b·b*⟩`, after checking it against the other closed forms.
///
/// The closed forms only coincide for exactly trace-preserving Kraus sets, so
/// the agreement threshold of 1e-10 is widened by the channel's own
/// trace-preservation residual.
pub fn avg_fidelity(ch: &QubitChannel) -> Result<f64> {
    let routes = FidelityRoutes::of(ch);
    let spread = routes.spread();
    if spread > tol::FIDELITY_ROUTES + 4.0 * ch.tp_residual() {
        return Err(Error::Inconsistent { what: "average fidelity closed forms", difference: spread });
    }
    Ok(routes.kraus_b)
}

/// `F̄(ℰ_N ∘ ℰ_M) = ½(1 + ⅓ Tr(N M))`. Translations do not enter.
pub fn composed_avg_fidelity(n: &AffineMap, m: &AffineMap) -> f64 {
    0.5 * (1.0 + (n.m * m.m).trace() / 3.0)
}

/// `⟨φ|ℰ(|φ⟩⟨φ|)|φ⟩ = ½(1 + n·(M n + t))` for a pure state with Bloch vector `n`.
pub fn pure_state_fidelity(map: &AffineMap, n: &BlochVector) -> f64 {
    0.5 * (1.0 + n.vector().dot(&map.apply(n.vector())))
}

/// The same integrand by 2×2 arithmetic, `Tr(ρ ℰ(ρ))`.
pub fn pure_state_fidelity_kraus(ch: &QubitChannel, n: &BlochVector) -> f64 {
    let rho = n.to_density();
    (rho * ch.apply_density(&rho)).trace().re
}

/// Monte Carlo estimate of `F̄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√samples`.
    pub stderr: f64,
    pub samples: usize,
}

impl FidelityEstimate {
    /// `|mean − value|` in units of the standard error.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = (self.mean - value).abs();
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff <= tol::ALGEBRAIC {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Samples per random stream. Fixed so results do not depend on the thread count.
pub const MC_BLOCK: usize = 4096;

pub const MC_MIN_SAMPLES: usize = 100;

#[derive(Clone, Copy)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let d = x - self.mean;
        self.mean += d / self.count;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if other.count == 0.0 {
            return self;
        }
        let count = self.count + other.count;
        let d = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + d * other.count / count,
            m2: self.m2 + other.m2 + d * d * self.count * other.count / count,
        }
    }
}

/// Direct sampling of the fidelity integral over uniform pure states.
///
/// Samples are drawn in blocks of [`MC_BLOCK`]; block `k` uses stream `k` of
/// the generator seeded with `seed`, and blocks are merged in order, so the
/// estimate is a function of `(ch, n, seed)` alone.
pub fn mc_avg_fidelity(ch: &QubitChannel, n: usize, seed: u64) -> Result<FidelityEstimate> {
    if n < MC_MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "Monte Carlo needs at least {MC_MIN_SAMPLES} samples, got {n}"
        )));
    }
    let map = *ch.affine();
    let blocks = n.div_ceil(MC_BLOCK);
    let partial: Vec<Moments> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = seeded_rng(seed, block as u64);
            let len = MC_BLOCK.min(n - block * MC_BLOCK);
            let mut m = Moments { count: 0.0, mean: 0.0, m2: 0.0 };
            for _ in 0..len {
                m.push(pure_state_fidelity(&map, &haar_bloch_sample(&mut rng)));
            }
            m
        })
        .collect();
    let total = partial
        .into_iter()
        .fold(Moments { count: 0.0, mean: 0.0, m2: 0.0 }, Moments::merge);
    let variance = (total.m2 / (total.count - 1.0)).max(0.0);
    Ok(FidelityEstimate { mean: total.mean, stderr: (variance / total.count).sqrt(), samples: n })
}

/// `B` for a channel whose affine matrix is symmetric: `¼(2M + 1 − Tr M)`.
pub fn b_from_symmetric_affine(m: &Matrix3<f64>) -> Matrix3<f64> {
    (m * 2.0 + Matrix3::identity() * (1.0 - m.trace())) * 0.25
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{make_amplitude_damping, make_pauli, make_tetrahedron_pair};
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector3;

    #[test]
    fn closed_form_examples() {
        assert_abs_diff_eq!(avg_fidelity(&QubitChannel::identity()).unwrap(), 1.0, epsilon = 1e-15);
        let pauli = make_pauli(0.1, 0.6, 0.2, 0.1).unwrap();
        assert_abs_diff_eq!(avg_fidelity(&pauli).unwrap(), 0.4, epsilon = 1e-15);
        let ad = make_amplitude_damping(-0.5, false).unwrap();
        assert_abs_diff_eq!(avg_fidelity(&ad).unwrap(), 0.375, epsilon = 1e-15);
        let twisted = make_amplitude_damping(0.6, true).unwrap();
        assert_abs_diff_eq!(avg_fidelity(&twisted).unwrap(), 0.56, epsilon = 1e-15);
    }

    #[test]
    fn b_matrix_examples() {
        assert_eq!(b_matrix(&QubitChannel::identity()), Matrix3::zeros());
        let b = b_matrix(&make_tetrahedron_pair(0.3, 0.1).unwrap());
        assert_abs_diff_eq!(b[(0, 1)], 0.4 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b[(1, 0)], b[(0, 1)], epsilon = 0.0);
    }

    #[test]
    fn symmetric_affine_b() {
        for ch in [make_pauli(0.1, 0.6, 0.2, 0.1).unwrap(), make_amplitude_damping(0.4, false).unwrap()] {
            assert_abs_diff_eq!(b_from_symmetric_affine(&ch.affine().m), b_matrix(&ch), epsilon = 1e-15);
        }
    }

    #[test]
    fn composed_examples() {
        let m = AffineMap::diagonal(0.4, -0.4, -0.6);
        assert_abs_diff_eq!(composed_avg_fidelity(&AffineMap::identity(), &m), 0.4, epsilon = 1e-15);
        let x = AffineMap::diagonal(1.0, -1.0, -1.0);
        assert_abs_diff_eq!(composed_avg_fidelity(&x, &m), 0.5 * (1.0 + 1.4 / 3.0), epsilon = 1e-15);
        let edge = AffineMap::diagonal(0.0, 0.0, -1.0);
        assert_abs_diff_eq!(composed_avg_fidelity(&x, &edge), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn pure_state_integrand_routes_agree() {
        let ch = make_amplitude_damping(0.6, true).unwrap();
        let n = BlochVector::new(Vector3::new(0.6, 0.0, -0.8)).unwrap();
        assert_abs_diff_eq!(
            pure_state_fidelity(ch.affine(), &n),
            pure_state_fidelity_kraus(&ch, &n),
            epsilon = 1e-15
        );
    }

    #[test]
    fn monte_carlo_identity_is_exact() {
        let est = mc_avg_fidelity(&QubitChannel::identity(), 10_000, 3).unwrap();
        assert_abs_diff_eq!(est.mean, 1.0, epsilon = 1e-12);
        assert!(est.stderr < 1e-12);
        assert_eq!(est.samples, 10_000);
    }

    #[test]
    fn monte_carlo_is_seeded() {
        let ch = make_pauli(0.1, 0.6, 0.2, 0.1).unwrap();
        let a = mc_avg_fidelity(&ch, 10_000, 11).unwrap();
        let b = mc_avg_fidelity(&ch, 10_000, 11).unwrap();
        let c = mc_avg_fidelity(&ch, 10_000, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.mean, c.mean);
        assert!(mc_avg_fidelity(&ch, 99, 0).is_err());
    }

    #[test]
    fn slightly_non_trace_preserving_input_is_accepted() {
        let k = crate::pauli::PauliForm::identity().scale((1.0 + 5e-10f64).sqrt());
        let ch = QubitChannel::from_kraus(vec![k]).unwrap();
        assert!(avg_fidelity(&ch).is_ok());
    }
}
