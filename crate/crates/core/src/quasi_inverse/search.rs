// SPDX-License-Identifier: Apache-2.0

//! Oracles that bypass the eigensolver: random search over unitaries with
//! local refinement, and random mixtures of unitaries.

use std::cmp::Ordering;

use nalgebra::{Vector3, Vector4};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::QForm;
use crate::channel::{compose, QubitChannel};
use crate::error::{Error, Result};
use crate::fidelity::avg_fidelity;
use crate::pauli::UnitaryRotation;
use crate::sampling::{random_unitary, seeded_rng, uniform_simplex};

const SEARCH_BLOCK: usize = 8192;
const MIXTURE_BLOCK: usize = 64;
const COARSE_POINTS: usize = 16;
const GOLDEN_TOL: f64 = 1e-12;

pub const MIN_SEARCH_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceOptimum {
    pub unitary: UnitaryRotation,
    pub delta_f: f64,
}

#[derive(Clone, Copy)]
struct Candidate {
    value: f64,
    x: [f64; 4],
}

impl Candidate {
    fn new(q: &QForm, x: [f64; 4]) -> Self {
        Candidate { value: q.gain(&x), x }
    }

    /// Higher value wins; exact ties go to the lexicographically larger point.
    fn better(self, other: Candidate) -> Candidate {
        let by_value = self.value.total_cmp(&other.value);
        let ord = by_value.then_with(|| {
            self.x.iter().zip(&other.x).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        });
        if ord == Ordering::Less { other } else { self }
    }
}

fn sample_sphere<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    loop {
        let v = Vector4::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-6 {
            let v = v / n;
            return [v[0], v[1], v[2], v[3]];
        }
    }
}

/// Maximize along the great circle `cos t·x + sin t·u`, `t ∈ [−π/2, π/2)`.
/// The gain is a quadratic form, hence π-periodic in `t`: a coarse grid
/// brackets the maximum and golden-section search narrows it.
fn refine_along(q: &QForm, best: Candidate, u: &Vector4<f64>) -> Candidate {
    let x = Vector4::from(best.x);
    let point = |t: f64| {
        let p = x * t.cos() + u * t.sin();
        let p = p / p.norm();
        [p[0], p[1], p[2], p[3]]
    };
    let f = |t: f64| q.gain(&point(t));

    let step = std::f64::consts::PI / COARSE_POINTS as f64;
    let mut t_best = 0.0;
    let mut f_best = best.value;
    for k in 0..COARSE_POINTS {
        let t = -std::f64::consts::FRAC_PI_2 + k as f64 * step;
        let v = f(t);
        if v > f_best {
            f_best = v;
            t_best = t;
        }
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (t_best - step, t_best + step);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > GOLDEN_TOL {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let refined = Candidate::new(q, point(0.5 * (lo + hi)));
    let coarse = Candidate::new(q, point(t_best));
    best.better(coarse).better(refined)
}

fn refine(q: &QForm, mut best: Candidate, rounds: usize) -> Candidate {
    for _ in 0..rounds {
        let before = best.value;
        for axis in 0..4 {
            let x = Vector4::from(best.x);
            let e = Vector4::from_fn(|i, _| if i == axis { 1.0 } else { 0.0 });
            let u = e - x * x[axis];
            let n = u.norm();
            if n < 1e-12 {
                continue;
            }
            best = refine_along(q, best, &(u / n));
        }
        if best.value - before <= 0.0 {
            break;
        }
    }
    best
}

/// Best unitary correction found by uniform sampling of the 3-sphere
/// followed by `refine_steps` rounds of great-circle line searches, one per
/// coordinate direction. The gain is evaluated directly as
/// `⅔(xᵀB̂x + x0 v·x)`. The identity is always among the candidates.
pub fn brute_force_best_unitary(
    ch: &QubitChannel,
    samples: usize,
    refine_steps: usize,
    seed: u64,
) -> Result<BruteForceOptimum> {
    if samples < MIN_SEARCH_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "brute-force search needs at least {MIN_SEARCH_SAMPLES} samples, got {samples}"
        )));
    }
    let q = QForm::from_kraus_data(ch);
    let blocks = samples.div_ceil(SEARCH_BLOCK);
    let start = Candidate::new(&q, [1.0, 0.0, 0.0, 0.0]);
    let sampled = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = seeded_rng(seed, block as u64);
            let len = SEARCH_BLOCK.min(samples - block * SEARCH_BLOCK);
            (0..len).map(|_| Candidate::new(&q, sample_sphere(&mut rng))).fold(start, Candidate::better)
        })
        .reduce(|| start, Candidate::better);

    let best = refine(&q, sampled, refine_steps);
    let unitary = UnitaryRotation::new(best.x[0], Vector3::new(best.x[1], best.x[2], best.x[3]))?;
    Ok(BruteForceOptimum { delta_f: q.delta_f(&unitary), unitary })
}

/// `F̄(Σ p_i V_i ∘ ℰ) − F̄(ℰ)`, computed through the composed Kraus list.
pub fn mixture_delta_f(ch: &QubitChannel, parts: &[(f64, UnitaryRotation)]) -> Result<f64> {
    let unitaries: Vec<QubitChannel> = parts.iter().map(|(_, v)| QubitChannel::unitary(v)).collect();
    let weighted: Vec<(f64, &QubitChannel)> = parts.iter().map(|(w, _)| *w).zip(&unitaries).collect();
    let correction = QubitChannel::mixture(&weighted)?;
    Ok(avg_fidelity(&compose(&correction, ch))? - avg_fidelity(ch)?)
}

/// Largest gain found over `samples` random mixtures of `mixture_size`
/// Haar-random unitaries with uniformly distributed weights. A falsification
/// probe: the result should never exceed the best single unitary. The
/// identity, a trivial mixture, is always admissible, so the result is ≥ 0.
pub fn best_unital_mixture(ch: &QubitChannel, mixture_size: usize, samples: usize, seed: u64) -> Result<f64> {
    if mixture_size < 2 {
        return Err(Error::InvalidInput(format!("mixture size must be at least 2, got {mixture_size}")));
    }
    let blocks = samples.div_ceil(MIXTURE_BLOCK);
    let best = (0..blocks)
        .into_par_iter()
        .map(|block| -> Result<f64> {
            let mut rng = seeded_rng(seed, block as u64);
            let len = MIXTURE_BLOCK.min(samples - block * MIXTURE_BLOCK);
            let mut best = 0.0f64;
            for _ in 0..len {
                let weights = uniform_simplex(&mut rng, mixture_size);
                let parts: Vec<(f64, UnitaryRotation)> =
                    weights.into_iter().map(|w| (w, random_unitary(&mut rng))).collect();
                best = best.max(mixture_delta_f(ch, &parts)?);
            }
            Ok(best)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(best.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{make_amplitude_damping, make_diagonal, make_pauli};
    use crate::quasi_inverse::quasi_inverse;
    use crate::tol;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn identity_channel_gains_nothing() {
        let bf = brute_force_best_unitary(&QubitChannel::identity(), 10_000, 100, 1).unwrap();
        assert!(bf.delta_f.abs() <= 1e-9);
        assert_eq!(best_unital_mixture(&QubitChannel::identity(), 2, 200, 1).unwrap(), 0.0);
    }

    #[test]
    fn pauli_brute_force() {
        let ch = make_pauli(0.1, 0.6, 0.2, 0.1).unwrap();
        let bf = brute_force_best_unitary(&ch, 100_000, 100, 7).unwrap();
        assert_abs_diff_eq!(bf.delta_f, 1.0 / 3.0, epsilon = 1e-6);
    }

    #[test]
    fn twisted_damping_brute_force() {
        let ch = make_amplitude_damping(0.6, true).unwrap();
        let bf = brute_force_best_unitary(&ch, 100_000, 100, 3).unwrap();
        assert_abs_diff_eq!(bf.delta_f, 0.2, epsilon = 1e-6);
        assert_abs_diff_eq!(bf.unitary.angle(), FRAC_PI_4, epsilon = 1e-3);
        assert_abs_diff_eq!(bf.unitary.axis().unwrap().into_inner(), Vector3::z(), epsilon = 1e-3);
    }

    #[test]
    fn brute_force_is_seeded() {
        let ch = make_amplitude_damping(-0.3, true).unwrap();
        let a = brute_force_best_unitary(&ch, 20_000, 10, 5).unwrap();
        let b = brute_force_best_unitary(&ch, 20_000, 10, 5).unwrap();
        assert_eq!(a, b);
        assert!(brute_force_best_unitary(&ch, 999, 10, 5).is_err());
    }

    #[test]
    fn edge_mixture_matches_unitary_optimum() {
        let ch = make_diagonal(0.0, 0.0, -1.0).unwrap();
        let optimum = quasi_inverse(&ch, tol::DEGENERACY).unwrap().delta_f;
        for p in [0.0, 0.25, 0.5, 0.9] {
            let parts = [(1.0 - p, UnitaryRotation::pauli(0)), (p, UnitaryRotation::pauli(1))];
            assert_abs_diff_eq!(mixture_delta_f(&ch, &parts).unwrap(), optimum, epsilon = 1e-15);
        }
    }

    #[test]
    fn mixtures_never_beat_unitaries() {
        let ch = make_amplitude_damping(0.6, true).unwrap();
        let best = best_unital_mixture(&ch, 3, 500, 2).unwrap();
        assert!(best <= 0.2 + 1e-9);
        assert!(best_unital_mixture(&ch, 1, 10, 2).is_err());
    }
}
