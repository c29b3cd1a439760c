// SPDX-License-Identifier: Apache-2.0

//! Constructors for the standard channel families.

use nalgebra::Vector3;
use num_complex::Complex64;

use super::QubitChannel;
use crate::error::{ensure_finite, Error, Result};
use crate::pauli::PauliForm;
use crate::tol;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Corners `u₀ … u₃` of the regular tetrahedron inscribed in the Bloch sphere,
/// before normalization by `1/√3`.
pub const TETRAHEDRON_AXES: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [1.0, -1.0, -1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
];

fn check_probability(name: &str, p: f64) -> Result<f64> {
    if !p.is_finite() || !(-tol::INPUT..=1.0 + tol::INPUT).contains(&p) {
        return Err(Error::InvalidInput(format!("{name} = {p} is not a probability")));
    }
    Ok(p.clamp(0.0, 1.0))
}

fn pauli_kraus(axis: usize, weight: f64) -> PauliForm {
    let mut b = Vector3::zeros();
    b[axis] = Complex64::from(weight.sqrt());
    PauliForm::new(ZERO, b)
}

/// `ρ ↦ p₀ρ + p₁σxρσx + p₂σyρσy + p₃σzρσz`.
pub fn make_pauli(p0: f64, p1: f64, p2: f64, p3: f64) -> Result<QubitChannel> {
    let p = [
        check_probability("p0", p0)?,
        check_probability("p1", p1)?,
        check_probability("p2", p2)?,
        check_probability("p3", p3)?,
    ];
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > tol::INPUT {
        return Err(Error::InvalidInput(format!(
            "Pauli probabilities must sum to 1, got {total}"
        )));
    }
    let mut kraus = vec![PauliForm::identity().scale(p[0].sqrt())];
    kraus.extend((0..3).map(|axis| pauli_kraus(axis, p[axis + 1])));
    QubitChannel::from_kraus(kraus)
}

/// `ρ ↦ p₀ρ + p Σᵢ UᵢρUᵢ†` with `Uᵢ = exp(−iθσᵢ/2)` and `p₀ = 1 − 3p`.
pub fn make_mixed_rotation(p: f64, theta: f64) -> Result<QubitChannel> {
    ensure_finite("theta", [theta])?;
    if !p.is_finite() || !(-tol::INPUT..=1.0 / 3.0 + tol::INPUT).contains(&p) {
        return Err(Error::InvalidInput(format!("mixed rotation needs 0 ≤ p ≤ 1/3, got {p}")));
    }
    let p = p.clamp(0.0, 1.0 / 3.0);
    let p0 = (1.0 - 3.0 * p).max(0.0);
    let (s, c) = (theta / 2.0).sin_cos();
    let mut kraus = vec![PauliForm::identity().scale(p0.sqrt())];
    for axis in 0..3 {
        let mut b = Vector3::zeros();
        b[axis] = Complex64::new(0.0, -s);
        kraus.push(PauliForm::new(Complex64::from(c), b).scale(p.sqrt()));
    }
    QubitChannel::from_kraus(kraus)
}

/// `ρ ↦ qρ + Σᵢ pᵢ (uᵢ·σ) ρ (uᵢ·σ)` with `q = 1 − Σpᵢ` and `uᵢ` the
/// tetrahedron corners of [`TETRAHEDRON_AXES`].
pub fn make_tetrahedron(p0: f64, p1: f64, p2: f64, p3: f64) -> Result<QubitChannel> {
    let p = [
        check_probability("p0", p0)?,
        check_probability("p1", p1)?,
        check_probability("p2", p2)?,
        check_probability("p3", p3)?,
    ];
    let q = 1.0 - p.iter().sum::<f64>();
    if q < -tol::INPUT {
        return Err(Error::InvalidInput(format!(
            "tetrahedron weights must sum to at most 1, got {}",
            1.0 - q
        )));
    }
    let mut kraus = vec![PauliForm::identity().scale(q.max(0.0).sqrt())];
    for (axis, weight) in TETRAHEDRON_AXES.iter().zip(p) {
        let u = Vector3::from(*axis) / 3f64.sqrt();
        kraus.push(PauliForm::new(ZERO, u.map(Complex64::from)).scale(weight.sqrt()));
    }
    QubitChannel::from_kraus(kraus)
}

/// The two-parameter tetrahedron family: `p₀ = p₃ = p`, `p₁ = p₂ = p′`.
///
/// With this assignment `B` has off-diagonal entry `(2p − 2p′)/3` and the
/// eigenvector of its `4p/3` eigenvalue is `(x̂ + ŷ)/√2`.
pub fn make_tetrahedron_pair(p: f64, p_prime: f64) -> Result<QubitChannel> {
    make_tetrahedron(p, p_prime, p_prime, p)
}

/// Amplitude damping with `A₀ = diag(1, γ)` (or `diag(1, iγ)` when `twisted`)
/// and `A₁ = [[0, √(1−γ²)], [0, 0]]`.
pub fn make_amplitude_damping(gamma: f64, twisted: bool) -> Result<QubitChannel> {
    if !gamma.is_finite() || gamma.abs() >= 1.0 {
        return Err(Error::InvalidInput(format!("amplitude damping needs |γ| < 1, got {gamma}")));
    }
    let lower = if twisted { Complex64::new(0.0, gamma) } else { Complex64::from(gamma) };
    let a0 = PauliForm::new((ONE + lower) * 0.5, Vector3::new(ZERO, ZERO, (ONE - lower) * 0.5));
    // [[0, s], [0, 0]] = s(σx + iσy)/2
    let s = (1.0 - gamma * gamma).sqrt();
    let a1 = PauliForm::new(ZERO, Vector3::new(Complex64::from(s / 2.0), Complex64::new(0.0, s / 2.0), ZERO));
    QubitChannel::from_kraus(vec![a0, a1])
}

/// Smallest slack among `1 − |λᵢ|`, `(1+λ₃)² − (λ₁+λ₂)²` and `(1−λ₃)² − (λ₁−λ₂)²`.
/// Negative means outside the tetrahedron.
pub fn fujiwara_algoet_margin(l: [f64; 3]) -> f64 {
    let [l1, l2, l3] = l;
    let plus = (1.0 + l3).powi(2) - (l1 + l2).powi(2);
    let minus = (1.0 - l3).powi(2) - (l1 - l2).powi(2);
    l.iter().map(|x| 1.0 - x.abs()).fold(plus.min(minus), f64::min)
}

/// Checks that `diag(λ)` lies in the tetrahedron of unital qubit channels,
/// naming the first violated inequality.
pub fn fujiwara_algoet(l: [f64; 3]) -> Result<()> {
    ensure_finite("λ", l)?;
    let [l1, l2, l3] = l;
    for (i, x) in l.iter().enumerate() {
        if x.abs() > 1.0 + tol::INPUT {
            return Err(Error::NotCompletelyPositive(format!("|λ{}| ≤ 1 violated (λ{} = {x})", i + 1, i + 1)));
        }
    }
    let (lhs, rhs) = ((1.0 + l3).powi(2), (l1 + l2).powi(2));
    if lhs < rhs - tol::INPUT {
        return Err(Error::NotCompletelyPositive(format!(
            "(1+λ3)² ≥ (λ1+λ2)² violated: {lhs} < {rhs}"
        )));
    }
    let (lhs, rhs) = ((1.0 - l3).powi(2), (l1 - l2).powi(2));
    if lhs < rhs - tol::INPUT {
        return Err(Error::NotCompletelyPositive(format!(
            "(1−λ3)² ≥ (λ1−λ2)² violated: {lhs} < {rhs}"
        )));
    }
    Ok(())
}

/// The unital channel with `M = diag(λ₁, λ₂, λ₃)`, realized as a Pauli channel.
pub fn make_diagonal(l1: f64, l2: f64, l3: f64) -> Result<QubitChannel> {
    fujiwara_algoet([l1, l2, l3])?;
    let p0 = 0.25 * (1.0 + l1 + l2 + l3);
    let p1 = 0.25 * (1.0 + l1 - l2 - l3);
    let p2 = 0.25 * (1.0 - l1 + l2 - l3);
    let p3 = 0.25 * (1.0 - l1 - l2 + l3);
    make_pauli(p0.max(0.0), p1.max(0.0), p2.max(0.0), p3.max(0.0))
}
