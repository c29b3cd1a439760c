// SPDX-License-Identifier: Apache-2.0

//! Pauli-basis algebra for single-qubit operators.
//!
//! Every 2×2 complex matrix can be written as `K = a·1 + b·σ` with a complex
//! scalar `a` and a complex 3-vector `b`. [`PauliForm`] stores that pair and
//! multiplies in closed form:
//!
//! ```text
//! (a + b·σ)(c + d·σ) = (ac + b·d) + (a d + c b + i b×d)·σ
//! ```
//!
//! Unitaries are carried as unit quaternions `V = x0 + i x·σ`
//! ([`UnitaryRotation`]), pure and mixed states as Bloch vectors.
//!
//! # Rotation convention
//!
//! The SO(3) image of a unitary is defined by
//!
//! ```text
//! V σ_β V† = Σ_α R_αβ σ_α
//! ```
//!
//! so that the Bloch vector of `VρV†` is `R r`. With `V = exp(iφ x̂·σ)` this is
//! a rotation by `−2φ` about `x̂`.

use std::ops::Mul;

use nalgebra::{Matrix2, Matrix3, Rotation3, Unit, Vector3};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{ensure_finite, Error, Result};
use crate::tol;

/// A 2×2 complex matrix, row-major when written out.
pub type Mat2 = Matrix2<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity2() -> Mat2 {
    Mat2::identity()
}

/// `σ_x`, `σ_y`, `σ_z` for `axis` 0, 1, 2.
///
/// # Panics
///
/// If `axis > 2`.
pub fn sigma(axis: usize) -> Mat2 {
    match axis {
        0 => Mat2::new(ZERO, ONE, ONE, ZERO),
        1 => Mat2::new(ZERO, -I, I, ZERO),
        2 => Mat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli axis out of range: {axis}"),
    }
}

fn mat2_entries(m: &Mat2) -> impl Iterator<Item = f64> + '_ {
    m.iter().flat_map(|c| [c.re, c.im])
}

/// An operator `a·1 + b·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliForm {
    pub a: Complex64,
    pub b: Vector3<Complex64>,
}

impl PauliForm {
    pub fn new(a: Complex64, b: Vector3<Complex64>) -> Self {
        PauliForm { a, b }
    }

    pub fn identity() -> Self {
        PauliForm::new(ONE, Vector3::zeros())
    }

    /// `a = ½ Tr K`, `b_α = ½ Tr(σ_α K)`.
    pub fn from_matrix(k: &Mat2) -> Result<Self> {
        ensure_finite("operator", mat2_entries(k))?;
        let (k00, k01, k10, k11) = (k[(0, 0)], k[(0, 1)], k[(1, 0)], k[(1, 1)]);
        Ok(PauliForm {
            a: (k00 + k11) * 0.5,
            b: Vector3::new((k01 + k10) * 0.5, I * (k01 - k10) * 0.5, (k00 - k11) * 0.5),
        })
    }

    pub fn to_matrix(&self) -> Mat2 {
        let PauliForm { a, b } = *self;
        Mat2::new(a + b.z, b.x - I * b.y, b.x + I * b.y, a - b.z)
    }

    /// `K† = a* + b*·σ`, since the Pauli matrices are Hermitian.
    pub fn adjoint(&self) -> Self {
        PauliForm::new(self.a.conj(), self.b.map(|c| c.conj()))
    }

    pub fn scale(&self, s: f64) -> Self {
        PauliForm::new(self.a * s, self.b * Complex64::from(s))
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.iter().all(|c| c.is_finite())
    }

    /// `⟨φ|K|φ⟩ = a + b·n` for the pure state with Bloch vector `n`.
    pub fn expectation(&self, n: &Vector3<f64>) -> Complex64 {
        self.a + self.b.x * n.x + self.b.y * n.y + self.b.z * n.z
    }
}

impl Mul for PauliForm {
    type Output = PauliForm;

    fn mul(self, rhs: PauliForm) -> PauliForm {
        let (a, b, c, d) = (self.a, self.b, rhs.a, rhs.b);
        let dot = b.x * d.x + b.y * d.y + b.z * d.z;
        let cross = Vector3::new(
            b.y * d.z - b.z * d.y,
            b.z * d.x - b.x * d.z,
            b.x * d.y - b.y * d.x,
        );
        PauliForm {
            a: a * c + dot,
            b: d * a + b * c + cross * I,
        }
    }
}

pub fn pauli_decompose(k: &Mat2) -> Result<PauliForm> {
    PauliForm::from_matrix(k)
}

pub fn pauli_compose(p: &PauliForm) -> Mat2 {
    p.to_matrix()
}

/// A single-qubit unitary `V = x0 + i x·σ` with `x0² + |x|² = 1`.
///
/// `V` and `−V` act identically by conjugation, so the stored representative
/// always has `x0 ≥ 0`; when `x0` vanishes the first nonzero component of `x`
/// is made positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryRotation {
    x0: f64,
    x: Vector3<f64>,
}

// Below this a component is treated as zero when choosing the sign.
const SIGN_EPS: f64 = 1e-14;

impl UnitaryRotation {
    /// Builds `x0 + i x·σ`, renormalizing inputs that are unit within
    /// [`tol::INPUT`] and rejecting anything further off.
    pub fn new(x0: f64, x: Vector3<f64>) -> Result<Self> {
        ensure_finite("unitary", std::iter::once(x0).chain(x.iter().copied()))?;
        let norm = (x0 * x0 + x.norm_squared()).sqrt();
        if (norm - 1.0).abs() > tol::INPUT {
            return Err(Error::InvalidInput(format!(
                "unitary parameters must satisfy x0² + |x|² = 1, got norm {norm}"
            )));
        }
        Ok(Self::canonical(x0 / norm, x / norm))
    }

    fn canonical(x0: f64, x: Vector3<f64>) -> Self {
        let flip = if x0.abs() > SIGN_EPS {
            x0 < 0.0
        } else {
            x.iter().find(|c| c.abs() > SIGN_EPS).is_some_and(|&c| c < 0.0)
        };
        if flip {
            UnitaryRotation { x0: -x0, x: -x }
        } else {
            UnitaryRotation { x0, x }
        }
    }

    pub fn identity() -> Self {
        UnitaryRotation { x0: 1.0, x: Vector3::zeros() }
    }

    /// `σ_x`, `σ_y`, `σ_z` up to the global phase `i`.
    pub fn pauli(axis: usize) -> Self {
        let mut x = Vector3::zeros();
        x[axis] = 1.0;
        UnitaryRotation { x0: 0.0, x }
    }

    /// `V = exp(iφ n̂·σ)`, i.e. `x0 = cos φ`, `x = sin φ · n̂`.
    pub fn from_axis_angle(axis: &Vector3<f64>, phi: f64) -> Result<Self> {
        ensure_finite("axis", axis.iter().copied().chain(std::iter::once(phi)))?;
        if (axis.norm() - 1.0).abs() > tol::INPUT {
            return Err(Error::InvalidInput(format!(
                "rotation axis must be a unit vector, got norm {}",
                axis.norm()
            )));
        }
        let (s, c) = phi.sin_cos();
        Ok(Self::canonical(c, axis * s))
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn x(&self) -> &Vector3<f64> {
        &self.x
    }

    /// The parameters as a 4-vector `(x0, x1, x2, x3)`.
    pub fn to_array(&self) -> [f64; 4] {
        [self.x0, self.x.x, self.x.y, self.x.z]
    }

    /// `φ ∈ [0, π/2]` with `cos φ = x0`.
    pub fn angle(&self) -> f64 {
        self.x.norm().atan2(self.x0)
    }

    /// Unit vector along `x`; `None` for the identity.
    pub fn axis(&self) -> Option<Unit<Vector3<f64>>> {
        Unit::try_new(self.x, SIGN_EPS)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.x.norm() <= tol
    }

    pub fn to_pauli_form(&self) -> PauliForm {
        PauliForm::new(Complex64::from(self.x0), self.x.map(|c| Complex64::new(0.0, c)))
    }

    pub fn to_matrix(&self) -> Mat2 {
        self.to_pauli_form().to_matrix()
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(self.x0, -self.x)
    }

    /// The SO(3) matrix of conjugation by `V`; see the module docs for the sign convention.
    pub fn rotation(&self) -> Rotation3<f64> {
        let (w, x) = (self.x0, self.x);
        let m = Matrix3::identity() * (w * w - x.norm_squared()) + x * x.transpose() * 2.0
            - x.cross_matrix() * (2.0 * w);
        Rotation3::from_matrix_unchecked(m)
    }
}

impl Mul for UnitaryRotation {
    type Output = UnitaryRotation;

    /// Operator product `V₁V₂`.
    fn mul(self, rhs: UnitaryRotation) -> UnitaryRotation {
        let (x0, x, y0, y) = (self.x0, self.x, rhs.x0, rhs.x);
        UnitaryRotation::canonical(x0 * y0 - x.dot(&y), y * x0 + x * y0 - x.cross(&y))
    }
}

pub fn unitary_from_axis_angle(axis: &Vector3<f64>, phi: f64) -> Result<UnitaryRotation> {
    UnitaryRotation::from_axis_angle(axis, phi)
}

pub fn rotation_of_unitary(v: &UnitaryRotation) -> Rotation3<f64> {
    v.rotation()
}

/// A Bloch vector `r` with `ρ = ½(1 + r·σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(Vector3<f64>);

impl BlochVector {
    /// Accepts `|r| ≤ 1` within [`tol::INPUT`].
    pub fn new(r: Vector3<f64>) -> Result<Self> {
        ensure_finite("Bloch vector", r.iter().copied())?;
        if r.norm() > 1.0 + tol::INPUT {
            return Err(Error::InvalidInput(format!(
                "Bloch vector is unphysical: |r| = {} > 1",
                r.norm()
            )));
        }
        Ok(BlochVector(r))
    }

    pub(crate) fn new_unchecked(r: Vector3<f64>) -> Self {
        BlochVector(r)
    }

    /// Reads `r_α = Tr(σ_α ρ)` off a density matrix. The imaginary parts are dropped.
    pub fn from_density(rho: &Mat2) -> Result<Self> {
        let p = PauliForm::from_matrix(rho)?;
        BlochVector::new(p.b.map(|c| 2.0 * c.re))
    }

    pub fn vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn to_density(&self) -> Mat2 {
        PauliForm::new(Complex64::from(0.5), self.0.map(|c| Complex64::from(0.5 * c))).to_matrix()
    }

    pub fn is_pure(&self) -> bool {
        (self.0.norm() - 1.0).abs() <= tol::ALGEBRAIC
    }
}

/// A uniformly distributed pure state: `z` uniform in `[−1, 1]`, azimuth uniform in `[0, 2π)`.
pub fn haar_bloch_sample<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let azimuth: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    let (s, c) = azimuth.sin_cos();
    BlochVector(Vector3::new(rho * c, rho * s, z))
}
