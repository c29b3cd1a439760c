// SPDX-License-Identifier: Apache-2.0

//! Qubit channels in Kraus and affine (Bloch-space) form.
//!
//! A [`QubitChannel`] is an ordered list of Kraus operators in [`PauliForm`].
//! Construction validates trace preservation through the two Pauli-basis
//! conditions
//!
//! ```text
//! ⟨a*a⟩ + ⟨b*·b⟩ = 1,    ⟨a b*⟩ + ⟨a* b⟩ + i⟨b* × b⟩ = 0
//! ```
//!
//! (`⟨·⟩` sums over Kraus operators) and caches the affine map
//! `r ↦ M r + t` computed from `M_αβ = ½Tr(σ_α ℰ(σ_β))`, `t_α = ½Tr(σ_α ℰ(1))`.
//!
//! Kraus lists are not canonicalized. Two channels are the same channel when
//! their affine maps agree; see [`QubitChannel::approx_eq`].

mod choi;
mod families;

pub use choi::{choi_of, choi_of_affine, is_completely_positive, ChoiMatrix, CpReport};
pub use families::{
    fujiwara_algoet, fujiwara_algoet_margin, make_amplitude_damping, make_diagonal, make_mixed_rotation, make_pauli,
    make_tetrahedron, make_tetrahedron_pair, TETRAHEDRON_AXES,
};

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{identity2, sigma, BlochVector, Mat2, PauliForm, UnitaryRotation};
use crate::tol;

/// The Bloch-space action `r ↦ M r + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub m: Matrix3<f64>,
    pub t: Vector3<f64>,
}

impl AffineMap {
    pub fn new(m: Matrix3<f64>, t: Vector3<f64>) -> Self {
        AffineMap { m, t }
    }

    pub fn identity() -> Self {
        AffineMap::new(Matrix3::identity(), Vector3::zeros())
    }

    pub fn diagonal(l1: f64, l2: f64, l3: f64) -> Self {
        AffineMap::new(Matrix3::from_diagonal(&Vector3::new(l1, l2, l3)), Vector3::zeros())
    }

    pub fn apply(&self, r: &Vector3<f64>) -> Vector3<f64> {
        self.m * r + self.t
    }

    /// The map of `next ∘ self`: `(M₂M₁, M₂t₁ + t₂)`.
    pub fn then(&self, next: &AffineMap) -> AffineMap {
        AffineMap::new(next.m * self.m, next.m * self.t + next.t)
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        self.t.norm() <= tol
    }

    /// Largest entry-wise difference to `other`, over both `M` and `t`.
    pub fn max_difference(&self, other: &AffineMap) -> f64 {
        (self.m - other.m).amax().max((self.t - other.t).amax())
    }

    /// Symmetric/antisymmetric split `M = S + A` with `A_αβ = −ε_αβγ v_γ`.
    pub fn split(&self) -> SplitAffine {
        let s = (self.m + self.m.transpose()) * 0.5;
        let a = (self.m - self.m.transpose()) * 0.5;
        let v = Vector3::new(a[(2, 1)], a[(0, 2)], a[(1, 0)]);
        SplitAffine { s, a, v }
    }
}

/// `M = S + A`, with `A w = v × w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitAffine {
    pub s: Matrix3<f64>,
    pub a: Matrix3<f64>,
    pub v: Vector3<f64>,
}

/// The affine map, its split and the `B` matrix, all evaluated from Kraus
/// coefficients in closed form rather than by applying the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineClosedForm {
    pub affine: AffineMap,
    pub split: SplitAffine,
    pub b: Matrix3<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QubitChannel {
    kraus: Vec<PauliForm>,
    affine: AffineMap,
    tp_residual: f64,
}

/// Largest entry of `Σ K†K − 1`, from the Pauli-basis form of the two conditions.
fn trace_preservation_residual(kraus: &[PauliForm]) -> f64 {
    let mut scalar = Complex64::new(-1.0, 0.0);
    let mut vector = Vector3::<Complex64>::zeros();
    let i = Complex64::i();
    for k in kraus {
        let (a, b) = (k.a, k.b);
        scalar += a.conj() * a + b.iter().map(|c| c.norm_sqr()).sum::<f64>();
        let bc = b.map(|c| c.conj());
        let cross = Vector3::new(
            bc.y * b.z - bc.z * b.y,
            bc.z * b.x - bc.x * b.z,
            bc.x * b.y - bc.y * b.x,
        );
        vector += bc * a + b * a.conj() + cross * i;
    }
    // ΣK†K − 1 = scalar·1 + vector·σ; its largest entry is bounded by these two.
    let deviation = PauliForm::new(scalar, vector).to_matrix();
    deviation.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl QubitChannel {
    /// Validates trace preservation to [`tol::TRACE_PRESERVATION`].
    ///
    /// A Kraus list is completely positive by construction, so no Choi check is needed here.
    pub fn from_kraus(kraus: Vec<PauliForm>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidInput("Kraus list is empty".into()));
        }
        if !kraus.iter().all(PauliForm::is_finite) {
            return Err(Error::InvalidInput("Kraus operator has non-finite entries".into()));
        }
        let residual = trace_preservation_residual(&kraus);
        if residual > tol::TRACE_PRESERVATION {
            return Err(Error::NotTracePreserving { residual });
        }
        let mut ch = QubitChannel {
            kraus,
            affine: AffineMap::identity(),
            tp_residual: residual,
        };
        ch.affine = affine_of(&ch);
        Ok(ch)
    }

    pub fn from_matrices(ops: &[Mat2]) -> Result<Self> {
        let kraus = ops.iter().map(PauliForm::from_matrix).collect::<Result<Vec<_>>>()?;
        Self::from_kraus(kraus)
    }

    pub fn identity() -> Self {
        Self::unitary(&UnitaryRotation::identity())
    }

    /// `ρ ↦ VρV†`.
    pub fn unitary(v: &UnitaryRotation) -> Self {
        Self::assemble(vec![v.to_pauli_form()])
    }

    pub fn kraus(&self) -> &[PauliForm] {
        &self.kraus
    }

    pub fn kraus_matrices(&self) -> Vec<Mat2> {
        self.kraus.iter().map(PauliForm::to_matrix).collect()
    }

    pub fn affine(&self) -> &AffineMap {
        &self.affine
    }

    /// Largest entry of `Σ K†K − 1` measured at construction.
    pub fn tp_residual(&self) -> f64 {
        self.tp_residual
    }

    /// `ℰ(ρ) = Σ K ρ K†` on a 2×2 matrix (not necessarily a state).
    pub fn apply_density(&self, rho: &Mat2) -> Mat2 {
        self.kraus
            .iter()
            .map(|k| {
                let km = k.to_matrix();
                km * rho * km.adjoint()
            })
            .fold(Mat2::zeros(), |acc, x| acc + x)
    }

    /// Bloch-space action through the cached affine map.
    pub fn apply(&self, r: &BlochVector) -> BlochVector {
        BlochVector::new_unchecked(self.affine.apply(r.vector()))
    }

    /// Bloch-space action through the Kraus sum.
    pub fn apply_kraus(&self, r: &BlochVector) -> Result<BlochVector> {
        BlochVector::from_density(&self.apply_density(&r.to_density()))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &QubitChannel) -> QubitChannel {
        compose(next, self)
    }

    /// `U ∘ ℰ ∘ U⁻¹`.
    pub fn conjugated_by(&self, u: &UnitaryRotation) -> QubitChannel {
        let uf = u.to_pauli_form();
        let uinv = uf.adjoint();
        let kraus = self.kraus.iter().map(|k| uf * *k * uinv).collect();
        Self::assemble(kraus)
    }

    /// Convex combination `Σ wᵢ ℰᵢ`, realized by concatenating `{√wᵢ K}` lists.
    pub fn mixture(parts: &[(f64, &QubitChannel)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("mixture needs at least one channel".into()));
        }
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| w.is_nan() || *w < 0.0) || (total - 1.0).abs() > tol::INPUT {
            return Err(Error::InvalidInput(format!(
                "mixture weights must be non-negative and sum to 1 (sum = {total})"
            )));
        }
        let kraus = parts
            .iter()
            .filter(|(w, _)| *w > 0.0)
            .flat_map(|(w, ch)| ch.kraus.iter().map(move |k| k.scale(w.sqrt())))
            .collect();
        Self::from_kraus(kraus)
    }

    /// Equality as maps: affine representations agree within `tol`.
    pub fn approx_eq(&self, other: &QubitChannel, tol: f64) -> bool {
        self.affine.max_difference(&other.affine) <= tol
    }

    /// Products of already-valid channels stay trace preserving up to rounding.
    fn assemble(kraus: Vec<PauliForm>) -> Self {
        let tp_residual = trace_preservation_residual(&kraus);
        let mut ch = QubitChannel { kraus, affine: AffineMap::identity(), tp_residual };
        ch.affine = affine_of(&ch);
        ch
    }
}

/// `second ∘ first`, with Kraus set `{K₂ᵢ K₁ⱼ}`.
pub fn compose(second: &QubitChannel, first: &QubitChannel) -> QubitChannel {
    let kraus = second
        .kraus
        .iter()
        .flat_map(|k2| first.kraus.iter().map(move |k1| *k2 * *k1))
        .collect();
    QubitChannel::assemble(kraus)
}

/// Affine map by applying the channel to `1` and the Pauli matrices.
pub fn affine_of(ch: &QubitChannel) -> AffineMap {
    let component = |out: &Mat2, alpha: usize| 0.5 * (sigma(alpha) * out).trace().re;
    let image_of_one = ch.apply_density(&identity2());
    let t = Vector3::from_fn(|alpha, _| component(&image_of_one, alpha));
    let images: [Mat2; 3] = std::array::from_fn(|beta| ch.apply_density(&sigma(beta)));
    let m = Matrix3::from_fn(|alpha, beta| component(&images[beta], alpha));
    AffineMap::new(m, t)
}

/// `B_αβ = ½⟨b_α b*_β + b*_α b_β⟩`.
pub fn b_matrix(ch: &QubitChannel) -> Matrix3<f64> {
    let mut b = Matrix3::zeros();
    for k in &ch.kraus {
        b += Matrix3::from_fn(|i, j| (k.b[i] * k.b[j].conj()).re);
    }
    b
}

/// `t`, `S`, `A` (through `v`) and `B` from the Kraus coefficients.
pub fn affine_closed_form(ch: &QubitChannel) -> AffineClosedForm {
    let i = Complex64::i();
    let mut t = Vector3::<Complex64>::zeros();
    let mut v = Vector3::<Complex64>::zeros();
    let mut bb = 0.0;
    for k in &ch.kraus {
        let (a, b) = (k.a, k.b);
        let bc = b.map(|c| c.conj());
        let cross = Vector3::new(
            b.y * bc.z - b.z * bc.y,
            b.z * bc.x - b.x * bc.z,
            b.x * bc.y - b.y * bc.x,
        );
        t += b * a.conj() + bc * a + cross * i;
        v += (b * a.conj() - bc * a) * i;
        bb += b.iter().map(|c| c.norm_sqr()).sum::<f64>();
    }
    let b = b_matrix(ch);
    let s = Matrix3::identity() * (1.0 - 2.0 * bb) + b * 2.0;
    let v = v.map(|c| c.re);
    let a = v.cross_matrix();
    AffineClosedForm {
        affine: AffineMap::new(s + a, t.map(|c| c.re)),
        split: SplitAffine { s, a, v },
        b,
    }
}
