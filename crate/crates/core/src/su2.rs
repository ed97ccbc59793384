//! Closed-form exponentials of 2×2 Hermitian generators.
//!
//! A Hermitian 2×2 matrix is a·I + b·σ with real a and b ∈ ℝ³, and
//! exp(−i(a + b·σ)τ) = e^{−iaτ}[cos(|b|τ) I − i sin(|b|τ) b̂·σ].

use nalgebra::{Matrix2, Vector3};
use num_complex::Complex64;

pub type Mat2 = Matrix2<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn sigma_x() -> Mat2 {
    Mat2::new(0.0.into(), 1.0.into(), 1.0.into(), 0.0.into())
}

pub fn sigma_y() -> Mat2 {
    Mat2::new(0.0.into(), -I, I, 0.0.into())
}

pub fn sigma_z() -> Mat2 {
    Mat2::new(1.0.into(), 0.0.into(), 0.0.into(), (-1.0).into())
}

/// Hermitian generator a·I + b·σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliGenerator {
    pub a: f64,
    pub b: Vector3<f64>,
}

impl PauliGenerator {
    pub fn new(a: f64, bx: f64, by: f64, bz: f64) -> Self {
        Self {
            a,
            b: Vector3::new(bx, by, bz),
        }
    }

    /// Decompose a Hermitian matrix; the anti-Hermitian part is dropped.
    pub fn from_matrix(m: &Mat2) -> Self {
        let a = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
        let bz = 0.5 * (m[(0, 0)].re - m[(1, 1)].re);
        let off = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
        Self::new(a, off.re, -off.im, bz)
    }

    pub fn matrix(&self) -> Mat2 {
        let b = self.b;
        Mat2::new(
            Complex64::new(self.a + b.z, 0.0),
            Complex64::new(b.x, -b.y),
            Complex64::new(b.x, b.y),
            Complex64::new(self.a - b.z, 0.0),
        )
    }

    /// Half the eigenvalue splitting, |b|.
    pub fn half_splitting(&self) -> f64 {
        self.b.norm()
    }

    pub fn eigenvalues(&self) -> (f64, f64) {
        let w = self.half_splitting();
        (self.a - w, self.a + w)
    }

    /// exp(−i·G·τ).
    pub fn propagator(&self, tau: f64) -> Mat2 {
        let w = self.half_splitting();
        let phase = Complex64::from_polar(1.0, -self.a * tau);
        let (s, c) = (w * tau).sin_cos();
        // sin(wτ)/w → τ as w → 0
        let sw = if w > 0.0 { s / w } else { tau };
        let b = self.b * sw;
        let m = Mat2::new(
            Complex64::new(c, -b.z),
            Complex64::new(-b.y, -b.x),
            Complex64::new(b.y, -b.x),
            Complex64::new(c, b.z),
        );
        m * phase
    }
}

/// Bloch vector (⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩) of an unnormalized pair.
pub fn bloch_vector(c1: Complex64, c2: Complex64) -> Vector3<f64> {
    let x = c1.conj() * c2;
    Vector3::new(2.0 * x.re, 2.0 * x.im, c1.norm_sqr() - c2.norm_sqr())
}
