//! Tripod laser configuration: dark states and the gauge potentials they
//! induce.
//!
//! Beams 1 and 2 counter-propagate along x with equal intensity, beam 3
//! propagates along y:
//! Ω₁ = Ω sinθ e^{−iκx}/√2, Ω₂ = Ω sinθ e^{iκx}/√2, Ω₃ = Ω cosθ e^{−iκy}.
//! All potentials are returned in SI units.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix4, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::HBAR;
use crate::su2::{sigma_x, Mat2};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest finite-difference step, in units of 1/κ.
pub const MAX_SCALED_STEP: f64 = 1e-4;
/// Default finite-difference step, in units of 1/κ.
pub const DEFAULT_SCALED_STEP: f64 = 1e-5;

/// Mixing angle θ and total Rabi frequency Ω from the three beam
/// amplitudes: Ω = √Σ|Ωₙ|², tan θ = √(|Ω₁|²+|Ω₂|²)/|Ω₃|.
pub fn mixing_angle(omega1: Complex64, omega2: Complex64, omega3: Complex64) -> Result<(f64, f64)> {
    let transverse = omega1.norm_sqr() + omega2.norm_sqr();
    let total = (transverse + omega3.norm_sqr()).sqrt();
    if total == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok((transverse.sqrt().atan2(omega3.norm()), total))
}

/// Laser field of the tripod scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripodField {
    /// Total Rabi frequency Ω (rad/s).
    pub omega: f64,
    pub theta: f64,
    pub kappa: f64,
}

impl TripodField {
    pub fn rabi_frequencies(&self, x: f64, y: f64) -> [Complex64; 3] {
        let (s, c) = self.theta.sin_cos();
        let t = self.omega * s * FRAC_1_SQRT_2;
        [
            Complex64::from_polar(t, -self.kappa * x),
            Complex64::from_polar(t, self.kappa * x),
            Complex64::from_polar(self.omega * c, -self.kappa * y),
        ]
    }

    /// H_int/ħ in the basis {|0⟩, |1⟩, |2⟩, |3⟩}, resonant fields.
    pub fn interaction_hamiltonian(&self, x: f64, y: f64) -> Matrix4<Complex64> {
        let om = self.rabi_frequencies(x, y);
        let mut h = Matrix4::zeros();
        for (j, o) in om.iter().enumerate() {
            h[(0, j + 1)] = -o;
            h[(j + 1, 0)] = -o.conj();
        }
        h
    }
}

/// The two dark states of the tripod at a point (x, y), expressed over the
/// bare ground states {|1⟩, |2⟩, |3⟩}:
///
/// |D₁⟩ = e^{−iκy}(e^{iκx}|1⟩ − e^{−iκx}|2⟩)/√2
/// |D₂⟩ = e^{−iκy} cosθ (e^{iκx}|1⟩ + e^{−iκx}|2⟩)/√2 − sinθ |3⟩
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarkStatePair {
    pub theta: f64,
    pub kappa: f64,
    pub x: f64,
    pub y: f64,
}

pub fn dark_states(theta: f64, kappa: f64, x: f64, y: f64) -> DarkStatePair {
    DarkStatePair { theta, kappa, x, y }
}

impl DarkStatePair {
    pub fn states(&self) -> [Vector3<Complex64>; 2] {
        self.at(self.x, self.y)
    }

    pub fn at(&self, x: f64, y: f64) -> [Vector3<Complex64>; 2] {
        let (s, c) = self.theta.sin_cos();
        let ey = Complex64::from_polar(FRAC_1_SQRT_2, -self.kappa * y);
        let p = Complex64::from_polar(1.0, self.kappa * x) * ey;
        let m = Complex64::from_polar(1.0, -self.kappa * x) * ey;
        [
            Vector3::new(p, -m, Complex64::new(0.0, 0.0)),
            Vector3::new(p * c, m * c, Complex64::new(-s, 0.0)),
        ]
    }

    /// Dark states embedded in the four-level space, |0⟩ first.
    pub fn embedded(&self) -> [nalgebra::Vector4<Complex64>; 2] {
        self.states().map(|d| nalgebra::Vector4::new(0.0.into(), d.x, d.y, d.z))
    }

    /// Gram matrix ⟨Dᵢ|Dⱼ⟩.
    pub fn overlaps(&self) -> Mat2 {
        let d = self.states();
        Mat2::from_fn(|i, j| d[i].dotc(&d[j]))
    }

    // central difference of both states along x (axis 0) or y (axis 1)
    fn derivative(&self, axis: usize, h: f64) -> [Vector3<Complex64>; 2] {
        let (fwd, bwd) = match axis {
            0 => (self.at(self.x + h, self.y), self.at(self.x - h, self.y)),
            _ => (self.at(self.x, self.y + h), self.at(self.x, self.y - h)),
        };
        let inv = Complex64::from(1.0 / (2.0 * h));
        [(fwd[0] - bwd[0]) * inv, (fwd[1] - bwd[1]) * inv]
    }
}

/// x-component of the vector potential, −ħκ cosθ σ_x (J·s/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorPotential {
    pub matrix: Mat2,
    /// Effective wave number κ′ = κ cosθ.
    pub kappa_prime: f64,
}

pub fn vector_potential(theta: f64, kappa: f64) -> VectorPotential {
    let kappa_prime = kappa * theta.cos();
    VectorPotential {
        matrix: sigma_x() * Complex64::from(-HBAR * kappa_prime),
        kappa_prime,
    }
}

/// Scalar potentials (Φ, V) in joules.
///
/// Φ = (ħ²κ²/2m) diag(sin²θ, sin²(2θ)/4), V = diag(V₁, V₁cos²θ + V₃sin²θ)
/// with the first two bare states sharing the trap V₁.
pub fn scalar_potentials(theta: f64, kappa: f64, v1: f64, v3: f64, mass: f64) -> (Mat2, Mat2) {
    let er = HBAR * HBAR * kappa * kappa / (2.0 * mass);
    let (s, c) = theta.sin_cos();
    let s2 = (2.0 * theta).sin();
    let phi = Mat2::new(
        (er * s * s).into(),
        0.0.into(),
        0.0.into(),
        (er * s2 * s2 / 4.0).into(),
    );
    let v = Mat2::new(
        v1.into(),
        0.0.into(),
        0.0.into(),
        (v1 * c * c + v3 * s * s).into(),
    );
    (phi, v)
}

/// All gauge potentials of the configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugePotentials {
    pub a: VectorPotential,
    pub phi: Mat2,
    pub v: Mat2,
}

pub fn gauge_potentials(p: &crate::params::PhysicalParams) -> GaugePotentials {
    let (phi, v) = scalar_potentials(p.theta, p.kappa, p.v1, p.v3, p.mass);
    GaugePotentials {
        a: vector_potential(p.theta, p.kappa),
        phi,
        v,
    }
}

/// Rest-energy gap V_z = ½[V₁₁ + Φ₁₁ − (V₂₂ + Φ₂₂)] (J). After shifting the
/// zero of energy, V + Φ = V_z σ_z.
pub fn rest_energy(phi: &Mat2, v: &Mat2) -> f64 {
    0.5 * (v[(0, 0)].re + phi[(0, 0)].re - (v[(1, 1)].re + phi[(1, 1)].re))
}

fn check_step(states: &DarkStatePair, step: f64) -> Result<()> {
    let scaled = step * states.kappa;
    if !(scaled > 0.0) || scaled > MAX_SCALED_STEP {
        return Err(Error::StepTooLarge { scaled });
    }
    Ok(())
}

fn connection_along(states: &DarkStatePair, axis: usize, step: f64) -> Result<Mat2> {
    check_step(states, step)?;
    let d = states.states();
    let dd = states.derivative(axis, step);
    // A_nm = iħ⟨D_n|∂D_m⟩
    Ok(Mat2::from_fn(|n, m| I * HBAR * d[n].dotc(&dd[m])))
}

/// Central-difference estimate of A_x,nm = iħ⟨Dₙ|∂ₓDₘ⟩ (J·s/m).
pub fn connection_numeric(states: &DarkStatePair, step: f64) -> Result<Mat2> {
    connection_along(states, 0, step)
}

/// Central-difference estimate of A_y,nm = iħ⟨Dₙ|∂_yDₘ⟩ (J·s/m).
pub fn connection_numeric_y(states: &DarkStatePair, step: f64) -> Result<Mat2> {
    connection_along(states, 1, step)
}

/// Central-difference estimate of Φ (J).
///
/// Φ_nm = (ħ²/2m) Σ_{j=x,y} [⟨∂ⱼDₙ|∂ⱼDₘ⟩ − Σ_{l dark} ⟨∂ⱼDₙ|D_l⟩⟨D_l|∂ⱼDₘ⟩],
/// i.e. the A·A sum restricted to states outside the dark manifold. Both
/// in-plane directions contribute.
pub fn scalar_potential_numeric(states: &DarkStatePair, step: f64, mass: f64) -> Result<Mat2> {
    check_step(states, step)?;
    let d = states.states();
    let mut phi = Mat2::zeros();
    for axis in 0..2 {
        let dd = states.derivative(axis, step);
        for n in 0..2 {
            for m in 0..2 {
                let full = dd[n].dotc(&dd[m]);
                let inside: Complex64 = (0..2).map(|l| dd[n].dotc(&d[l]) * d[l].dotc(&dd[m])).sum();
                phi[(n, m)] += full - inside;
            }
        }
    }
    Ok(phi * Complex64::from(HBAR * HBAR / (2.0 * mass)))
}
