//! Exact time evolution in momentum space.
//!
//! Each momentum mode evolves independently under the 2×2 Hamiltonian
//! H(k) = k² + 2·c_θ·k·σ_x + Ṽ_z·σ_z (full) or 2·c_θ·k·σ_x + Ṽ_z·σ_z
//! (Dirac limit, kinetic term dropped). The evolved spinor is
//! exp(−iH(k)τ)Ψ(k, 0).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::params::DimensionlessParams;
use crate::spinor::{GaussianSpec, SpinorK};
use crate::su2::{bloch_vector, Mat2, PauliGenerator};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which Hamiltonian drives the evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Limit {
    /// Full effective Schrödinger equation, kinetic term included.
    Full,
    /// Low-momentum Dirac limit.
    Dirac,
}

impl Limit {
    pub fn name(self) -> &'static str {
        match self {
            Limit::Full => "full",
            Limit::Dirac => "dirac",
        }
    }
}

impl std::str::FromStr for Limit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Limit::Full),
            "dirac" => Ok(Limit::Dirac),
            other => Err(invalid("limit", format!("expected `full` or `dirac`, got `{other}`"))),
        }
    }
}

/// H(k) for a single momentum mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeHamiltonian {
    pub k: f64,
    pub generator: PauliGenerator,
}

impl ModeHamiltonian {
    pub fn matrix(&self) -> Mat2 {
        self.generator.matrix()
    }

    /// ω_k, half the splitting between the two branches.
    pub fn frequency(&self) -> f64 {
        self.generator.half_splitting()
    }
}

pub fn hamiltonian_k(k: f64, params: &DimensionlessParams, limit: Limit) -> ModeHamiltonian {
    let a = match limit {
        Limit::Full => k * k,
        Limit::Dirac => 0.0,
    };
    ModeHamiltonian {
        k,
        generator: PauliGenerator::new(a, 2.0 * params.c_theta * k, 0.0, params.v_z),
    }
}

/// ω_k = √(4c_θ²k² + Ṽ_z²).
pub fn mode_frequency(k: f64, params: &DimensionlessParams) -> f64 {
    (4.0 * params.c_theta * params.c_theta * k * k + params.v_z * params.v_z).sqrt()
}

// exp(−iH(k)τ) applied to (a, b); closed Pauli form, no matrix allocation
#[inline]
fn evolve_mode(k: f64, tau: f64, params: &DimensionlessParams, limit: Limit, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let bx = 2.0 * params.c_theta * k;
    let bz = params.v_z;
    let w = (bx * bx + bz * bz).sqrt();
    let (s, c) = (w * tau).sin_cos();
    let sw = if w > 0.0 { s / w } else { tau };
    let na = a * c - I * sw * (bz * a + bx * b);
    let nb = b * c - I * sw * (bx * a - bz * b);
    match limit {
        Limit::Dirac => (na, nb),
        Limit::Full => {
            let p = Complex64::from_polar(1.0, -k * k * tau);
            (na * p, nb * p)
        }
    }
}

/// Propagate a normalized state by τ.
pub fn propagate(state: &SpinorK, tau: f64, params: &DimensionlessParams, limit: Limit) -> Result<SpinorK> {
    state.ensure_normalized(1e-8)?;
    Ok(propagate_unchecked(state, tau, params, limit))
}

pub(crate) fn propagate_unchecked(state: &SpinorK, tau: f64, params: &DimensionlessParams, limit: Limit) -> SpinorK {
    let grid = state.grid;
    let (psi1, psi2): (Vec<_>, Vec<_>) = state
        .psi1
        .par_iter()
        .zip(state.psi2.par_iter())
        .enumerate()
        .map(|(i, (&a, &b))| evolve_mode(grid.node(i), tau, params, limit, a, b))
        .unzip();
    SpinorK { grid, psi1, psi2 }
}

/// Closed-form evolved Gaussian at momentum k, Dirac structure times the
/// kinetic phase e^{−ik²τ}:
///
/// Ψ₁ = [c₁cos ω_kτ − i(c₁Ṽ_z + 2k c₂) sin(ω_kτ)/ω_k]·g(k)·e^{−ik²τ}
/// Ψ₂ = [c₂cos ω_kτ + i(c₂Ṽ_z − 2k c₁) sin(ω_kτ)/ω_k]·g(k)·e^{−ik²τ}
///
/// The constant A²/2m shift is dropped, as in [`propagate`].
pub fn closed_form_spinor(spec: &GaussianSpec, k: f64, tau: f64, params: &DimensionlessParams) -> Result<[Complex64; 2]> {
    if params.c_theta != 1.0 {
        return Err(Error::UnsupportedRegime { c_theta: params.c_theta });
    }
    let (c1, c2, v) = (spec.c1, spec.c2, params.v_z);
    let w = (4.0 * k * k + v * v).sqrt();
    let (s, c) = (w * tau).sin_cos();
    let sw = if w > 0.0 { s / w } else { tau };
    let phase = Complex64::from_polar(spec.envelope(k), -k * k * tau);
    Ok([
        (c1 * c - I * (c1 * v + c2 * 2.0 * k) * sw) * phase,
        (c2 * c + I * (c2 * v - c1 * 2.0 * k) * sw) * phase,
    ])
}

/// Heisenberg displacement ⟨x̂(τ)⟩ − ⟨x̂(0)⟩ of one momentum mode under the
/// Dirac-limit Hamiltonian, for the internal state (c₁, c₂).
///
/// The velocity 2c_θσ_x splits into a part along the field direction n̂
/// (constant, the group velocity of the mixture) and a perpendicular part w
/// that precesses at 2ω_k:
/// X(τ) = (u∥·s)τ + (w·s) sin(2ωτ)/2ω − ((n̂×w)·s)(1 − cos 2ωτ)/2ω,
/// with s the Bloch vector of (c₁, c₂).
pub fn mode_zb_trajectory(k: f64, c1: Complex64, c2: Complex64, params: &DimensionlessParams, tau_grid: &[f64]) -> Result<Vec<f64>> {
    let w2 = c1.norm_sqr() + c2.norm_sqr();
    if (w2 - 1.0).abs() > 1e-10 {
        return Err(invalid("c1/c2", format!("|c1|² + |c2|² = {w2}, expected 1")));
    }
    let traj = ModeTrajectory::new(k, c1, c2, params);
    Ok(tau_grid.iter().map(|&t| traj.displacement(t)).collect())
}

/// Precomputed coefficients of a single-mode Dirac trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeTrajectory {
    /// Drift velocity u∥·s.
    pub drift_velocity: f64,
    pub sin_amplitude: f64,
    pub cos_amplitude: f64,
    pub omega: f64,
}

impl ModeTrajectory {
    pub fn new(k: f64, c1: Complex64, c2: Complex64, params: &DimensionlessParams) -> Self {
        let gen = hamiltonian_k(k, params, Limit::Dirac).generator;
        let s = bloch_vector(c1, c2);
        let u = nalgebra::Vector3::new(2.0 * params.c_theta, 0.0, 0.0);
        let omega = gen.half_splitting();
        if omega == 0.0 {
            return Self {
                drift_velocity: u.dot(&s),
                sin_amplitude: 0.0,
                cos_amplitude: 0.0,
                omega,
            };
        }
        let n = gen.b / omega;
        let par = n * u.dot(&n);
        let perp = u - par;
        Self {
            drift_velocity: par.dot(&s),
            sin_amplitude: perp.dot(&s) / (2.0 * omega),
            cos_amplitude: -n.cross(&perp).dot(&s) / (2.0 * omega),
            omega,
        }
    }

    pub fn displacement(&self, tau: f64) -> f64 {
        let (s, c) = (2.0 * self.omega * tau).sin_cos();
        self.drift_velocity * tau + self.sin_amplitude * s + self.cos_amplitude * (1.0 - c)
    }
}
