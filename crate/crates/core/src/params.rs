//! Laboratory-frame and reduced model parameters.
//!
//! Reduced units: momentum in units of the laser wave number κ, energy in
//! units of the recoil energy E_r = ħ²κ²/2m and time in units of 2m/ħκ².
//! Positions are measured in units of 1/κ.

use std::f64::consts::FRAC_PI_2;

use crate::error::{invalid, Result};
use crate::tripod;

/// Reduced Planck constant (J·s, CODATA 2018 exact).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Planck constant (J·s).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Atomic mass unit (kg).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Mass of ⁸⁷Rb (kg).
pub const RB87_MASS: f64 = 86.909_180_527 * ATOMIC_MASS_UNIT;

/// Laboratory-frame description of the tripod setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Atomic mass (kg).
    pub mass: f64,
    /// Laser wave number κ (1/m).
    pub kappa: f64,
    /// Mixing angle θ (rad).
    pub theta: f64,
    /// Bare trap potential of states |1⟩ and |2⟩ (J).
    pub v1: f64,
    /// Bare trap potential of state |3⟩ (J).
    pub v3: f64,
    pub hbar: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, kappa: f64, theta: f64, v1: f64, v3: f64) -> Result<Self> {
        let p = Self {
            mass,
            kappa,
            theta,
            v1,
            v3,
            hbar: HBAR,
        };
        p.validate()?;
        Ok(p)
    }

    /// ⁸⁷Rb driven by lasers of wavelength `lambda` (m), with trap offsets
    /// `v1`, `v3` given in units of the recoil energy.
    pub fn rubidium_87(lambda: f64, theta: f64, v1: f64, v3: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(invalid("lambda", "must be positive"));
        }
        let kappa = 2.0 * std::f64::consts::PI / lambda;
        let er = HBAR * HBAR * kappa * kappa / (2.0 * RB87_MASS);
        Self::new(RB87_MASS, kappa, theta, v1 * er, v3 * er)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(invalid("mass", format!("must be positive, got {}", self.mass)));
        }
        if !(self.kappa > 0.0) || !self.kappa.is_finite() {
            return Err(invalid("kappa", format!("must be positive, got {}", self.kappa)));
        }
        if !(0.0..=FRAC_PI_2).contains(&self.theta) {
            return Err(invalid("theta", format!("must lie in [0, π/2], got {}", self.theta)));
        }
        if !self.v1.is_finite() || !self.v3.is_finite() {
            return Err(invalid("v1/v3", "must be finite"));
        }
        Ok(())
    }

    /// Recoil energy ħ²κ²/2m (J), the reduced energy unit.
    pub fn recoil_energy(&self) -> f64 {
        self.hbar * self.hbar * self.kappa * self.kappa / (2.0 * self.mass)
    }

    /// Reduced time unit 2m/ħκ² (s).
    pub fn time_unit(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.kappa * self.kappa)
    }

    /// Effective recoil velocity c̃ = ħκ/m (m/s).
    pub fn recoil_velocity(&self) -> f64 {
        self.hbar * self.kappa / self.mass
    }
}

/// Constants of the reduced two-component model
/// H(k) = k² + 2·c_theta·k·σ_x + v_z·σ_z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    /// Rest-energy gap Ṽ_z in units of the recoil energy.
    pub v_z: f64,
    /// Coupling scale cos θ of the vector potential.
    pub c_theta: f64,
}

impl DimensionlessParams {
    pub fn new(v_z: f64, c_theta: f64) -> Result<Self> {
        if !v_z.is_finite() {
            return Err(invalid("v_z", "must be finite"));
        }
        if !(0.0..=1.0).contains(&c_theta) {
            return Err(invalid("c_theta", format!("must lie in [0, 1], got {c_theta}")));
        }
        Ok(Self { v_z, c_theta })
    }

    /// Full-strength coupling (c_theta = 1), the regime of the closed forms.
    pub fn with_gap(v_z: f64) -> Self {
        Self { v_z, c_theta: 1.0 }
    }
}

/// Convert laboratory parameters to the reduced model.
pub fn reduce_params(p: &PhysicalParams) -> Result<DimensionlessParams> {
    p.validate()?;
    let (phi, v) = tripod::scalar_potentials(p.theta, p.kappa, p.v1, p.v3, p.mass);
    let v_z = tripod::rest_energy(&phi, &v) / p.recoil_energy();
    // cos(π/2) is 6e-17, not zero.
    let c_theta = p.theta.cos().clamp(0.0, 1.0);
    let c_theta = if c_theta < 1e-15 { 0.0 } else { c_theta };
    DimensionlessParams::new(v_z, c_theta)
}
