//! Two-level reduction of the spinor dynamics.
//!
//! Writing Ψᵢ(x, τ) = cᵢ(τ)φᵢ(x) with frozen envelopes φᵢ turns the coupled
//! equations into a driven two-level system with coupling
//! Ω̃ = 2c_θ⟨φ₂|k̂|φ₁⟩ and level shifts V_zᵢ = ⟨φᵢ|Ṽ_zσ_z|φᵢ⟩.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{invalid, Error, Result};
use crate::grid::XGrid;
use crate::params::DimensionlessParams;
use crate::spinor::SpinorX;
use crate::su2::PauliGenerator;

/// Largest |⟨φ|φ⟩ − 1| accepted for an envelope.
pub const ENVELOPE_NORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelParams {
    pub omega_tilde: Complex64,
    pub vz1: f64,
    pub vz2: f64,
}

impl TwoLevelParams {
    pub fn new(omega_tilde: Complex64, vz1: f64, vz2: f64) -> Result<Self> {
        if !(omega_tilde.re.is_finite() && omega_tilde.im.is_finite()) {
            return Err(invalid("omega_tilde", "must be finite"));
        }
        if !(vz1.is_finite() && vz2.is_finite()) {
            return Err(invalid("vz1/vz2", "must be finite"));
        }
        Ok(Self { omega_tilde, vz1, vz2 })
    }

    /// Reduction of a uniform gap: V_z1 = +Ṽ_z, V_z2 = −Ṽ_z.
    pub fn from_envelopes(phi1: &[Complex64], phi2: &[Complex64], grid: &XGrid, params: &DimensionlessParams) -> Result<Self> {
        let omega_tilde = coupling_overlap(phi1, phi2, grid, params)?;
        Self::new(omega_tilde, params.v_z, -params.v_z)
    }

    fn generator(&self) -> PauliGenerator {
        let o = self.omega_tilde;
        PauliGenerator::new(0.5 * (self.vz1 + self.vz2), o.re, -o.im, 0.5 * (self.vz1 - self.vz2))
    }
}

fn envelope_norm(phi: &[Complex64], grid: &XGrid) -> f64 {
    phi.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.dx()
}

/// −i∂ₓφ by FFT on the periodic position grid.
fn momentum_apply(phi: &[Complex64], grid: &XGrid) -> Vec<Complex64> {
    let n = phi.len();
    let mut planner = FftPlanner::new();
    let mut buf = phi.to_vec();
    planner.plan_fft_forward(n).process(&mut buf);
    let dk = 2.0 * std::f64::consts::PI / (n as f64 * grid.dx());
    for (m, b) in buf.iter_mut().enumerate() {
        // the Nyquist mode of an even grid has no consistent sign; drop it
        let freq = if 2 * m < n {
            m as f64
        } else if 2 * m == n {
            0.0
        } else {
            m as f64 - n as f64
        };
        *b *= freq * dk / n as f64;
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf
}

/// Ω̃ = 2c_θ∫φ₂*(x)(−i∂ₓ)φ₁(x) dx for envelopes normalized to one.
pub fn coupling_overlap(phi1: &[Complex64], phi2: &[Complex64], grid: &XGrid, params: &DimensionlessParams) -> Result<Complex64> {
    for phi in [phi1, phi2] {
        if phi.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "envelope has {} samples, grid has {}",
                phi.len(),
                grid.len()
            )));
        }
        let norm = envelope_norm(phi, grid);
        if (norm - 1.0).abs() > ENVELOPE_NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
    }
    let p1 = momentum_apply(phi1, grid);
    let overlap: Complex64 = phi2.iter().zip(&p1).map(|(a, b)| a.conj() * b).sum::<Complex64>() * grid.dx();
    Ok(overlap * (2.0 * params.c_theta))
}

/// Ψᵢ = cᵢφᵢ with φᵢ normalized and cᵢ = ‖Ψᵢ‖ ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorized {
    pub c1: f64,
    pub c2: f64,
    pub phi1: Vec<Complex64>,
    pub phi2: Vec<Complex64>,
}

/// Split a position-space spinor into amplitudes and unit envelopes. An
/// empty component borrows the other component's envelope.
pub fn factorize(state: &SpinorX) -> Result<Factorized> {
    let n1 = envelope_norm(&state.psi1, &state.grid).sqrt();
    let n2 = envelope_norm(&state.psi2, &state.grid).sqrt();
    if n1 == 0.0 && n2 == 0.0 {
        return Err(Error::NotNormalized { norm: 0.0 });
    }
    let unit = |psi: &[Complex64], n: f64| -> Vec<Complex64> { psi.iter().map(|z| z / n).collect() };
    let (phi1, phi2) = if n1 == 0.0 {
        let p = unit(&state.psi2, n2);
        (p.clone(), p)
    } else if n2 == 0.0 {
        let p = unit(&state.psi1, n1);
        (p.clone(), p)
    } else {
        (unit(&state.psi1, n1), unit(&state.psi2, n2))
    };
    Ok(Factorized {
        c1: n1,
        c2: n2,
        phi1,
        phi2,
    })
}

/// ω_R = √(|Ω̃|² + ¼(V_z1 − V_z2)²).
pub fn rabi_frequency(p: &TwoLevelParams) -> f64 {
    let d = 0.5 * (p.vz1 - p.vz2);
    (p.omega_tilde.norm_sqr() + d * d).sqrt()
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PopulationSeries {
    pub tau: Vec<f64>,
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
}

/// |c₁(τ)|², |c₂(τ)|² under the exact exponential of ((V_z1, Ω̃), (Ω̃*, V_z2)).
pub fn evolve_populations(c0: (Complex64, Complex64), p: &TwoLevelParams, tau_grid: &[f64]) -> Result<PopulationSeries> {
    let w = c0.0.norm_sqr() + c0.1.norm_sqr();
    if (w - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm: w });
    }
    let gen = p.generator();
    let mut out = PopulationSeries {
        tau: tau_grid.to_vec(),
        p1: Vec::with_capacity(tau_grid.len()),
        p2: Vec::with_capacity(tau_grid.len()),
    };
    for &tau in tau_grid {
        let u = gen.propagator(tau);
        let a = u[(0, 0)] * c0.0 + u[(0, 1)] * c0.1;
        let b = u[(1, 0)] * c0.0 + u[(1, 1)] * c0.1;
        out.p1.push(a.norm_sqr());
        out.p2.push(b.norm_sqr());
    }
    Ok(out)
}
