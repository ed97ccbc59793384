//! Closed-form oracles for the Gaussian equal-superposition packet at k₀ = 0.
//!
//! The packet has |g(k)|² = e^{−k²/Δ²}/(Δ√π) and internal state (1, 1)/√2.
//! Two families are provided. [`drift`] and [`zitter_term`] evaluate the
//! published expressions with b = Ṽ_z/Δ. [`drift_rederived`] and
//! [`zitter_term_rederived`] come from evaluating
//!
//! x̄(τ) = τ∫|g|²·8k²/ω_k² dk + ∫|g|²·Ṽ_z²/ω_k³·sin(2ω_kτ) dk
//!
//! exactly (first term) and by stationary phase about k = 0 (second term).
//! The numerics in [`crate::observables`] follow the latter.

#[allow(clippy::excessive_precision)]
pub mod erfc;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::params::{reduce_params, DimensionlessParams, PhysicalParams};

pub use erfc::{erf, erfc, erfcx};

/// Ṽ_z/Δ above which [`drift`] sums the asymptotic series.
pub const ASYMPTOTIC_THRESHOLD: f64 = 25.0;
/// Terms of the series used by [`drift`] in the asymptotic regime.
pub const ASYMPTOTIC_TERMS: usize = 12;
/// Smallest Ṽ_z/Δ accepted by [`drift_asymptotic`].
pub const ASYMPTOTIC_MIN_RATIO: f64 = 3.0;
/// Smallest Ṽ_z/Δ for which [`zitter_term`] is considered valid.
pub const ZITTER_MIN_RATIO: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriftRegime {
    ExactErfc,
    Asymptotic,
}

/// The asymptotic series was summed past its smallest term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivergenceWarning {
    pub n_terms: usize,
    pub optimal: usize,
}

impl std::fmt::Display for DivergenceWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "asymptotic series summed to {} terms, past the optimal truncation at {}",
            self.n_terms, self.optimal
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftResult {
    pub x_d: f64,
    /// dx_d/dτ; the drift is linear in τ.
    pub slope: f64,
    pub regime: DriftRegime,
    pub warning: Option<DivergenceWarning>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZitterResult {
    pub x_z: f64,
    pub envelope: f64,
    /// Set when Ṽ_z/Δ is below [`ZITTER_MIN_RATIO`].
    pub outside_validity: bool,
}

fn check_inputs(params: &DimensionlessParams, delta: f64) -> Result<f64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(invalid("delta", format!("must be positive and finite, got {delta}")));
    }
    if params.c_theta != 1.0 {
        return Err(Error::UnsupportedRegime { c_theta: params.c_theta });
    }
    Ok(params.v_z.abs())
}

/// 1 − √π·b·erfcx(b) from the first `n` terms of the asymptotic expansion,
/// Σ_{m=1}^{n} (−1)^{m+1} (2m)!/(m!(2b)^{2m}).
fn bracket_series(b: f64, n: usize) -> f64 {
    let inv = 1.0 / (4.0 * b * b);
    let mut term = 1.0;
    let mut sum = 0.0;
    for m in 1..=n {
        // ratio to the previous term is −2(2m−1)/(2b)²
        term *= -2.0 * (2 * m - 1) as f64 * inv;
        sum -= term;
    }
    sum
}

fn bracket_exact(b: f64) -> f64 {
    1.0 - PI.sqrt() * b * erfcx(b)
}

/// Published drift x_d = τ[1 − √π·b·e^{b²}·Erfc(b)], b = Ṽ_z/Δ.
///
/// The product e^{b²}Erfc(b) is evaluated as erfcx(b). Past
/// [`ASYMPTOTIC_THRESHOLD`] the bracket comes from the asymptotic series.
pub fn drift(tau: f64, params: &DimensionlessParams, delta: f64) -> Result<DriftResult> {
    let v = check_inputs(params, delta)?;
    let b = v / delta;
    let (slope, regime) = if b > ASYMPTOTIC_THRESHOLD {
        (bracket_series(b, ASYMPTOTIC_TERMS), DriftRegime::Asymptotic)
    } else {
        (bracket_exact(b), DriftRegime::ExactErfc)
    };
    Ok(DriftResult {
        x_d: slope * tau,
        slope,
        regime,
        warning: None,
    })
}

/// Optimal truncation order of the asymptotic series at ratio b.
pub fn optimal_terms(b: f64) -> usize {
    (b * b + 0.5).floor() as usize
}

/// Published drift with the bracket summed to `n_terms` asymptotic terms.
pub fn drift_asymptotic(tau: f64, params: &DimensionlessParams, delta: f64, n_terms: usize) -> Result<DriftResult> {
    let v = check_inputs(params, delta)?;
    let b = v / delta;
    if b < ASYMPTOTIC_MIN_RATIO {
        return Err(invalid(
            "v_z/delta",
            format!("asymptotic series needs a ratio of at least {ASYMPTOTIC_MIN_RATIO}, got {b}"),
        ));
    }
    if n_terms == 0 {
        return Err(invalid("n_terms", "must be at least 1"));
    }
    let optimal = optimal_terms(b);
    let warning = (n_terms > optimal).then_some(DivergenceWarning { n_terms, optimal });
    let slope = bracket_series(b, n_terms);
    Ok(DriftResult {
        x_d: slope * tau,
        slope,
        regime: DriftRegime::Asymptotic,
        warning,
    })
}

/// Published damped oscillation
/// x_z = sin(2Ṽ_zτ + ½arctan(Δ²τ/4Ṽ_z)) / (Ṽ_z(1 + Δ⁴τ²/16Ṽ_z²)^{1/4}).
pub fn zitter_term(tau: f64, params: &DimensionlessParams, delta: f64) -> Result<ZitterResult> {
    let v = check_inputs(params, delta)?;
    if v == 0.0 {
        return Err(invalid("v_z", "the oscillation term needs a nonzero gap"));
    }
    let s = delta * delta * tau / (4.0 * v);
    Ok(damped(v, tau, s, delta))
}

/// Stationary-phase oscillation with the leading amplitude correction,
/// x_z = Im{e^{2iṼ_zτ}(1 − is)^{−1/2}[1 − 3Δ²/(Ṽ_z²(1 − is))]}/Ṽ_z with
/// s = 4Δ²τ/Ṽ_z. Without the bracket this is
/// sin(2Ṽ_zτ + ½arctan s)/(Ṽ_z(1 + s²)^{1/4}).
pub fn zitter_term_rederived(tau: f64, params: &DimensionlessParams, delta: f64) -> Result<ZitterResult> {
    let v = check_inputs(params, delta)?;
    if v == 0.0 {
        return Err(invalid("v_z", "the oscillation term needs a nonzero gap"));
    }
    let s = 4.0 * delta * delta * tau / v;
    let q = Complex64::new(1.0, -s);
    let amp = q.powf(-0.5) * (1.0 - 3.0 * delta * delta / (v * v) / q) / v;
    let z = amp * Complex64::from_polar(1.0, 2.0 * v * tau);
    Ok(ZitterResult {
        x_z: z.im,
        envelope: amp.norm(),
        outside_validity: v / delta < ZITTER_MIN_RATIO,
    })
}

fn damped(v: f64, tau: f64, s: f64, delta: f64) -> ZitterResult {
    let envelope = (1.0 + s * s).powf(-0.25) / v;
    ZitterResult {
        x_z: envelope * (2.0 * v * tau + 0.5 * s.atan()).sin(),
        envelope,
        outside_validity: v / delta < ZITTER_MIN_RATIO,
    }
}

/// Exact drift x_d = 2τ[1 − √π·a·erfcx(a)], a = Ṽ_z/2Δ.
pub fn drift_rederived(tau: f64, params: &DimensionlessParams, delta: f64) -> Result<DriftResult> {
    let v = check_inputs(params, delta)?;
    let a = v / (2.0 * delta);
    let (bracket, regime) = if a > ASYMPTOTIC_THRESHOLD {
        (bracket_series(a, ASYMPTOTIC_TERMS), DriftRegime::Asymptotic)
    } else {
        (bracket_exact(a), DriftRegime::ExactErfc)
    };
    let slope = 2.0 * bracket;
    Ok(DriftResult {
        x_d: slope * tau,
        slope,
        regime,
        warning: None,
    })
}

/// Population difference N₁ − N₂ of a sharp momentum state k₀ prepared in
/// (1, 1)/√2: ΔN = 4c_θk₀Ṽ_z/ω² · sin²(ωτ), ω = √(4c_θ²k₀² + Ṽ_z²).
pub fn delta_limit_population(k0: f64, params: &DimensionlessParams, tau: f64) -> f64 {
    let bx = 2.0 * params.c_theta * k0;
    let w2 = bx * bx + params.v_z * params.v_z;
    if w2 == 0.0 {
        return 0.0;
    }
    let s = (w2.sqrt() * tau).sin();
    2.0 * bx * params.v_z / w2 * s * s
}

/// Laboratory-unit versions of the reduced-unit results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    /// Reduced gap Ṽ_z = V_z/E_r.
    pub v_z: f64,
    /// Reduced momentum width Δ = √2/(σκ).
    pub delta: f64,
    /// Unit of time 2m/ħκ² (s).
    pub time_unit: f64,
    /// c̃ = ħκ/m (m/s).
    pub recoil_velocity: f64,
    /// 2V_z/ħ (rad/s).
    pub zb_angular_frequency: f64,
    /// 2V_z/h (Hz).
    pub zb_frequency: f64,
    /// Time at which Δ²τ/4Ṽ_z = 1 (s).
    pub damping_onset: f64,
    /// Time at which 4Δ²τ/Ṽ_z = 1 (s).
    pub damping_onset_rederived: f64,
}

pub fn physical_scales(p: &PhysicalParams, sigma: f64) -> Result<PhysicalScales> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(invalid("sigma", format!("must be positive and finite, got {sigma}")));
    }
    let reduced = reduce_params(p)?;
    let v = reduced.v_z.abs();
    let delta = std::f64::consts::SQRT_2 / (sigma * p.kappa);
    let t0 = p.time_unit();
    let v_z_joule = v * p.recoil_energy();
    let onset = |tau: f64| if v == 0.0 { f64::INFINITY } else { tau * t0 };
    Ok(PhysicalScales {
        v_z: reduced.v_z,
        delta,
        time_unit: t0,
        recoil_velocity: p.recoil_velocity(),
        zb_angular_frequency: 2.0 * v_z_joule / p.hbar,
        zb_frequency: 2.0 * v_z_joule / (2.0 * PI * p.hbar),
        damping_onset: onset(4.0 * v / (delta * delta)),
        damping_onset_rederived: onset(v / (4.0 * delta * delta)),
    })
}
