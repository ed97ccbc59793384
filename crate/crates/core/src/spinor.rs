//! Two-component states on momentum and position grids, Gaussian sampling
//! and the discrete Fourier pair between them.
//!
//! Fourier convention: Ψ(x) = (2π)^(−1/2) ∫ dk e^{ikx} Ψ(k).

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{invalid, Error, Result};
use crate::grid::{KGrid, XGrid};

/// Gaussian momentum distribution with spinor weights.
///
/// Ψᵢ(k) = cᵢ (Δ√π)^(−1/2) exp(−(k−k0)²/2Δ²); the density has e-folding
/// width Δ. The equivalent real-space packet e^{−x²/σ²} has σ = √2/Δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec {
    pub k0: f64,
    pub delta: f64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl GaussianSpec {
    pub fn new(k0: f64, delta: f64, c1: Complex64, c2: Complex64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(invalid("delta", format!("must be positive, got {delta}")));
        }
        if !k0.is_finite() {
            return Err(invalid("k0", "must be finite"));
        }
        let w = c1.norm_sqr() + c2.norm_sqr();
        if (w - 1.0).abs() > 1e-12 {
            return Err(invalid("c1/c2", format!("|c1|² + |c2|² = {w}, expected 1")));
        }
        Ok(Self { k0, delta, c1, c2 })
    }

    /// Weights (1, e^{iφ})/√2.
    pub fn with_relative_phase(k0: f64, delta: f64, phase: f64) -> Result<Self> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(
            k0,
            delta,
            Complex64::new(h, 0.0),
            Complex64::from_polar(h, phase),
        )
    }

    /// Weights (1, 1)/√2.
    pub fn equal_superposition(k0: f64, delta: f64) -> Result<Self> {
        Self::with_relative_phase(k0, delta, 0.0)
    }

    /// Real-space width σ of the equivalent packet e^{−x²/σ²}.
    pub fn sigma(&self) -> f64 {
        std::f64::consts::SQRT_2 / self.delta
    }

    /// Real Gaussian envelope (Δ√π)^(−1/2) exp(−(k−k0)²/2Δ²).
    pub fn envelope(&self, k: f64) -> f64 {
        let u = (k - self.k0) / self.delta;
        (self.delta * PI.sqrt()).powf(-0.5) * (-0.5 * u * u).exp()
    }
}

/// Spinor Ψ̄(k) sampled on a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorK {
    pub grid: KGrid,
    pub psi1: Vec<Complex64>,
    pub psi2: Vec<Complex64>,
}

/// Spinor sampled on the conjugate position grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorX {
    pub grid: XGrid,
    pub psi1: Vec<Complex64>,
    pub psi2: Vec<Complex64>,
}

fn sum_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

impl SpinorK {
    pub fn new(grid: KGrid, psi1: Vec<Complex64>, psi2: Vec<Complex64>) -> Result<Self> {
        if psi1.len() != grid.len() || psi2.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "grid has {} nodes, components have {} and {}",
                grid.len(),
                psi1.len(),
                psi2.len()
            )));
        }
        Ok(Self { grid, psi1, psi2 })
    }

    /// Discrete norm Σ(|Ψ₁|² + |Ψ₂|²)·dk.
    pub fn norm(&self) -> f64 {
        (sum_sqr(&self.psi1) + sum_sqr(&self.psi2)) * self.grid.dk()
    }

    /// Total density ρ(k) = |Ψ₁|² + |Ψ₂|² per node.
    pub fn density(&self) -> Vec<f64> {
        self.psi1
            .iter()
            .zip(&self.psi2)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .collect()
    }

    pub fn ensure_normalized(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }
}

impl SpinorX {
    pub fn norm(&self) -> f64 {
        (sum_sqr(&self.psi1) + sum_sqr(&self.psi2)) * self.grid.dx()
    }

    pub fn density(&self) -> Vec<f64> {
        self.psi1
            .iter()
            .zip(&self.psi2)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .collect()
    }

    /// First moment ∫ x ρ(x) dx.
    pub fn first_moment(&self) -> f64 {
        let g = self.grid;
        self.density()
            .iter()
            .enumerate()
            .map(|(j, r)| g.node(j) * r)
            .sum::<f64>()
            * g.dx()
    }
}

/// Sample the Gaussian on `grid` and renormalize on the discrete grid.
pub fn sample_gaussian(spec: &GaussianSpec, grid: &KGrid) -> Result<SpinorK> {
    let lo = spec.k0 - 6.0 * spec.delta;
    let hi = spec.k0 + 6.0 * spec.delta;
    if grid.k_min() > lo || grid.k_max() < hi {
        return Err(invalid(
            "grid",
            format!(
                "[{}, {}] does not span k0 ± 6Δ = [{lo}, {hi}]",
                grid.k_min(),
                grid.k_max()
            ),
        ));
    }
    let env: Vec<f64> = (0..grid.len()).map(|i| spec.envelope(grid.node(i))).collect();
    let raw: f64 = env.iter().map(|e| e * e).sum::<f64>() * grid.dk();
    let deficit = (1.0 - raw).abs();
    if deficit > 1e-6 {
        return Err(Error::Truncation { deficit });
    }
    let scale = raw.sqrt().recip();
    let psi1 = env.iter().map(|e| spec.c1 * (e * scale)).collect();
    let psi2 = env.iter().map(|e| spec.c2 * (e * scale)).collect();
    SpinorK::new(*grid, psi1, psi2)
}

/// Discrete Fourier pair between a [`KGrid`] and its conjugate [`XGrid`].
///
/// Holds the FFT plans and the grid phase factors so repeated transforms on
/// the same grid are cheap.
pub struct Fourier {
    kgrid: KGrid,
    xgrid: XGrid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    // e^{−2πi n h/N}, h = N/2: index shift of the centred position grid
    shift: Vec<Complex64>,
    // e^{i k_min x_j}
    offset: Vec<Complex64>,
}

impl Fourier {
    pub fn new(kgrid: &KGrid) -> Self {
        let n = kgrid.len();
        let xgrid = kgrid.conjugate();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let h = n / 2;
        let shift = (0..n)
            .map(|i| {
                let r = ((i * h) % n) as f64 / n as f64;
                Complex64::from_polar(1.0, -2.0 * PI * r)
            })
            .collect();
        let offset = (0..n)
            .map(|j| Complex64::from_polar(1.0, kgrid.k_min() * xgrid.node(j)))
            .collect();
        Self {
            kgrid: *kgrid,
            xgrid,
            forward,
            inverse,
            shift,
            offset,
        }
    }

    pub fn kgrid(&self) -> &KGrid {
        &self.kgrid
    }

    pub fn xgrid(&self) -> &XGrid {
        &self.xgrid
    }

    /// Ψ(k) → Ψ(x) for one component.
    pub fn k_to_x(&self, psi_k: &[Complex64]) -> Vec<Complex64> {
        let scale = self.kgrid.dk() / (2.0 * PI).sqrt();
        let mut buf: Vec<Complex64> = psi_k.iter().zip(&self.shift).map(|(p, s)| p * s).collect();
        self.inverse.process(&mut buf);
        buf.iter_mut()
            .zip(&self.offset)
            .for_each(|(b, o)| *b *= o * scale);
        buf
    }

    /// Ψ(x) → Ψ(k) for one component.
    pub fn x_to_k(&self, psi_x: &[Complex64]) -> Vec<Complex64> {
        let scale = self.xgrid.dx() / (2.0 * PI).sqrt();
        let mut buf: Vec<Complex64> = psi_x
            .iter()
            .zip(&self.offset)
            .map(|(p, o)| p * o.conj())
            .collect();
        self.forward.process(&mut buf);
        buf.iter_mut()
            .zip(&self.shift)
            .for_each(|(b, s)| *b *= s.conj() * scale);
        buf
    }

    pub fn to_position(&self, state: &SpinorK) -> SpinorX {
        SpinorX {
            grid: self.xgrid,
            psi1: self.k_to_x(&state.psi1),
            psi2: self.k_to_x(&state.psi2),
        }
    }

    pub fn from_position(&self, state: &SpinorX) -> SpinorK {
        SpinorK {
            grid: self.kgrid,
            psi1: self.x_to_k(&state.psi1),
            psi2: self.x_to_k(&state.psi2),
        }
    }
}

/// Component-wise transform of a momentum-space spinor to position space.
pub fn to_position(state: &SpinorK) -> SpinorX {
    Fourier::new(&state.grid).to_position(state)
}

/// Inverse of [`to_position`] for a spinor on the conjugate of `kgrid`.
pub fn from_position(state: &SpinorX, kgrid: &KGrid) -> Result<SpinorK> {
    if kgrid.conjugate() != state.grid {
        return Err(Error::GridMismatch(
            "position grid is not conjugate to the momentum grid".into(),
        ));
    }
    Ok(Fourier::new(kgrid).from_position(state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_k_grid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn peak_density_before_renormalization() {
        let spec = GaussianSpec::new(0.0, 0.1, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let peak = spec.envelope(0.0).powi(2);
        assert!((peak - 1.0 / (0.1 * PI.sqrt())).abs() < 1e-12);
        assert!((peak - 5.6419).abs() < 1e-4);
    }

    #[test]
    fn unnormalized_weights_rejected() {
        assert!(GaussianSpec::new(0.0, 0.1, c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(GaussianSpec::new(0.0, -0.1, c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn sampled_norm_unit() {
        let spec = GaussianSpec::equal_superposition(1.0, 0.05).unwrap();
        let s = sample_gaussian(&spec, &KGrid::standard()).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn narrow_grid_rejected() {
        let spec = GaussianSpec::equal_superposition(0.0, 0.5).unwrap();
        let g = make_k_grid(-2.0, 2.0, 512).unwrap();
        assert!(sample_gaussian(&spec, &g).is_err());
    }

    #[test]
    fn under_resolved_grid_reports_truncation() {
        // Spacing far coarser than the width: the discrete norm misses.
        let spec = GaussianSpec::equal_superposition(0.0013, 0.001).unwrap();
        let g = make_k_grid(-8.0, 8.0, 4096).unwrap();
        assert!(matches!(
            sample_gaussian(&spec, &g),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn position_density_is_translation_invariant_in_k() {
        let g = KGrid::standard();
        let f = Fourier::new(&g);
        let a = f.to_position(&sample_gaussian(&GaussianSpec::equal_superposition(0.0, 0.2).unwrap(), &g).unwrap());
        let b = f.to_position(&sample_gaussian(&GaussianSpec::equal_superposition(1.5, 0.2).unwrap(), &g).unwrap());
        for (ra, rb) in a.density().iter().zip(b.density()) {
            assert!((ra - rb).abs() < 1e-12);
        }
    }

    #[test]
    fn mismatched_position_grid_rejected() {
        let g = KGrid::standard();
        let s = sample_gaussian(&GaussianSpec::equal_superposition(0.0, 0.2).unwrap(), &g).unwrap();
        let x = to_position(&s);
        let other = make_k_grid(-4.0, 4.0, 4096).unwrap();
        assert!(from_position(&x, &other).is_err());
    }
}
