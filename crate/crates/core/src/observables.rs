//! Observables of evolved spinors: densities, populations and the centre of
//! mass, each by quadrature on the simulation grid.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::evolve::{propagate_unchecked, Limit, ModeTrajectory};
use crate::grid::{trapezoid, KGrid};
use crate::params::DimensionlessParams;
use crate::spinor::{sample_gaussian, Fourier, GaussianSpec, SpinorK, SpinorX};

/// Largest norm fraction allowed outside |x| < L/8 of the position box.
pub const RESOLUTION_LIMIT: f64 = 1e-10;
/// Largest imaginary part tolerated in i∫Ψ†∂_kΨ dk.
pub const IMAGINARY_LIMIT: f64 = 1e-10;

/// (N₁, N₂) = ∫|Ψᵢ(k)|² dk by the trapezoidal rule.
pub fn populations(state: &SpinorK) -> (f64, f64) {
    let dk = state.grid.dk();
    (
        trapezoid(state.psi1.iter().map(|z| z.norm_sqr()), dk),
        trapezoid(state.psi2.iter().map(|z| z.norm_sqr()), dk),
    )
}

/// Norm fraction carried by |x| ≥ L/8, where L is the position period.
///
/// Keeping the packet inside |x| < L/8 is the same as keeping the momentum
/// phase gradient below π/4 per grid step.
pub fn outer_fraction(state: &SpinorX) -> f64 {
    let g = state.grid;
    let edge = g.period() / 8.0;
    let outer: f64 = state
        .density()
        .iter()
        .enumerate()
        .filter(|(j, _)| g.node(*j).abs() >= edge)
        .map(|(_, r)| r)
        .sum::<f64>()
        * g.dx();
    outer / state.norm()
}

fn check_resolution(sx: &SpinorX) -> Result<()> {
    let fraction = outer_fraction(sx);
    if fraction > RESOLUTION_LIMIT {
        return Err(Error::Resolution {
            fraction,
            edge: sx.grid.period() / 8.0,
        });
    }
    Ok(())
}

fn spectral_com(fourier: &Fourier, state: &SpinorK) -> Result<f64> {
    let sx = fourier.to_position(state);
    check_resolution(&sx)?;
    let xs = sx.grid.nodes();
    // i∂_k Ψ(k) is the transform of xΨ(x)
    let weighted = |psi: &[Complex64]| -> Vec<Complex64> {
        let xpsi: Vec<Complex64> = psi.iter().zip(&xs).map(|(p, &x)| p * x).collect();
        fourier.x_to_k(&xpsi)
    };
    let d1 = weighted(&sx.psi1);
    let d2 = weighted(&sx.psi2);
    let total: Complex64 = state
        .psi1
        .iter()
        .zip(&d1)
        .chain(state.psi2.iter().zip(&d2))
        .map(|(p, d)| p.conj() * d)
        .sum::<Complex64>()
        * state.grid.dk();
    let norm = state.norm();
    if total.im.abs() > IMAGINARY_LIMIT * norm.max(1.0) {
        return Err(Error::ImaginaryResidual { residual: total.im });
    }
    Ok(total.re / norm)
}

/// ⟨x⟩ = i∫Ψ†∂_kΨ dk with the derivative taken spectrally.
///
/// Fails with [`Error::Resolution`] when the packet leaves the well-resolved
/// part of the position box.
pub fn centre_of_mass(state: &SpinorK) -> Result<f64> {
    state.ensure_normalized(1e-8)?;
    spectral_com(&Fourier::new(&state.grid), state)
}

/// ⟨x⟩ from the fourth-order central difference of Ψ(k).
pub fn centre_of_mass_fd(state: &SpinorK) -> Result<f64> {
    state.ensure_normalized(1e-8)?;
    check_resolution(&Fourier::new(&state.grid).to_position(state))?;
    let h = state.grid.dk();
    let deriv = |psi: &[Complex64]| -> Vec<Complex64> {
        let n = psi.len();
        let at = |i: isize| -> Complex64 {
            if i < 0 || i >= n as isize {
                Complex64::new(0.0, 0.0)
            } else {
                psi[i as usize]
            }
        };
        (0..n as isize)
            .map(|i| (at(i - 2) - at(i - 1) * 8.0 + at(i + 1) * 8.0 - at(i + 2)) / (12.0 * h))
            .collect()
    };
    let i = Complex64::new(0.0, 1.0);
    let d1 = deriv(&state.psi1);
    let d2 = deriv(&state.psi2);
    let total: Complex64 = state
        .psi1
        .iter()
        .zip(&d1)
        .chain(state.psi2.iter().zip(&d2))
        .map(|(p, d)| i * p.conj() * d)
        .sum::<Complex64>()
        * h;
    Ok(total.re / state.norm())
}

/// ∫ x ρ(x) dx on the conjugate position grid.
pub fn centre_of_mass_position(state: &SpinorK) -> Result<f64> {
    let sx = Fourier::new(&state.grid).to_position(state);
    check_resolution(&sx)?;
    Ok(sx.first_moment() / sx.norm())
}

/// ⟨x(τ)⟩ of an evolved Gaussian as a quadrature over single-mode
/// Heisenberg trajectories, exact for a constant internal state.
pub fn centre_of_mass_modes(spec: &GaussianSpec, params: &DimensionlessParams, limit: Limit, grid: &KGrid, tau: f64) -> f64 {
    let kinetic = matches!(limit, Limit::Full);
    let values = (0..grid.len()).map(|i| {
        let k = grid.node(i);
        let g2 = spec.envelope(k).powi(2);
        let mut x = ModeTrajectory::new(k, spec.c1, spec.c2, params).displacement(tau);
        if kinetic {
            x += 2.0 * k * tau;
        }
        g2 * x
    });
    let weight = trapezoid((0..grid.len()).map(|i| spec.envelope(grid.node(i)).powi(2)), grid.dk());
    trapezoid(values, grid.dk()) / weight
}

/// Time series of the scalar observables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObservableSeries {
    pub tau: Vec<f64>,
    pub com: Vec<f64>,
    pub n1: Vec<f64>,
    pub n2: Vec<f64>,
    pub delta_n: Vec<f64>,
    pub norm: Vec<f64>,
}

impl ObservableSeries {
    /// Largest |norm − 1| over the series.
    pub fn norm_drift(&self) -> f64 {
        self.norm.iter().map(|n| (n - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Largest |N₁ + N₂ − 1| over the series.
    pub fn population_drift(&self) -> f64 {
        self.n1
            .iter()
            .zip(&self.n2)
            .map(|(a, b)| (a + b - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    com: f64,
    n1: f64,
    n2: f64,
    norm: f64,
}

/// Evolve `initial` to every τ in `tau_grid` and record the observables.
///
/// With `with_com` false the centre of mass is skipped (recorded as NaN),
/// which avoids the transforms when only populations are needed.
pub fn observe(initial: &SpinorK, params: &DimensionlessParams, limit: Limit, tau_grid: &[f64], with_com: bool) -> Result<ObservableSeries> {
    initial.ensure_normalized(1e-8)?;
    let fourier = with_com.then(|| Fourier::new(&initial.grid));
    let samples: Vec<Sample> = tau_grid
        .par_iter()
        .map(|&tau| -> Result<Sample> {
            let state = propagate_unchecked(initial, tau, params, limit);
            let (n1, n2) = populations(&state);
            let com = match &fourier {
                Some(f) => spectral_com(f, &state)?,
                None => f64::NAN,
            };
            Ok(Sample {
                com,
                n1,
                n2,
                norm: state.norm(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ObservableSeries {
        tau: tau_grid.to_vec(),
        com: samples.iter().map(|s| s.com).collect(),
        n1: samples.iter().map(|s| s.n1).collect(),
        n2: samples.iter().map(|s| s.n2).collect(),
        delta_n: samples.iter().map(|s| s.n1 - s.n2).collect(),
        norm: samples.iter().map(|s| s.norm).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Position,
    Momentum,
}

impl std::str::FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Space::Position),
            "k" => Ok(Space::Momentum),
            other => Err(invalid("space", format!("expected `x` or `k`, got `{other}`"))),
        }
    }
}

/// Densities on a (τ, coordinate) lattice. Row `i` belongs to `tau[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMap {
    pub space: Space,
    pub tau: Vec<f64>,
    pub coords: Vec<f64>,
    pub step: f64,
    pub total: Vec<Vec<f64>>,
    pub component1: Vec<Vec<f64>>,
    pub component2: Vec<Vec<f64>>,
}

impl DensityMap {
    /// Riemann-sum integral of row `i`.
    pub fn row_integral(&self, i: usize) -> f64 {
        self.total[i].iter().sum::<f64>() * self.step
    }
}

pub fn density_map(
    spec: &GaussianSpec,
    params: &DimensionlessParams,
    grid: &KGrid,
    tau_grid: &[f64],
    space: Space,
    limit: Limit,
) -> Result<DensityMap> {
    let initial = sample_gaussian(spec, grid)?;
    let fourier = Fourier::new(grid);
    let rows: Vec<(Vec<f64>, Vec<f64>)> = tau_grid
        .par_iter()
        .map(|&tau| {
            let state = propagate_unchecked(&initial, tau, params, limit);
            let (a, b) = match space {
                Space::Momentum => (state.psi1, state.psi2),
                Space::Position => {
                    let sx = fourier.to_position(&state);
                    (sx.psi1, sx.psi2)
                }
            };
            (
                a.iter().map(|z| z.norm_sqr()).collect(),
                b.iter().map(|z| z.norm_sqr()).collect(),
            )
        })
        .collect();
    let (coords, step) = match space {
        Space::Momentum => (grid.nodes(), grid.dk()),
        Space::Position => (fourier.xgrid().nodes(), fourier.xgrid().dx()),
    };
    let total = rows
        .iter()
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect();
    let (component1, component2) = rows.into_iter().unzip();
    Ok(DensityMap {
        space,
        tau: tau_grid.to_vec(),
        coords,
        step,
        total,
        component1,
        component2,
    })
}
