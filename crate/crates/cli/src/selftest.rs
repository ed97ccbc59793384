//! Quick invariant suite, seconds rather than minutes.

use std::f64::consts::PI;

use num_complex::Complex64;
use zitter::analytic::{delta_limit_population, erfc};
use zitter::evolve::{propagate, Limit};
use zitter::grid::{make_k_grid, KGrid};
use zitter::observables::{centre_of_mass, centre_of_mass_modes, populations};
use zitter::params::DimensionlessParams;
use zitter::spinor::{sample_gaussian, to_position, Fourier, GaussianSpec};
use zitter::tripod::{connection_numeric, dark_states, vector_potential, TripodField, DEFAULT_SCALED_STEP};
use zitter::twolevel::{factorize, rabi_frequency, TwoLevelParams};

type Check = Result<(f64, f64), zitter::Error>;
type Named = (&'static str, fn() -> Check);

fn unitarity() -> Check {
    let s = sample_gaussian(&GaussianSpec::equal_superposition(0.0, 0.05)?, &KGrid::standard())?;
    let p = DimensionlessParams::with_gap(1.0);
    let mut worst = 0.0f64;
    for limit in [Limit::Full, Limit::Dirac] {
        for tau in [0.0, 37.0, 100.0] {
            worst = worst.max((propagate(&s, tau, &p, limit)?.norm() - 1.0).abs());
        }
    }
    Ok((worst, 1e-12))
}

fn fourier_round_trip() -> Check {
    let grid = make_k_grid(-4.0, 4.0, 750)?;
    let f = Fourier::new(&grid);
    let psi: Vec<Complex64> = (0..grid.len()).map(|i| Complex64::from_polar(1.0, 0.37 * i as f64)).collect();
    let back = f.x_to_k(&f.k_to_x(&psi));
    Ok((psi.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max), 1e-12))
}

fn no_transfer() -> Check {
    let s = sample_gaussian(&GaussianSpec::equal_superposition(0.0, 0.1)?, &KGrid::standard())?;
    let (n1, n2) = populations(&propagate(&s, 13.0, &DimensionlessParams::with_gap(1.0), Limit::Full)?);
    Ok(((n1 - n2).abs(), 1e-12))
}

fn com_oracle() -> Check {
    let spec = GaussianSpec::with_relative_phase(0.5, 0.2, 0.7)?;
    let grid = KGrid::standard();
    let p = DimensionlessParams::with_gap(1.5);
    let s = sample_gaussian(&spec, &grid)?;
    let x = centre_of_mass(&propagate(&s, 11.0, &p, Limit::Full)?)?;
    Ok(((x - centre_of_mass_modes(&spec, &p, Limit::Full, &grid, 11.0)).abs(), 1e-9))
}

fn narrow_population() -> Check {
    let p = DimensionlessParams::with_gap(1.0);
    Ok(((delta_limit_population(1.0, &p, PI / (2.0 * 5f64.sqrt())) - 0.8).abs(), 1e-14))
}

fn two_level_rabi() -> Check {
    let spec = GaussianSpec::equal_superposition(1.0, 0.02)?;
    let sx = to_position(&sample_gaussian(&spec, &KGrid::standard())?);
    let f = factorize(&sx)?;
    let tl = TwoLevelParams::from_envelopes(&f.phi1, &f.phi2, &sx.grid, &DimensionlessParams::with_gap(1.0))?;
    Ok(((rabi_frequency(&tl) - 5f64.sqrt()).abs(), 1e-10))
}

fn dark_states_dark() -> Check {
    let kappa = 2.0 * PI / 780e-9;
    let mut worst = 0.0f64;
    for (i, theta) in [0.1, 0.7, 1.4].into_iter().enumerate() {
        let x = 1.3e-7 * i as f64;
        let pair = dark_states(theta, kappa, x, -x);
        let h = TripodField { omega: 1.0, theta, kappa }.interaction_hamiltonian(x, -x);
        for d in pair.embedded() {
            worst = worst.max((h * d).norm());
        }
        let g = pair.overlaps();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - want).norm());
            }
        }
    }
    Ok((worst, 1e-14))
}

fn gauge_potential() -> Check {
    let kappa = 2.0 * PI / 780e-9;
    let theta = 0.6;
    let pair = dark_states(theta, kappa, 2e-7, 3e-7);
    let a = connection_numeric(&pair, DEFAULT_SCALED_STEP / kappa)?;
    let unit = zitter::params::HBAR * kappa;
    Ok(((a - vector_potential(theta, kappa).matrix).norm() / unit, 1e-8))
}

fn erfc_value() -> Check {
    Ok(((erfc(1.0) - 0.157_299_207_050_285_13).abs(), 5e-16))
}

pub fn run() -> bool {
    let checks: [Named; 9] = [
        ("unitarity", unitarity),
        ("fourier round trip", fourier_round_trip),
        ("no transfer at k0 = 0", no_transfer),
        ("centre of mass vs mode quadrature", com_oracle),
        ("narrow-packet population peak", narrow_population),
        ("two-level Rabi frequency", two_level_rabi),
        ("dark states orthonormal and dark", dark_states_dark),
        ("vector potential", gauge_potential),
        ("erfc(1)", erfc_value),
    ];
    let mut ok = true;
    for (name, f) in checks {
        match f() {
            Ok((value, limit)) => {
                let pass = value < limit;
                ok &= pass;
                println!("{} {name}: {value:.3e} (limit {limit:.0e})", if pass { "PASS" } else { "FAIL" });
            }
            Err(e) => {
                ok = false;
                println!("FAIL {name}: {e}");
            }
        }
    }
    ok
}
