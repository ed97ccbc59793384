//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p zitter --test acceptance`.

use std::f64::consts::{FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use zitter::analytic::{delta_limit_population, drift, drift_rederived, physical_scales, zitter_term, zitter_term_rederived};
use zitter::evolve::Limit;
use zitter::grid::{make_k_grid, KGrid};
use zitter::observables::{density_map, observe, Space};
use zitter::params::{DimensionlessParams, PhysicalParams, HBAR, RB87_MASS};
use zitter::signal::{crossing_frequency, extrema, linear_fit};
use zitter::spinor::{sample_gaussian, to_position, GaussianSpec};
use zitter::tripod::{connection_numeric, connection_numeric_y, dark_states, scalar_potential_numeric, scalar_potentials, vector_potential, DEFAULT_SCALED_STEP};
use zitter::twolevel::{factorize, rabi_frequency, TwoLevelParams};

type Check = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Check);

fn taus(t_max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn equal_packet(k0: f64, delta: f64, grid: &KGrid) -> Result<zitter::spinor::SpinorK, String> {
    sample_gaussian(&GaussianSpec::equal_superposition(k0, delta).map_err(err)?, grid).map_err(err)
}

// 1. norm conservation under both limits
fn unitarity() -> Check {
    let s = equal_packet(0.0, 0.05, &KGrid::standard())?;
    let p = DimensionlessParams::with_gap(1.0);
    let mut worst = 0.0f64;
    for limit in [Limit::Full, Limit::Dirac] {
        let series = observe(&s, &p, limit, &taus(100.0, 2001), false).map_err(err)?;
        worst = worst.max(series.norm_drift());
    }
    Ok((worst < 1e-12, format!("max |norm - 1| = {worst:.2e} over tau in [0, 100] (limit 1e-12)")))
}

// 2. trembling frequency from zero crossings of x̄ − x_d
fn zb_frequency() -> Check {
    let grid = KGrid::standard();
    let delta = 0.05;
    let s = equal_packet(0.0, delta, &grid)?;
    let t = taus(50.0, 2501);
    let mut ok = true;
    let mut parts = Vec::new();
    for v in [1.0, 3.0] {
        let p = DimensionlessParams::with_gap(v);
        let series = observe(&s, &p, Limit::Full, &t, true).map_err(err)?;
        let resid: Vec<f64> = t
            .iter()
            .zip(&series.com)
            .map(|(&tau, &x)| drift(tau, &p, delta).map(|d| x - d.x_d))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let w = crossing_frequency(&t, &resid).map_err(err)?;
        let rel = w / (2.0 * v) - 1.0;
        ok &= rel.abs() < 5e-3;
        parts.push(format!("V_z={v}: omega={w:.5} vs {:.1} ({:+.3}%)", 2.0 * v, 100.0 * rel));
    }
    Ok((ok, format!("{} (limit 0.5%)", parts.join("; "))))
}

// 3. drift slope against the published erfc formula
fn drift_oracle() -> Check {
    let grid = KGrid::standard();
    let t = taus(50.0, 2501);
    let mut ok = true;
    let mut parts = Vec::new();
    for (v, delta) in [(1.0, 0.1), (1.0, 0.05)] {
        let p = DimensionlessParams::with_gap(v);
        let s = equal_packet(0.0, delta, &grid)?;
        let series = observe(&s, &p, Limit::Full, &t, true).map_err(err)?;
        let y: Vec<f64> = t
            .iter()
            .zip(&series.com)
            .map(|(&tau, &x)| zitter_term(tau, &p, delta).map(|z| x - z.x_z))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let slope = linear_fit(&t, &y).map_err(err)?.slope;
        let published = drift(1.0, &p, delta).map_err(err)?.slope;
        let exact = drift_rederived(1.0, &p, delta).map_err(err)?.slope;
        let rel = slope / published - 1.0;
        ok &= rel.abs() < 0.01;
        parts.push(format!(
            "V_z/Delta={:.0}: numeric slope {slope:.6}, formula {published:.6} ({:+.1}%), exact quadrature form {exact:.6}",
            v / delta,
            100.0 * rel
        ));
    }
    Ok((ok, format!("{} (limit 1%)", parts.join("; "))))
}

// 4. decay of successive extrema against the published envelope
fn damping_envelope() -> Check {
    let (v, delta) = (1.0, 0.1);
    let p = DimensionlessParams::with_gap(v);
    // the packet spreads to |x| ≈ 2000 by τ = 800; this grid resolves |x| < 2680
    let grid = make_k_grid(-1.2, 1.2, 8192).map_err(err)?;
    let s = equal_packet(0.0, delta, &grid)?;
    let t = taus(800.0, 8001);
    let series = observe(&s, &p, Limit::Full, &t, true).map_err(err)?;
    // secular part removed with the exact drift integral
    let y: Vec<f64> = t
        .iter()
        .zip(&series.com)
        .map(|(&tau, &x)| drift_rederived(tau, &p, delta).map(|d| x - d.x_d))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let ex = extrema(&t, &y);
    let env = |tau: f64| zitter_term(tau, &p, delta).map(|z| z.envelope);
    let env_rd = |tau: f64| zitter_term_rederived(tau, &p, delta).map(|z| z.envelope);
    let (mut worst, mut worst_rd) = (0.0f64, 0.0f64);
    for w in ex.windows(2) {
        let measured = w[1].value.abs() / w[0].value.abs();
        let predicted = env(w[1].t).map_err(err)? / env(w[0].t).map_err(err)?;
        let predicted_rd = env_rd(w[1].t).map_err(err)? / env_rd(w[0].t).map_err(err)?;
        worst = worst.max((measured / predicted - 1.0).abs());
        worst_rd = worst_rd.max((measured / predicted_rd - 1.0).abs());
    }
    let last = ex.last().ok_or("no extrema found")?;
    let env_last = env(last.t).map_err(err)?;
    Ok((
        worst < 0.02,
        format!(
            "{} extrema; worst successive-ratio deviation {:.2}% (limit 2%), stationary-phase envelope {:.2}%; \
             cumulative at tau={:.1}: |extremum| {:.4} vs formula envelope {:.4}",
            ex.len(),
            100.0 * worst,
            100.0 * worst_rd,
            last.t,
            last.value.abs(),
            env_last
        ),
    ))
}

// 5. narrow-packet population difference against the sharp-momentum limit
fn population_transfer() -> Check {
    let delta = 1e-3;
    let mut worst = 0.0f64;
    let mut worst_printed = 0.0f64;
    for k0 in [0.5, 1.0] {
        let grid = make_k_grid(k0 - 12.0 * delta, k0 + 12.0 * delta, 1024).map_err(err)?;
        let s = equal_packet(k0, delta, &grid)?;
        for v in [1.0, 3.0] {
            let p = DimensionlessParams::with_gap(v);
            let w0 = (4.0 * k0 * k0 + v * v).sqrt();
            let t = taus(2.0 * PI / w0, 401);
            let series = observe(&s, &p, Limit::Full, &t, false).map_err(err)?;
            for (&tau, &dn) in t.iter().zip(&series.delta_n) {
                let derived = delta_limit_population(k0, &p, tau);
                // same expression with the denominator √(4k₀² + Ṽ_z²)
                let printed = derived * w0;
                worst = worst.max((dn - derived).abs());
                worst_printed = worst_printed.max((dn - printed).abs());
            }
        }
    }
    Ok((
        worst < 1e-4,
        format!(
            "denominator 4k0^2+V_z^2: max |error| {worst:.2e} (limit 1e-4); \
             denominator sqrt(4k0^2+V_z^2): max |error| {worst_printed:.2e}"
        ),
    ))
}

// 6. no transfer at k0 = 0
fn no_transfer() -> Check {
    let s = equal_packet(0.0, 0.05, &KGrid::standard())?;
    let series = observe(&s, &DimensionlessParams::with_gap(1.0), Limit::Full, &taus(20.0, 2001), false).map_err(err)?;
    let worst = series.delta_n.iter().map(|d| d.abs()).fold(0.0, f64::max);
    Ok((worst < 1e-10, format!("max |Delta N| = {worst:.2e} over tau in [0, 20] (limit 1e-10)")))
}

// 7. two-level Rabi frequency against the full population dynamics
fn rabi_consistency() -> Check {
    let grid = KGrid::standard();
    let s = equal_packet(1.0, 0.02, &grid)?;
    let p = DimensionlessParams::with_gap(1.0);
    let f = factorize(&to_position(&s)).map_err(err)?;
    let tl = TwoLevelParams::from_envelopes(&f.phi1, &f.phi2, &to_position(&s).grid, &p).map_err(err)?;
    let w_r = rabi_frequency(&tl);
    let period = PI / w_r;
    let t = taus(1.5 * period, 3001);
    let series = observe(&s, &p, Limit::Full, &t, false).map_err(err)?;
    // ΔN starts at its minimum; the next minimum closes the first period
    let first_min = extrema(&t, &series.delta_n)
        .into_iter()
        .find(|e| !e.is_max)
        .ok_or("no population minimum in the first period")?;
    let measured = 2.0 * PI / first_min.t;
    let rel = measured / (2.0 * w_r) - 1.0;
    Ok((
        rel.abs() < 0.02,
        format!(
            "Omega~={:.6}, omega_R={w_r:.6}; Delta N angular frequency {measured:.6} vs 2 omega_R = {:.6} ({:+.3}%, limit 2%)",
            tl.omega_tilde,
            2.0 * w_r,
            100.0 * rel
        ),
    ))
}

// 8. closed-form gauge potentials against finite differences of the dark states
fn gauge_verification() -> Check {
    let kappa = 2.0 * PI / 780e-9;
    let mass = RB87_MASS;
    let h = DEFAULT_SCALED_STEP / kappa;
    let a_unit = HBAR * kappa;
    let e_unit = HBAR * HBAR * kappa * kappa / (2.0 * mass);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut worst_a, mut worst_phi) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let theta = rng.random_range(0.0..PI / 2.0);
        let x = rng.random_range(0.0..780e-9);
        let y = rng.random_range(0.0..780e-9);
        let pair = dark_states(theta, kappa, x, y);
        let ax = connection_numeric(&pair, h).map_err(err)?;
        let ay = connection_numeric_y(&pair, h).map_err(err)?;
        let phi = scalar_potential_numeric(&pair, h, mass).map_err(err)?;
        let ax_cf = vector_potential(theta, kappa).matrix;
        let c2 = theta.cos().powi(2);
        let ay_cf = nalgebra::Matrix2::new(a_unit.into(), 0.0.into(), 0.0.into(), Complex64::from(a_unit * c2));
        let (phi_cf, _) = scalar_potentials(theta, kappa, 0.0, 0.0, mass);
        let d = |m: &nalgebra::Matrix2<Complex64>| m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst_a = worst_a.max(d(&(ax - ax_cf)).max(d(&(ay - ay_cf))) / a_unit);
        worst_phi = worst_phi.max(d(&(phi - phi_cf)) / e_unit);
    }
    Ok((
        worst_a < 1e-8 && worst_phi < 1e-8,
        format!("20 samples: max |A - A_cf| = {worst_a:.2e} hbar kappa, max |Phi - Phi_cf| = {worst_phi:.2e} E_r (limit 1e-8)"),
    ))
}

// 9. full and Dirac densities converge as the packet widens
fn dirac_convergence() -> Check {
    let grid = KGrid::standard();
    let p = DimensionlessParams::with_gap(1.0);
    let t = taus(5.0, 51);
    let mut l1 = Vec::new();
    let mut linf = Vec::new();
    for delta in [0.4, 0.2, 0.1, 0.05] {
        let spec = GaussianSpec::equal_superposition(0.0, delta).map_err(err)?;
        let full = density_map(&spec, &p, &grid, &t, Space::Position, Limit::Full).map_err(err)?;
        let dirac = density_map(&spec, &p, &grid, &t, Space::Position, Limit::Dirac).map_err(err)?;
        let (mut a, mut b) = (0.0f64, 0.0f64);
        for (rf, rd) in full.total.iter().zip(&dirac.total) {
            let diff = rf.iter().zip(rd).map(|(x, y)| (x - y).abs());
            a = a.max(diff.clone().sum::<f64>() * full.step);
            b = b.max(diff.fold(0.0, f64::max));
        }
        l1.push(a);
        linf.push(b);
    }
    let decreasing = l1.windows(2).all(|w| w[1] < w[0]) && linf.windows(2).all(|w| w[1] < w[0]);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", ");
    Ok((
        decreasing,
        format!("Delta = 0.4, 0.2, 0.1, 0.05: L1 residual [{}], max-norm residual [{}]", fmt(&l1), fmt(&linf)),
    ))
}

// 10. laboratory scales for rubidium
fn physical_scale_check() -> Check {
    let sigma = 10e-6;
    let within = |x: f64, target: f64| x >= target / 3.0 && x <= target * 3.0;
    let mut best: Option<(f64, f64, f64, f64)> = None;
    let mut best_rd: Option<(f64, f64, f64)> = None;
    for i in 0..=120 {
        // Ṽ_z from 0.01 to 10 on a log ladder, realized at θ = π/4 with V₁ = 0
        let v = 0.01 * 1000f64.powf(i as f64 / 120.0);
        let rb = PhysicalParams::rubidium_87(780e-9, FRAC_PI_4, 0.0, 0.5 - 4.0 * v).map_err(err)?;
        let sc = physical_scales(&rb, sigma).map_err(err)?;
        let miss = (sc.zb_frequency / 1e3).ln().abs().max((sc.damping_onset / 1e-3).ln().abs());
        if best.is_none_or(|b| miss < b.0) {
            best = Some((miss, v, sc.zb_frequency, sc.damping_onset));
        }
        let miss_rd = (sc.zb_frequency / 1e3).ln().abs().max((sc.damping_onset_rederived / 1e-3).ln().abs());
        if best_rd.is_none_or(|b| miss_rd < b.0) {
            best_rd = Some((miss_rd, sc.zb_frequency, sc.damping_onset_rederived));
        }
    }
    let (_, v, f, t) = best.ok_or("empty ladder")?;
    let (_, f_rd, t_rd) = best_rd.ok_or("empty ladder")?;
    let rb = PhysicalParams::rubidium_87(780e-9, FRAC_PI_4, 0.0, 0.0).map_err(err)?;
    let sc = physical_scales(&rb, sigma).map_err(err)?;
    Ok((
        within(f, 1e3) && within(t, 1e-3),
        format!(
            "recoil velocity {:.3} cm/s, Delta = {:.5}; best case V_z = {v:.3} E_r: f_ZB = {:.0} Hz, onset = {:.3} ms \
             (targets 1 kHz, 1 ms within x3); with onset 4 Delta^2 tau/V_z = 1: f_ZB = {:.0} Hz, onset = {:.3} ms",
            100.0 * sc.recoil_velocity,
            sc.delta,
            f,
            1e3 * t,
            f_rd,
            1e3 * t_rd
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("unitarity", unitarity),
        ("zitterbewegung frequency", zb_frequency),
        ("drift oracle", drift_oracle),
        ("damping envelope", damping_envelope),
        ("population transfer", population_transfer),
        ("no-transfer symmetry", no_transfer),
        ("rabi consistency", rabi_consistency),
        ("gauge verification", gauge_verification),
        ("dirac-limit convergence", dirac_convergence),
        ("physical scales", physical_scale_check),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} [{:.1} s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
