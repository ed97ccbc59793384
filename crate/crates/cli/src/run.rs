//! Subcommand bodies. Each returns whether every enforced tolerance held.

use std::f64::consts::SQRT_2;
use std::path::{Path, PathBuf};

use zitter::analytic::{
    delta_limit_population, drift, drift_rederived, physical_scales, zitter_term, zitter_term_rederived, ZITTER_MIN_RATIO,
};
use zitter::evolve::{mode_frequency, Limit};
use zitter::observables::{centre_of_mass_modes, density_map, observe, ObservableSeries, Space};
use zitter::signal::{breakdown_time, crossing_frequency, linear_fit};
use zitter::spinor::{sample_gaussian, to_position, GaussianSpec};
use zitter::twolevel::{factorize, rabi_frequency, TwoLevelParams};

use crate::config::{OutputKind, Resolved, Run};
use crate::output::{ensure_dir, num, Summary, Table};
use crate::CliError;

pub const NORM_DRIFT_LIMIT: f64 = 1e-10;
pub const POPULATION_DRIFT_LIMIT: f64 = 1e-10;
pub const COM_ORACLE_LIMIT: f64 = 1e-8;
pub const NO_TRANSFER_LIMIT: f64 = 1e-10;
/// ΔN swings below this are treated as no Rabi signal.
pub const RABI_SIGNAL_FLOOR: f64 = 1e-6;

fn precondition(module: &'static str) -> impl Fn(zitter::Error) -> CliError {
    move |source| CliError::precondition(module, source)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn leaf_dir(out: &Path, r: &Resolved, run: &Run, limit: Limit) -> PathBuf {
    let mut d = out.join(&r.name);
    if let Some(label) = &run.label {
        d = d.join(label);
    }
    d.join(limit.name())
}

fn equal_real_amplitudes(spec: &GaussianSpec) -> bool {
    (spec.c1 - spec.c2).norm() < 1e-12
}

fn describe_state(s: &mut Summary, r: &Resolved, run: &Run, limit: Limit) {
    s.put("scenario", &r.name);
    s.put("variant", run.label.as_deref().unwrap_or("-"));
    s.put("limit", limit.name());
    s.num("state.k0[kappa]", run.spec.k0);
    s.num("state.delta[kappa]", run.spec.delta);
    s.put("state.c1", format!("{} {}", num(run.spec.c1.re), num(run.spec.c1.im)));
    s.put("state.c2", format!("{} {}", num(run.spec.c2.re), num(run.spec.c2.im)));
    s.num("model.v_z[E_r]", r.params.v_z);
    s.num("model.c_theta", r.params.c_theta);
    s.num("grid.k_min[kappa]", r.grid.k_min());
    s.num("grid.k_max[kappa]", r.grid.k_max());
    s.put("grid.n", r.grid.len());
    s.num("time.tau_max[reduced]", *r.tau.last().unwrap_or(&0.0));
    s.put("time.samples", r.tau.len());
}

/// x̄(τ) minus its secular part: the exact drift where it applies, a line otherwise.
fn oscillation(r: &Resolved, spec: &GaussianSpec, series: &ObservableSeries) -> Result<(Vec<f64>, &'static str), CliError> {
    if r.params.c_theta == 1.0 && spec.k0 == 0.0 && equal_real_amplitudes(spec) {
        let mut out = Vec::with_capacity(series.tau.len());
        for (&t, &x) in series.tau.iter().zip(&series.com) {
            out.push(x - drift_rederived(t, &r.params, spec.delta).map_err(precondition("analytic"))?.x_d);
        }
        return Ok((out, "exact_drift"));
    }
    let fit = linear_fit(&series.tau, &series.com).map_err(precondition("signal"))?;
    let out = series
        .tau
        .iter()
        .zip(&series.com)
        .map(|(t, x)| x - fit.slope * t - fit.intercept)
        .collect();
    Ok((out, "linear"))
}

fn rabi_report(s: &mut Summary, r: &Resolved, run: &Run, series: &ObservableSeries) -> Result<(), CliError> {
    let initial = sample_gaussian(&run.spec, &r.grid).map_err(precondition("spinor"))?;
    let sx = to_position(&initial);
    let predicted = factorize(&sx)
        .and_then(|f| TwoLevelParams::from_envelopes(&f.phi1, &f.phi2, &sx.grid, &r.params))
        .map(|tl| rabi_frequency(&tl));
    match predicted {
        Ok(w) => s.num("rabi.two_level[1/reduced]", w),
        Err(e) => s.put("rabi.two_level[1/reduced]", format!("unavailable ({e})")),
    }
    let (lo, hi) = series
        .delta_n
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    if hi - lo > RABI_SIGNAL_FLOOR {
        let mean = series.delta_n.iter().sum::<f64>() / series.delta_n.len() as f64;
        let centred: Vec<f64> = series.delta_n.iter().map(|x| x - mean).collect();
        match crossing_frequency(&series.tau, &centred) {
            Ok(w) => s.num("rabi.extracted[1/reduced]", 0.5 * w),
            Err(_) => s.put("rabi.extracted[1/reduced]", "none (fewer than three crossings)"),
        }
    } else {
        s.put("rabi.extracted[1/reduced]", "none (no population transfer)");
    }
    Ok(())
}

fn write_com(dir: &Path, r: &Resolved, series: &ObservableSeries) -> Result<(), CliError> {
    let path = dir.join("com.csv");
    match &r.physical {
        Some(p) => {
            let mut t = Table::create(&path, &["tau[reduced]", "x_com[1/kappa]", "t[s]", "x_com[m]"])?;
            for (&tau, &x) in series.tau.iter().zip(&series.com) {
                t.row(&[tau, x, tau * p.time_unit(), x / p.kappa])?;
            }
            t.finish()
        }
        None => {
            let mut t = Table::create(&path, &["tau[reduced]", "x_com[1/kappa]"])?;
            for (&tau, &x) in series.tau.iter().zip(&series.com) {
                t.row(&[tau, x])?;
            }
            t.finish()
        }
    }
}

fn write_populations(dir: &Path, r: &Resolved, series: &ObservableSeries) -> Result<(), CliError> {
    let path = dir.join("populations.csv");
    let mut header = vec!["tau[reduced]", "n1", "n2", "delta_n", "norm"];
    if r.physical.is_some() {
        header.push("t[s]");
    }
    let mut t = Table::create(&path, &header)?;
    for i in 0..series.tau.len() {
        let mut row = vec![series.tau[i], series.n1[i], series.n2[i], series.delta_n[i], series.norm[i]];
        if let Some(p) = &r.physical {
            row.push(series.tau[i] * p.time_unit());
        }
        t.row(&row)?;
    }
    t.finish()
}

fn write_density(dir: &Path, r: &Resolved, run: &Run, limit: Limit, space: Space) -> Result<(), CliError> {
    let taus: Vec<f64> = r.tau.iter().copied().step_by(r.output.tau_stride).collect();
    let map = density_map(&run.spec, &r.params, &r.grid, &taus, space, limit).map_err(precondition("observables"))?;
    let (file, coord, rho) = match space {
        Space::Position => ("density_x.csv", "x[1/kappa]", ["rho[kappa]", "rho1[kappa]", "rho2[kappa]"]),
        Space::Momentum => ("density_k.csv", "k[kappa]", ["rho[1/kappa]", "rho1[1/kappa]", "rho2[1/kappa]"]),
    };
    let keep: Vec<usize> = (0..map.coords.len())
        .filter(|&j| space == Space::Momentum || map.coords[j].abs() <= r.output.x_range)
        .step_by(r.output.stride)
        .collect();
    let mut header = vec!["tau[reduced]", coord, rho[0], rho[1], rho[2]];
    if r.physical.is_some() {
        header.push("t[s]");
        header.push(if space == Space::Position { "x[m]" } else { "k[1/m]" });
    }
    let path = dir.join(file);
    let mut t = Table::create(&path, &header)?;
    for (i, &tau) in map.tau.iter().enumerate() {
        for &j in &keep {
            let c = map.coords[j];
            let mut row = vec![tau, c, map.total[i][j], map.component1[i][j], map.component2[i][j]];
            if let Some(p) = &r.physical {
                row.push(tau * p.time_unit());
                row.push(if space == Space::Position { c / p.kappa } else { c * p.kappa });
            }
            t.row(&row)?;
        }
    }
    t.finish()
}

// published and re-derived closed forms next to the numeric trace
fn write_overlay(dir: &Path, s: &mut Summary, r: &Resolved, run: &Run, series: &ObservableSeries) -> Result<(), CliError> {
    let spec = &run.spec;
    let v = r.params.v_z.abs();
    let reason = if r.params.c_theta != 1.0 {
        Some("c_theta != 1")
    } else if spec.k0 != 0.0 || !equal_real_amplitudes(spec) {
        Some("closed forms assume k0 = 0 and c = (1, 1)/sqrt 2")
    } else if v / spec.delta < ZITTER_MIN_RATIO {
        Some("v_z/delta below the stationary-phase range")
    } else {
        None
    };
    if let Some(reason) = reason {
        s.put("overlay", format!("skipped ({reason})"));
        return Ok(());
    }
    let path = dir.join("overlay.csv");
    let mut t = Table::create(
        &path,
        &["tau[reduced]", "x_com[1/kappa]", "x_published[1/kappa]", "x_rederived[1/kappa]"],
    )?;
    let (mut worst_pub, mut worst_re) = (0.0f64, 0.0f64);
    for (&tau, &x) in series.tau.iter().zip(&series.com) {
        let analytic = |e: zitter::Error| CliError::precondition("analytic", e);
        let published = drift(tau, &r.params, spec.delta).map_err(analytic)?.x_d
            + zitter_term(tau, &r.params, spec.delta).map_err(analytic)?.x_z;
        let rederived = drift_rederived(tau, &r.params, spec.delta).map_err(analytic)?.x_d
            + zitter_term_rederived(tau, &r.params, spec.delta).map_err(analytic)?.x_z;
        worst_pub = worst_pub.max((x - published).abs());
        worst_re = worst_re.max((x - rederived).abs());
        t.row(&[tau, x, published, rederived])?;
    }
    t.finish()?;
    s.put("overlay", "overlay.csv");
    // residuals in units of the oscillation amplitude 1/v_z
    s.num("overlay.published_residual[amplitude]", worst_pub * v);
    s.num("overlay.rederived_residual[amplitude]", worst_re * v);
    Ok(())
}

fn evolve_one(r: &Resolved, run: &Run, limit: Limit, dir: &Path) -> Result<bool, CliError> {
    ensure_dir(dir)?;
    let initial = sample_gaussian(&run.spec, &r.grid).map_err(precondition("spinor"))?;
    let series = observe(&initial, &r.params, limit, &r.tau, true).map_err(precondition("observables"))?;
    let mut s = Summary::default();
    describe_state(&mut s, r, run, limit);

    let mut ok = s.check("norm_drift", series.norm_drift(), NORM_DRIFT_LIMIT);
    ok &= s.check("population_drift", series.population_drift(), POPULATION_DRIFT_LIMIT);
    let modes: Vec<f64> = r
        .tau
        .iter()
        .map(|&t| centre_of_mass_modes(&run.spec, &r.params, limit, &r.grid, t))
        .collect();
    ok &= s.check("com_vs_mode_quadrature[1/kappa]", max_abs_diff(&series.com, &modes), COM_ORACLE_LIMIT);
    if run.spec.k0 == 0.0 && (run.spec.c1.norm() - run.spec.c2.norm()).abs() < 1e-12 {
        let worst = series.delta_n.iter().map(|x| x.abs()).fold(0.0, f64::max);
        ok &= s.check("no_transfer_delta_n", worst, NO_TRANSFER_LIMIT);
    }

    let expected = 2.0 * mode_frequency(run.spec.k0, &r.params);
    let (osc, detrend) = oscillation(r, &run.spec, &series)?;
    s.num("zb_frequency.expected[1/reduced]", expected);
    s.put("zb_frequency.detrend", detrend);
    match crossing_frequency(&series.tau, &osc) {
        Ok(w) => {
            s.num("zb_frequency.extracted[1/reduced]", w);
            s.num("zb_frequency.relative_error", w / expected - 1.0);
        }
        Err(_) => s.put("zb_frequency.extracted[1/reduced]", "none (fewer than three crossings)"),
    }
    match breakdown_time(&series.tau, &osc) {
        Some(t) => s.num("zb_breakdown_tau[reduced]", t),
        None => s.put("zb_breakdown_tau[reduced]", "none"),
    }
    rabi_report(&mut s, r, run, &series)?;
    if let Some(p) = &r.physical {
        s.num("physical.time_unit[s]", p.time_unit());
        s.num("physical.length_unit[m]", 1.0 / p.kappa);
    }

    for kind in &r.outputs {
        match kind {
            OutputKind::Com => write_com(dir, r, &series)?,
            OutputKind::Populations => write_populations(dir, r, &series)?,
            OutputKind::DensityX => write_density(dir, r, run, limit, Space::Position)?,
            OutputKind::DensityK => write_density(dir, r, run, limit, Space::Momentum)?,
            OutputKind::AnalyticOverlay => write_overlay(dir, &mut s, r, run, &series)?,
        }
    }
    s.put("status", if ok { "pass" } else { "fail" });
    s.write(&dir.join("summary.txt"))?;
    Ok(ok)
}

pub fn evolve(r: &Resolved, out: &Path) -> Result<bool, CliError> {
    let mut ok = true;
    for run in &r.runs {
        for &limit in &r.limits {
            let dir = leaf_dir(out, r, run, limit);
            let passed = evolve_one(r, run, limit, &dir)?;
            println!("{}: {}", dir.display(), if passed { "pass" } else { "FAIL" });
            ok &= passed;
        }
    }
    Ok(ok)
}

/// Full-vs-Dirac position densities over a ladder of widths.
pub fn compare(r: &Resolved, out: &Path) -> Result<bool, CliError> {
    let base = &r.runs[0].spec;
    let dir = out.join(&r.name).join("compare");
    ensure_dir(&dir)?;
    let taus: Vec<f64> = r.tau.iter().copied().step_by(r.output.tau_stride).collect();
    let path = dir.join("compare.csv");
    let mut t = Table::create(&path, &["delta[kappa]", "sigma[1/kappa]", "l1_residual", "max_residual[kappa]"])?;
    let (mut l1, mut linf) = (Vec::new(), Vec::new());
    for &delta in &r.deltas {
        let spec = GaussianSpec::new(base.k0, delta, base.c1, base.c2).map_err(precondition("spinor"))?;
        let full = density_map(&spec, &r.params, &r.grid, &taus, Space::Position, Limit::Full).map_err(precondition("observables"))?;
        let dirac = density_map(&spec, &r.params, &r.grid, &taus, Space::Position, Limit::Dirac).map_err(precondition("observables"))?;
        let (mut a, mut b) = (0.0f64, 0.0f64);
        for (rf, rd) in full.total.iter().zip(&dirac.total) {
            a = a.max(rf.iter().zip(rd).map(|(x, y)| (x - y).abs()).sum::<f64>() * full.step);
            b = b.max(max_abs_diff(rf, rd));
        }
        t.row(&[delta, spec.sigma(), a, b])?;
        l1.push(a);
        linf.push(b);
    }
    t.finish()?;
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let ok = decreasing(&l1) && decreasing(&linf);
    let mut s = Summary::default();
    s.put("scenario", &r.name);
    s.put("ladder.delta[kappa]", r.deltas.iter().map(|&d| num(d)).collect::<Vec<_>>().join(" "));
    s.put("ladder.note", "widths are conventional choices, not measured values");
    s.put("ladder.l1_residual", l1.iter().map(|&d| num(d)).collect::<Vec<_>>().join(" "));
    s.put("ladder.max_residual[kappa]", linf.iter().map(|&d| num(d)).collect::<Vec<_>>().join(" "));
    s.put("monotone_decrease", if ok { "pass" } else { "fail" });
    s.write(&dir.join("summary.txt"))?;
    print!("{}", s.render());
    Ok(ok)
}

/// Tabulate the closed forms on the configured τ grid.
pub fn analytic(r: &Resolved, out: &Path) -> Result<(), CliError> {
    let spec = &r.runs[0].spec;
    let dir = out.join(&r.name);
    ensure_dir(&dir)?;
    let path = dir.join("analytic.csv");
    let mut t = Table::create(
        &path,
        &[
            "tau[reduced]",
            "x_d_published[1/kappa]",
            "x_d_exact[1/kappa]",
            "x_z_published[1/kappa]",
            "x_z_rederived[1/kappa]",
            "envelope_published[1/kappa]",
            "envelope_rederived[1/kappa]",
            "delta_n_narrow",
        ],
    )?;
    let analytic = precondition("analytic");
    let mut warning = None;
    for &tau in &r.tau {
        let d = drift(tau, &r.params, spec.delta).map_err(&analytic)?;
        let de = drift_rederived(tau, &r.params, spec.delta).map_err(&analytic)?;
        let z = zitter_term(tau, &r.params, spec.delta).map_err(&analytic)?;
        let ze = zitter_term_rederived(tau, &r.params, spec.delta).map_err(&analytic)?;
        if warning.is_none() {
            warning = d.warning;
        }
        t.row(&[
            tau,
            d.x_d,
            de.x_d,
            z.x_z,
            ze.x_z,
            z.envelope,
            ze.envelope,
            delta_limit_population(spec.k0, &r.params, tau),
        ])?;
    }
    t.finish()?;
    if let Some(w) = warning {
        eprintln!("warning: {w}");
    }
    if r.params.v_z.abs() / spec.delta < ZITTER_MIN_RATIO {
        eprintln!("warning: v_z/delta = {:.3} is below {ZITTER_MIN_RATIO}; oscillation forms are outside their range", r.params.v_z.abs() / spec.delta);
    }
    println!("{}", path.display());
    Ok(())
}

/// Laboratory-unit report for a scenario with a [physical] block.
pub fn scales(r: &Resolved, out: &Path) -> Result<(), CliError> {
    let p = r
        .physical
        .as_ref()
        .ok_or_else(|| CliError::Config("scales needs a [physical] section".into()))?;
    let spec = &r.runs[0].spec;
    let sigma = SQRT_2 / (spec.delta * p.kappa);
    let sc = physical_scales(p, sigma).map_err(precondition("analytic"))?;
    let mut s = Summary::default();
    s.put("scenario", &r.name);
    s.num("v_z[E_r]", sc.v_z);
    s.num("delta[kappa]", sc.delta);
    s.num("sigma[m]", sigma);
    s.num("recoil_energy[J]", p.recoil_energy());
    s.num("time_unit[s]", sc.time_unit);
    s.num("recoil_velocity[m/s]", sc.recoil_velocity);
    s.num("zb_angular_frequency[rad/s]", sc.zb_angular_frequency);
    s.num("zb_frequency[Hz]", sc.zb_frequency);
    s.num("damping_onset_published[s]", sc.damping_onset);
    s.num("damping_onset_rederived[s]", sc.damping_onset_rederived);
    let dir = out.join(&r.name);
    ensure_dir(&dir)?;
    s.write(&dir.join("scales.txt"))?;
    print!("{}", s.render());
    Ok(())
}
