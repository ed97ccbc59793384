use num_complex::Complex64;
use std::f64::consts::PI;

use zitter::evolve::{propagate, Limit};
use zitter::grid::KGrid;
use zitter::params::DimensionlessParams;
use zitter::signal::crossing_frequency;
use zitter::spinor::{sample_gaussian, to_position, GaussianSpec};
use zitter::twolevel::{coupling_overlap, evolve_populations, factorize, rabi_frequency, TwoLevelParams};

fn envelope(xs: &[f64], sigma: f64, k0: f64, odd: bool) -> Vec<Complex64> {
    let a = 2.0 / (sigma * sigma);
    let n = if odd {
        (2.0 * a * (a / PI).sqrt()).sqrt()
    } else {
        (a / PI).sqrt().sqrt()
    };
    xs.iter()
        .map(|&x| {
            let base = n * (-x * x / (sigma * sigma)).exp();
            let base = if odd { base * x } else { base };
            Complex64::from_polar(base, k0 * x)
        })
        .collect()
}

#[test]
fn real_even_envelopes_do_not_couple() {
    let g = KGrid::standard().conjugate();
    let xs = g.nodes();
    let phi = envelope(&xs, 10.0, 0.0, false);
    let o = coupling_overlap(&phi, &phi, &g, &DimensionlessParams::with_gap(1.0)).unwrap();
    assert!(o.norm() < 1e-13);
}

#[test]
fn boosted_envelopes_couple_in_proportion_to_momentum() {
    let g = KGrid::standard().conjugate();
    let xs = g.nodes();
    for &(k0, c) in &[(0.3, 1.0), (1.0, 1.0), (0.5, 0.6)] {
        let phi = envelope(&xs, 10.0, k0, false);
        let o = coupling_overlap(&phi, &phi, &g, &DimensionlessParams::new(1.0, c).unwrap()).unwrap();
        assert!((o - Complex64::new(2.0 * c * k0, 0.0)).norm() < 1e-12, "{o}");
    }
}

#[test]
fn even_odd_pair_couples_imaginarily() {
    let g = KGrid::standard().conjugate();
    let xs = g.nodes();
    let sigma = 8.0;
    let even = envelope(&xs, sigma, 0.0, false);
    let odd = envelope(&xs, sigma, 0.0, true);
    let o = coupling_overlap(&even, &odd, &g, &DimensionlessParams::with_gap(1.0)).unwrap();
    // 2⟨odd|k̂|even⟩ = 2i/σ for these Gaussians
    assert!(o.re.abs() < 1e-13);
    assert!((o.im - 2.0 / sigma).abs() < 1e-12, "{o}");
}

#[test]
fn unnormalized_envelope_rejected() {
    let g = KGrid::standard().conjugate();
    let phi: Vec<Complex64> = envelope(&g.nodes(), 10.0, 0.0, false).iter().map(|z| z * 1.01).collect();
    assert!(coupling_overlap(&phi, &phi, &g, &DimensionlessParams::with_gap(1.0)).is_err());
}

#[test]
fn factorized_state_recovers_momentum_coupling() {
    let spec = GaussianSpec::equal_superposition(1.0, 0.02).unwrap();
    let sx = to_position(&sample_gaussian(&spec, &KGrid::standard()).unwrap());
    let f = factorize(&sx).unwrap();
    assert!((f.c1 * f.c1 - 0.5).abs() < 1e-12 && (f.c2 * f.c2 - 0.5).abs() < 1e-12);
    let p = DimensionlessParams::with_gap(1.0);
    let tl = TwoLevelParams::from_envelopes(&f.phi1, &f.phi2, &sx.grid, &p).unwrap();
    assert!((tl.omega_tilde - Complex64::new(2.0, 0.0)).norm() < 1e-10);
    assert!((rabi_frequency(&tl) - 5f64.sqrt()).abs() < 1e-10);
}

#[test]
fn population_period_matches_rabi_frequency() {
    let p = TwoLevelParams::new(Complex64::new(0.7, -0.4), 0.9, -0.3).unwrap();
    let w = rabi_frequency(&p);
    let taus: Vec<f64> = (0..4001).map(|i| 40.0 * i as f64 / 4000.0).collect();
    let s = evolve_populations((Complex64::new(1.0, 0.0), 0.0.into()), &p, &taus).unwrap();
    let mean = s.p1.iter().sum::<f64>() / s.p1.len() as f64;
    let centred: Vec<f64> = s.p1.iter().map(|x| x - mean).collect();
    let measured = crossing_frequency(&taus, &centred).unwrap();
    assert!((measured / (2.0 * w) - 1.0).abs() < 1e-3);
    for (a, b) in s.p1.iter().zip(&s.p2) {
        assert!((a + b - 1.0).abs() < 1e-12);
    }
}

#[test]
fn reduction_reproduces_full_population_frequency() {
    let spec = GaussianSpec::equal_superposition(1.0, 0.02).unwrap();
    let s = sample_gaussian(&spec, &KGrid::standard()).unwrap();
    let p = DimensionlessParams::with_gap(1.0);
    let taus: Vec<f64> = (0..801).map(|i| 8.0 * i as f64 / 800.0).collect();
    let dn: Vec<f64> = taus
        .iter()
        .map(|&t| {
            let out = propagate(&s, t, &p, Limit::Full).unwrap();
            let (n1, n2) = zitter::observables::populations(&out);
            n1 - n2
        })
        .collect();
    let mean = dn.iter().sum::<f64>() / dn.len() as f64;
    let centred: Vec<f64> = dn.iter().map(|x| x - mean).collect();
    let measured = crossing_frequency(&taus, &centred).unwrap();
    let w = rabi_frequency(&TwoLevelParams::new(Complex64::new(2.0, 0.0), 1.0, -1.0).unwrap());
    assert!((measured / (2.0 * w) - 1.0).abs() < 0.02, "{measured} vs {}", 2.0 * w);
}
