//! Small time-series utilities for extracting frequencies and envelopes from
//! sampled observables.

use crate::error::{invalid, Result};

/// Least-squares line y = intercept + slope·x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() {
        return Err(invalid("y", format!("length {} differs from x length {}", y.len(), x.len())));
    }
    if x.len() < 2 {
        return Err(invalid("x", "need at least two samples"));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
    }
    if sxx == 0.0 {
        return Err(invalid("x", "all abscissae coincide"));
    }
    let slope = sxy / sxx;
    Ok(LineFit {
        slope,
        intercept: my - slope * mx,
    })
}

/// Sign changes of `y`, located by linear interpolation.
pub fn zero_crossings(t: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 1..t.len().min(y.len()) {
        let (a, b) = (y[i - 1], y[i]);
        if a == 0.0 {
            if i == 1 || y[i - 2] * b < 0.0 {
                out.push(t[i - 1]);
            }
            continue;
        }
        if a * b < 0.0 {
            out.push(t[i - 1] + (t[i] - t[i - 1]) * a / (a - b));
        }
    }
    out
}

/// Angular frequency of an oscillation from its zero crossings.
///
/// Crossings are half a period apart, so a fit of crossing time against
/// index has slope π/ω. Requires at least three crossings.
pub fn crossing_frequency(t: &[f64], y: &[f64]) -> Result<f64> {
    let z = zero_crossings(t, y);
    if z.len() < 3 {
        return Err(invalid("signal", format!("found {} zero crossings, need at least 3", z.len())));
    }
    let idx: Vec<f64> = (0..z.len()).map(|i| i as f64).collect();
    let fit = linear_fit(&idx, &z)?;
    Ok(std::f64::consts::PI / fit.slope)
}

/// A local extremum refined by a parabola through three samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub t: f64,
    pub value: f64,
    pub is_max: bool,
}

/// Interior local extrema of a uniformly sampled signal.
pub fn extrema(t: &[f64], y: &[f64]) -> Vec<Extremum> {
    let n = t.len().min(y.len());
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let (a, b, c) = (y[i - 1], y[i], y[i + 1]);
        let is_max = b > a && b >= c;
        let is_min = b < a && b <= c;
        if !(is_max || is_min) {
            continue;
        }
        let denom = a - 2.0 * b + c;
        let (shift, value) = if denom != 0.0 {
            let s = 0.5 * (a - c) / denom;
            (s, b - 0.25 * (a - c) * s)
        } else {
            (0.0, b)
        };
        let h = 0.5 * (t[i + 1] - t[i - 1]);
        out.push(Extremum {
            t: t[i] + shift * h,
            value,
            is_max,
        });
    }
    out
}

/// First time at which the extremum magnitude falls below half that of the
/// first extremum.
pub fn breakdown_time(t: &[f64], y: &[f64]) -> Option<f64> {
    let ex = extrema(t, y);
    let first = ex.first()?.value.abs();
    ex.iter().skip(1).find(|e| e.value.abs() < 0.5 * first).map(|e| e.t)
}
