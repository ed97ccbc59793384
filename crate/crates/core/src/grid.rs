//! Uniform momentum grids and their conjugate position grids.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform momentum grid, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGrid {
    k_min: f64,
    k_max: f64,
    n: usize,
}

/// Build the uniform grid with `n` nodes on `[k_min, k_max]`.
pub fn make_k_grid(k_min: f64, k_max: f64, n: usize) -> Result<KGrid> {
    if n < 2 || !(k_max > k_min) || !k_min.is_finite() || !k_max.is_finite() {
        return Err(Error::InvalidBounds { k_min, k_max, n });
    }
    Ok(KGrid { k_min, k_max, n })
}

impl KGrid {
    /// k ∈ [−8, 8] with 4096 nodes.
    pub fn standard() -> Self {
        Self {
            k_min: -8.0,
            k_max: 8.0,
            n: 4096,
        }
    }

    /// Symmetric grid `[-k_max, k_max]`.
    pub fn symmetric(k_max: f64, n: usize) -> Result<Self> {
        make_k_grid(-k_max, k_max, n)
    }

    pub fn k_min(&self) -> f64 {
        self.k_min
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dk(&self) -> f64 {
        (self.k_max - self.k_min) / (self.n - 1) as f64
    }

    /// Node `i`, computed so that symmetric grids are exactly symmetric.
    pub fn node(&self, i: usize) -> f64 {
        let span = (self.n - 1) as f64;
        if self.k_min == -self.k_max {
            let num = 2 * i as i64 - (self.n as i64 - 1);
            self.k_max * (num as f64 / span)
        } else {
            self.k_min + (self.k_max - self.k_min) * (i as f64 / span)
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// The position grid conjugate to this one under the discrete transform.
    pub fn conjugate(&self) -> XGrid {
        let dx = 2.0 * PI / (self.n as f64 * self.dk());
        XGrid {
            x0: -((self.n / 2) as f64) * dx,
            dx,
            n: self.n,
        }
    }
}

/// Uniform periodic position grid, `x_j = x0 + j·dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XGrid {
    x0: f64,
    dx: f64,
    n: usize,
}

impl XGrid {
    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Length of the periodic box.
    pub fn period(&self) -> f64 {
        self.dx * self.n as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }
}

/// Trapezoidal rule on uniformly spaced samples.
pub fn trapezoid(values: impl IntoIterator<Item = f64>, step: f64) -> f64 {
    let mut it = values.into_iter();
    let Some(first) = it.next() else {
        return 0.0;
    };
    let mut sum = 0.5 * first;
    let mut last = first;
    let mut count = 1usize;
    for v in it {
        sum += v;
        last = v;
        count += 1;
    }
    if count == 1 {
        return 0.0;
    }
    (sum - 0.5 * last) * step
}
