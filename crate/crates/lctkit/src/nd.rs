//! Minimal two-dimensional signal support for the separable transform
//! path and the n = 2 uncertainty checks.

use num_complex::Complex64;

use crate::signal::{Grid1d, SignalError};

/// A sampled signal on a product grid, stored row-major: index
/// `i0 * grid1.n + i1` holds f(x0_{i0}, x1_{i1}).
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled2d {
    pub grid0: Grid1d,
    pub grid1: Grid1d,
    pub values: Vec<Complex64>,
}

impl Sampled2d {
    pub fn new(grid0: Grid1d, grid1: Grid1d, values: Vec<Complex64>) -> Result<Self, SignalError> {
        if values.len() != grid0.n * grid1.n {
            return Err(SignalError::BadGrid(format!(
                "{} values on a {}x{} grid",
                values.len(),
                grid0.n,
                grid1.n
            )));
        }
        Ok(Self { grid0, grid1, values })
    }

    /// Tensor product of two 1D signals.
    pub fn product(
        f0: &crate::signal::SampledSignal,
        f1: &crate::signal::SampledSignal,
    ) -> Self {
        let mut values = Vec::with_capacity(f0.len() * f1.len());
        for a in &f0.values {
            for b in &f1.values {
                values.push(a * b);
            }
        }
        Self {
            grid0: f0.grid,
            grid1: f1.grid,
            values,
        }
    }

    pub fn row(&self, i0: usize) -> &[Complex64] {
        let n1 = self.grid1.n;
        &self.values[i0 * n1..(i0 + 1) * n1]
    }

    /// Trapezoid L2 norm over the product grid.
    pub fn norm2(&self) -> f64 {
        let (n0, n1) = (self.grid0.n, self.grid1.n);
        let mut acc = 0.0;
        for i0 in 0..n0 {
            let w0 = if i0 == 0 || i0 == n0 - 1 { 0.5 } else { 1.0 };
            for i1 in 0..n1 {
                let w1 = if i1 == 0 || i1 == n1 - 1 { 0.5 } else { 1.0 };
                acc += w0 * w1 * self.values[i0 * n1 + i1].norm_sqr();
            }
        }
        (acc * self.grid0.dx * self.grid1.dx).sqrt()
    }

    /// Mean and spread of |f|² along both axes:
    /// returns (means, Δ² summed over axes, ‖f‖²).
    pub fn spread(&self) -> ([f64; 2], f64, f64) {
        let (n0, n1) = (self.grid0.n, self.grid1.n);
        let mut mass = 0.0;
        let mut m = [0.0f64; 2];
        for i0 in 0..n0 {
            let w0 = if i0 == 0 || i0 == n0 - 1 { 0.5 } else { 1.0 };
            let x0 = self.grid0.x(i0);
            for i1 in 0..n1 {
                let w1 = if i1 == 0 || i1 == n1 - 1 { 0.5 } else { 1.0 };
                let x1 = self.grid1.x(i1);
                let p = w0 * w1 * self.values[i0 * n1 + i1].norm_sqr();
                mass += p;
                m[0] += p * x0;
                m[1] += p * x1;
            }
        }
        let da = self.grid0.dx * self.grid1.dx;
        let norm_sq = mass * da;
        let mean = [m[0] / mass, m[1] / mass];
        let mut spread = 0.0;
        for i0 in 0..n0 {
            let w0 = if i0 == 0 || i0 == n0 - 1 { 0.5 } else { 1.0 };
            let x0 = self.grid0.x(i0) - mean[0];
            for i1 in 0..n1 {
                let w1 = if i1 == 0 || i1 == n1 - 1 { 0.5 } else { 1.0 };
                let x1 = self.grid1.x(i1) - mean[1];
                spread += w0 * w1 * self.values[i0 * n1 + i1].norm_sqr() * (x0 * x0 + x1 * x1);
            }
        }
        (mean, spread * da, norm_sq)
    }
}
