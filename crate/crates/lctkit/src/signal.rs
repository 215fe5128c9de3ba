//! Uniformly sampled complex signals on 1D grids, the signal generators
//! used throughout the test corpus, inner products, Heisenberg-Weyl
//! translations, and rescaling.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fft;
use crate::tolerances::TOL_GRID;

#[derive(Debug, Error)]
pub enum SignalError {
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("invalid generator parameter: {0}")]
    BadParameter(String),
    #[error("signals live on different grids")]
    GridMismatch,
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("scale factor is singular")]
    SingularScale,
}

/// A uniform 1D grid x_j = x0 + j·dx for j = 0..n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1d {
    pub x0: f64,
    pub dx: f64,
    pub n: usize,
}

impl Grid1d {
    pub fn new(x0: f64, dx: f64, n: usize) -> Result<Self, SignalError> {
        if !(dx > 0.0) || !dx.is_finite() || !x0.is_finite() {
            return Err(SignalError::BadGrid(format!("x0 = {x0}, dx = {dx}")));
        }
        if n < 8 {
            return Err(SignalError::BadGrid(format!("n = {n} < 8")));
        }
        Ok(Self { x0, dx, n })
    }

    /// Symmetric grid covering [−half, half) with n samples.
    pub fn centered(half: f64, n: usize) -> Result<Self, SignalError> {
        Self::new(-half, 2.0 * half / n as f64, n)
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x0 + self.dx * j as f64
    }

    pub fn last(&self) -> f64 {
        self.x(self.n - 1)
    }

    /// Largest |x| over the grid.
    pub fn max_abs(&self) -> f64 {
        self.x0.abs().max(self.last().abs())
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.x(j))
    }

    pub fn same_as(&self, other: &Grid1d) -> bool {
        self.n == other.n
            && (self.x0 - other.x0).abs() <= TOL_GRID * (1.0 + self.x0.abs())
            && (self.dx - other.dx).abs() <= TOL_GRID * self.dx
    }
}

/// A sampled complex signal over a [`Grid1d`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub grid: Grid1d,
    pub values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(grid: Grid1d, values: Vec<Complex64>) -> Result<Self, SignalError> {
        if values.len() != grid.n {
            return Err(SignalError::BadGrid(format!(
                "{} values on a grid of {}",
                values.len(),
                grid.n
            )));
        }
        if let Some(j) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(SignalError::NonFinite(j));
        }
        Ok(Self { grid, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn zero_like(&self) -> Self {
        Self {
            grid: self.grid,
            values: vec![Complex64::new(0.0, 0.0); self.grid.n],
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Sample the signal at an arbitrary point by Catmull-Rom cubic
    /// interpolation, zero outside the grid. Used when two transforms
    /// must be compared on different grids.
    pub fn sample_at(&self, x: f64) -> Complex64 {
        let t = (x - self.grid.x0) / self.grid.dx;
        let n = self.grid.n as isize;
        let i = t.floor() as isize;
        if i < 0 || i >= n - 1 {
            return Complex64::new(0.0, 0.0);
        }
        let get = |k: isize| -> Complex64 {
            if k < 0 || k >= n {
                Complex64::new(0.0, 0.0)
            } else {
                self.values[k as usize]
            }
        };
        let u = t - i as f64;
        let (p0, p1, p2, p3) = (get(i - 1), get(i), get(i + 1), get(i + 2));
        0.5 * ((2.0 * p1)
            + (-p0 + p2) * u
            + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u * u
            + (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u * u * u)
    }

    /// Scale all samples by a complex constant.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Normalize to unit L2 norm (trapezoid). Returns the old norm.
    pub fn normalize(&mut self) -> f64 {
        let n = norm2(self);
        if n > 0.0 {
            let s = 1.0 / n;
            for v in self.values.iter_mut() {
                *v *= s;
            }
        }
        n
    }

    /// Crop to the smallest window (plus a sample margin) holding all
    /// samples above `rel_floor` of the peak. Keeps at least 8 samples.
    /// Useful before re-transforming an output grid whose tails are
    /// numerically zero.
    pub fn cropped(&self, rel_floor: f64, margin: usize) -> SampledSignal {
        let peak = self.max_abs();
        let floor = rel_floor * peak;
        let mut lo = None;
        let mut hi = None;
        for (j, v) in self.values.iter().enumerate() {
            if v.norm() > floor {
                if lo.is_none() {
                    lo = Some(j);
                }
                hi = Some(j);
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return self.clone();
        };
        let lo = lo.saturating_sub(margin);
        let hi = (hi + margin).min(self.len() - 1);
        if hi - lo + 1 < 8 {
            return self.clone();
        }
        SampledSignal {
            grid: Grid1d {
                x0: self.grid.x(lo),
                dx: self.grid.dx,
                n: hi - lo + 1,
            },
            values: self.values[lo..=hi].to_vec(),
        }
    }
}

/// Trapezoid-rule inner product ⟨f, g⟩ = ∫ f ḡ dx.
pub fn inner(f: &SampledSignal, g: &SampledSignal) -> Result<Complex64, SignalError> {
    if !f.grid.same_as(&g.grid) {
        return Err(SignalError::GridMismatch);
    }
    let n = f.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
        acc += w * f.values[j] * g.values[j].conj();
    }
    Ok(acc * f.grid.dx)
}

/// Trapezoid-rule L2 norm.
pub fn norm2(f: &SampledSignal) -> f64 {
    let n = f.len();
    let mut acc = 0.0;
    for j in 0..n {
        let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
        acc += w * f.values[j].norm_sqr();
    }
    (acc * f.grid.dx).sqrt()
}

/// A generalized Gaussian A·e^{2πi p·x}·e^{−(x−c)·(α + iπφ)(x−c)} in
/// one dimension (matrices degenerate to scalars).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    /// Decay coefficient α > 0 (units 1/x²).
    pub alpha: f64,
    /// Quadratic phase coefficient φ; the exponent carries −iπφx².
    pub phase: f64,
    pub center: f64,
    pub momentum: f64,
    pub amplitude: Complex64,
}

impl GaussianSpec {
    pub fn centered(alpha: f64) -> Self {
        Self {
            alpha,
            phase: 0.0,
            center: 0.0,
            momentum: 0.0,
            amplitude: Complex64::new(1.0, 0.0),
        }
    }

    pub fn with_phase(alpha: f64, phase: f64) -> Self {
        Self {
            phase,
            ..Self::centered(alpha)
        }
    }

    /// Amplitude that gives unit L2 norm: (2α/π)^{1/4}.
    pub fn unit_norm(alpha: f64) -> Self {
        Self {
            amplitude: Complex64::new((2.0 * alpha / std::f64::consts::PI).powf(0.25), 0.0),
            ..Self::centered(alpha)
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let u = x - self.center;
        let quad = Complex64::new(-self.alpha * u * u, -std::f64::consts::PI * self.phase * u * u);
        let lin = Complex64::new(0.0, 2.0 * std::f64::consts::PI * self.momentum * x);
        self.amplitude * (quad + lin).exp()
    }
}

/// Deterministic signal generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SignalKind {
    Gaussian(GaussianSpec),
    /// Characteristic function of [−r, r), half-open on the right so a
    /// grid spanning [−L, L) holds symmetric sample counts.
    Rectangle { r: f64 },
    /// Unimodular quadratic chirp e^{iπ·rate·x²}.
    Chirp { rate: f64 },
    /// Hermite function of order k (unit norm, Fourier eigenfunction).
    Hermite { k: usize },
    /// Reproducible random band-limited signal with a Gaussian envelope
    /// so it decays at the window edge. `cutoff` is the top frequency
    /// as a fraction of Nyquist.
    RandomBandlimited { seed: u64, cutoff: f64 },
}

/// Generate a signal on a grid.
pub fn make_signal(kind: &SignalKind, grid: Grid1d) -> Result<SampledSignal, SignalError> {
    let values: Vec<Complex64> = match kind {
        SignalKind::Gaussian(spec) => {
            if !(spec.alpha > 0.0) {
                return Err(SignalError::BadParameter(format!(
                    "gaussian alpha = {} must be positive",
                    spec.alpha
                )));
            }
            grid.points().map(|x| spec.eval(x)).collect()
        }
        SignalKind::Rectangle { r } => {
            if !(*r > 0.0) || *r >= grid.max_abs() {
                return Err(SignalError::BadParameter(format!(
                    "rectangle radius {r} does not fit inside the grid"
                )));
            }
            grid.points()
                .map(|x| {
                    if x >= -r && x < *r {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        }
        SignalKind::Chirp { rate } => grid
            .points()
            .map(|x| Complex64::new(0.0, std::f64::consts::PI * rate * x * x).exp())
            .collect(),
        SignalKind::Hermite { k } => return hermite_signal(*k, grid),
        SignalKind::RandomBandlimited { seed, cutoff } => {
            if !(*cutoff > 0.0 && *cutoff <= 1.0) {
                return Err(SignalError::BadParameter(format!(
                    "cutoff {cutoff} must lie in (0, 1]"
                )));
            }
            random_bandlimited(*seed, *cutoff, grid)
        }
    };
    SampledSignal::new(grid, values)
}

/// Hermite functions h_k with the convention that makes them unit-norm
/// eigenfunctions of the e^{−2πixξ} Fourier transform: h_0 = 2^{1/4}e^{−πx²},
/// recurrence h_{k+1} = √(2/(k+1))·√(2π)x·h_k − √(k/(k+1))·h_{k−1}.
fn hermite_signal(k: usize, grid: Grid1d) -> Result<SampledSignal, SignalError> {
    if k > 16 {
        return Err(SignalError::BadParameter(format!(
            "hermite order {k} > 16 is numerically fragile here"
        )));
    }
    let root_2pi = (2.0 * std::f64::consts::PI).sqrt();
    let values = grid
        .points()
        .map(|x| {
            let mut hm1 = 0.0f64;
            let mut h = 2.0f64.powf(0.25) * (-std::f64::consts::PI * x * x).exp();
            for m in 0..k {
                let next = (2.0 / (m as f64 + 1.0)).sqrt() * root_2pi * x * h
                    - (m as f64 / (m as f64 + 1.0)).sqrt() * hm1;
                hm1 = h;
                h = next;
            }
            Complex64::new(h, 0.0)
        })
        .collect();
    SampledSignal::new(grid, values)
}

fn random_bandlimited(seed: u64, cutoff: f64, grid: Grid1d) -> Vec<Complex64> {
    use rand::Rng;
    let n = grid.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kmax = ((n as f64 / 2.0) * cutoff).floor() as isize;
    let mut spec = vec![Complex64::new(0.0, 0.0); n];
    for k in -kmax..=kmax {
        let idx = ((k + n as isize) % n as isize) as usize;
        let re: f64 = rng.random_range(-1.0..1.0);
        let im: f64 = rng.random_range(-1.0..1.0);
        spec[idx] = Complex64::new(re, im);
    }
    let mut v = spec;
    fft::ifft_inplace(&mut v);
    // Gaussian envelope forcing decay at the window edge; width chosen
    // so the edge value is ~1e-9 of the peak.
    let half = grid.max_abs();
    let gamma = 20.7 / (half * half);
    let mut out: Vec<Complex64> = grid
        .points()
        .zip(v.iter())
        .map(|(x, &val)| val * (-gamma * x * x).exp())
        .collect();
    // normalize to unit trapezoid norm for corpus stability
    let sig = SampledSignal::new(grid, out.clone()).expect("finite");
    let nrm = norm2(&sig);
    if nrm > 0.0 {
        for v in out.iter_mut() {
            *v /= nrm;
        }
    }
    out
}

/// Result of a Heisenberg-Weyl translation; `grid_aligned` is false
/// when the x-shift was not an integer number of samples and a
/// band-limited (circular) resampling was applied instead.
#[derive(Debug, Clone)]
pub struct Translated {
    pub signal: SampledSignal,
    pub grid_aligned: bool,
}

/// Heisenberg-Weyl translation
/// (T(z0) f)(x) = e^{2πi ξ0 (x − x0/2)} f(x − x0) for z0 = (x0, ξ0).
pub fn hw_translate(f: &SampledSignal, z0: (f64, f64)) -> Translated {
    let (x0, xi0) = z0;
    let dx = f.grid.dx;
    let shift = x0 / dx;
    let k = shift.round() as isize;
    let aligned = (shift - k as f64).abs() <= 1e-9 * (1.0 + shift.abs());
    let n = f.len() as isize;
    let shifted: Vec<Complex64> = if aligned {
        (0..n)
            .map(|j| {
                let src = j - k;
                if src >= 0 && src < n {
                    f.values[src as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect()
    } else {
        // fractional delay through the spectrum; circular, adequate for
        // signals that decay inside the window
        let mut spec = f.values.clone();
        fft::fft_inplace(&mut spec);
        let m = f.len();
        for (q, v) in spec.iter_mut().enumerate() {
            let kq = if q <= m / 2 { q as f64 } else { q as f64 - m as f64 };
            let nu = kq / (m as f64 * dx);
            *v *= Complex64::new(0.0, -2.0 * std::f64::consts::PI * nu * x0).exp();
        }
        fft::ifft_inplace(&mut spec);
        spec
    };
    let values = f
        .grid
        .points()
        .zip(shifted)
        .map(|(x, v)| {
            v * Complex64::new(0.0, 2.0 * std::f64::consts::PI * xi0 * (x - 0.5 * x0)).exp()
        })
        .collect();
    Translated {
        signal: SampledSignal {
            grid: f.grid,
            values,
        },
        grid_aligned: aligned,
    }
}

/// Rescale f_L(x) = f(Lx). The grid is rescaled in place (values are
/// reused exactly); a negative L reverses the sample order.
pub fn scale_signal(f: &SampledSignal, l: f64) -> Result<SampledSignal, SignalError> {
    if l == 0.0 || !l.is_finite() {
        return Err(SignalError::SingularScale);
    }
    if l > 0.0 {
        let grid = Grid1d {
            x0: f.grid.x0 / l,
            dx: f.grid.dx / l,
            n: f.grid.n,
        };
        SampledSignal::new(grid, f.values.clone())
    } else {
        let grid = Grid1d {
            x0: f.grid.last() / l,
            dx: f.grid.dx / -l,
            n: f.grid.n,
        };
        SampledSignal::new(grid, f.values.iter().rev().cloned().collect())
    }
}
