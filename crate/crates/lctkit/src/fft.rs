//! Thin FFT helpers on top of `rustfft`: unnormalized transforms,
//! band-limited upsampling, and centered-frequency bookkeeping.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// In-place forward DFT, unnormalized: X_m = Σ_j x_j e^{-2πi jm/N}.
pub fn fft_inplace(buf: &mut [Complex64]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(buf.len()).process(buf);
}

/// In-place inverse DFT scaled by 1/N, so `ifft(fft(x)) == x`.
pub fn ifft_inplace(buf: &mut [Complex64]) {
    let n = buf.len();
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(n).process(buf);
    let s = 1.0 / n as f64;
    for v in buf.iter_mut() {
        *v *= s;
    }
}

/// Band-limited upsampling by an integer factor: returns `factor * n`
/// samples over the same span, spacing `dx / factor`. Original samples
/// are reproduced exactly; the Nyquist bin is split symmetrically.
pub fn upsample(values: &[Complex64], factor: usize) -> Vec<Complex64> {
    assert!(factor >= 1);
    if factor == 1 {
        return values.to_vec();
    }
    let n = values.len();
    let m = n * factor;
    let mut spec = values.to_vec();
    fft_inplace(&mut spec);
    let mut out = vec![Complex64::new(0.0, 0.0); m];
    let h = n / 2;
    out[..h].copy_from_slice(&spec[..h]);
    // negative frequencies
    for k in 1..(n - h) {
        out[m - k] = spec[n - k];
    }
    if n % 2 == 0 {
        out[h] = 0.5 * spec[h];
        out[m - h] = 0.5 * spec[h];
    }
    ifft_inplace(&mut out);
    let s = factor as f64;
    for v in out.iter_mut() {
        *v *= s;
    }
    out
}

/// Batched band-limited upsampler; plans its FFTs once.
pub struct Upsampler {
    n: usize,
    factor: usize,
    fwd: std::sync::Arc<dyn rustfft::Fft<f64>>,
    inv: std::sync::Arc<dyn rustfft::Fft<f64>>,
}

impl Upsampler {
    pub fn new(n: usize, factor: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            factor,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n * factor),
        }
    }

    pub fn run(&self, values: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(values.len(), self.n);
        if self.factor == 1 {
            return values.to_vec();
        }
        let n = self.n;
        let m = n * self.factor;
        let mut spec = values.to_vec();
        self.fwd.process(&mut spec);
        let mut out = vec![Complex64::new(0.0, 0.0); m];
        let h = n / 2;
        out[..h].copy_from_slice(&spec[..h]);
        for k in 1..(n - h) {
            out[m - k] = spec[n - k];
        }
        if n % 2 == 0 {
            out[h] = 0.5 * spec[h];
            out[m - h] = 0.5 * spec[h];
        }
        self.inv.process(&mut out);
        let s = 1.0 / n as f64;
        for v in out.iter_mut() {
            *v *= s;
        }
        out
    }
}

/// 2D band-limited upsampling of a real field stored row-major as
/// `nx × ny`. Returns `(nx*fx) × (ny*fy)` values.
pub fn upsample2d_real(values: &[f64], nx: usize, ny: usize, fx: usize, fy: usize) -> Vec<f64> {
    assert_eq!(values.len(), nx * ny);
    if fx == 1 && fy == 1 {
        return values.to_vec();
    }
    let row_up = Upsampler::new(ny, fy);
    let my = ny * fy;
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(nx);
    let mut row = vec![Complex64::new(0.0, 0.0); ny];
    for i in 0..nx {
        for (j, v) in values[i * ny..(i + 1) * ny].iter().enumerate() {
            row[j] = Complex64::new(*v, 0.0);
        }
        rows.push(row_up.run(&row));
    }
    let col_up = Upsampler::new(nx, fx);
    let mx = nx * fx;
    let mut out = vec![0.0; mx * my];
    let mut col = vec![Complex64::new(0.0, 0.0); nx];
    for j in 0..my {
        for (i, r) in rows.iter().enumerate() {
            col[i] = r[j];
        }
        let fine = col_up.run(&col);
        for (i, v) in fine.iter().enumerate() {
            out[i * my + j] = v.re;
        }
    }
    out
}
