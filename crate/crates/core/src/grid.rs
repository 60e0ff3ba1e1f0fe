//! Sampled functions on the uniform grid `e^{2πij/N}` and FFT helpers.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Complex samples of a function on the circle at `e^{2πij/N}`, `N` a power
/// of two, `N ≥ 16`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFunctionGrid {
    samples: Vec<Complex64>,
}

impl CircleFunctionGrid {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        let n = samples.len();
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "grid size {n} must be a power of two and at least 16"
            )));
        }
        Ok(Self { samples })
    }

    pub fn from_fn(n: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        Self::new(grid_points(n).into_iter().map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn points(&self) -> Vec<Complex64> {
        grid_points(self.len())
    }

    /// `‖g‖²_{L²(m)}` by the trapezoid rule.
    pub fn norm_sqr(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.len() as f64
    }

    /// Fourier coefficients `ĝ(k)`, index `k` stored at `k mod N`.
    pub fn coefficients(&self) -> Vec<Complex64> {
        fourier_coefficients(&self.samples)
    }

    /// Energy split `(Σ_{k<0} |ĝ(k)|², Σ_{k≥0} |ĝ(k)|²)`. The Nyquist
    /// coefficient is counted on both sides.
    pub fn frequency_energy(&self) -> (f64, f64) {
        frequency_energy(&self.coefficients())
    }

    /// Relative energy at negative frequencies (zero for analytic `g`).
    pub fn negative_content(&self) -> f64 {
        let (neg, pos) = self.frequency_energy();
        relative(neg, neg + pos)
    }

    /// Relative energy at non-negative frequencies (zero for `g ∈ H²₋`).
    pub fn nonnegative_content(&self) -> f64 {
        let (neg, pos) = self.frequency_energy();
        relative(pos, neg + pos)
    }
}

fn relative(part: f64, total: f64) -> f64 {
    if total == 0.0 {
        0.0
    } else {
        (part / total).sqrt()
    }
}

/// The points `e^{2πij/n}`, `j = 0..n`.
pub fn grid_points(n: usize) -> Vec<Complex64> {
    (0..n).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / n as f64)).collect()
}

/// `ĝ(k) = (1/N) Σ_j g_j e^{-2πijk/N}`, stored at index `k mod N`.
pub fn fourier_coefficients(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let s = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= s);
    buf
}

/// Inverse of [`fourier_coefficients`]: `g_j = Σ_k ĝ(k) e^{2πijk/N}`.
pub fn synthesize(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coeffs.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    buf
}

/// `(negative, non-negative)` energy of a coefficient array indexed mod N.
pub fn frequency_energy(coeffs: &[Complex64]) -> (f64, f64) {
    let n = coeffs.len();
    let mut neg = 0.0;
    let mut pos = 0.0;
    for (k, c) in coeffs.iter().enumerate() {
        let e = c.norm_sqr();
        if n % 2 == 0 && k == n / 2 {
            neg += e;
            pos += e;
        } else if k < n.div_ceil(2) {
            pos += e;
        } else {
            neg += e;
        }
    }
    (neg, pos)
}

/// Trigonometric interpolation of real or complex samples from one uniform
/// grid to another of size `m` (zero padding or truncation in frequency).
pub fn resample(samples: &[Complex64], m: usize) -> Vec<Complex64> {
    let n = samples.len();
    if n == m {
        return samples.to_vec();
    }
    let c = fourier_coefficients(samples);
    let mut out = vec![Complex64::new(0.0, 0.0); m];
    let half = n.min(m) / 2;
    for k in 0..half {
        out[k] += c[k];
        if k > 0 {
            out[m - k] += c[n - k];
        }
    }
    if n.min(m) % 2 == 0 {
        // split the shared Nyquist coefficient symmetrically
        let nyq = if n <= m { c[n / 2] } else { c[m / 2] + c[n - m / 2] };
        out[half] += nyq * 0.5;
        out[m - half] += nyq * 0.5;
    }
    synthesize(&out)
}
