//! Cauchy transforms `R`, `R₁`, `R₂` of (weighted) measures, their radial
//! boundary values `T_±`, and Nyström matrices of the kernels
//! `K_r(z, ξ) = 1/(1 − r ξ̄ z)`.
//!
//! The density part is evaluated spectrally: the Fourier coefficients of
//! `f·w` are computed once by FFT and the transform is summed as a power
//! series in `λ` (inside) or `1/λ` (outside). Unlike the plain trapezoid
//! sum this stays accurate arbitrarily close to the circle.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{fourier_coefficients, synthesize};
use crate::linalg::OperatorMatrix;
use crate::measure::{grid_angle, CircleMeasure, MeasureFunction};

/// Width of the excluded band `1 − δ ≤ |λ| ≤ 1 + δ` for direct evaluation.
pub const GUARD_BAND: f64 = 1e-8;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Which side of the circle a boundary value is approached from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inner,
    Outer,
}

/// The Cauchy transform `λ ↦ ∫ f dμ / (1 − ξ̄λ)` of a fixed weighted measure.
#[derive(Debug, Clone)]
pub struct CauchyTransform {
    points: Vec<Complex64>,
    weights: Vec<Complex64>,
    /// `ν̂(k)` for `k = 0..=N/2` (Nyquist halved), `ν = f w dm`.
    pos: Vec<Complex64>,
    /// `ν̂(−k)` for `k = 1..=N/2` (Nyquist halved).
    neg: Vec<Complex64>,
    mass: Complex64,
}

impl CauchyTransform {
    /// Transform of `μ` itself (`f ≡ 1`).
    pub fn new(mu: &CircleMeasure) -> Self {
        Self::weighted(mu, None)
    }

    /// Transform of `f·μ`.
    pub fn weighted(mu: &CircleMeasure, f: Option<&MeasureFunction>) -> Self {
        let points = mu.points();
        let weights: Vec<Complex64> = mu
            .atoms()
            .iter()
            .enumerate()
            .map(|(k, a)| a.mass * f.map_or(Complex64::new(1.0, 0.0), |f| f.at_atoms[k]))
            .collect();
        let (pos, neg) = match mu.density() {
            Some(w) => {
                let fw: Vec<Complex64> = w
                    .iter()
                    .enumerate()
                    .map(|(j, &wj)| wj * f.map_or(Complex64::new(1.0, 0.0), |f| f.on_grid[j]))
                    .collect();
                split_coefficients(&fourier_coefficients(&fw))
            }
            None => (Vec::new(), Vec::new()),
        };
        let mass = weights.iter().sum::<Complex64>() + pos.first().copied().unwrap_or(ZERO);
        Self { points, weights, pos, neg, mass }
    }

    /// `τ(𝕋) = ∫ f dμ`.
    pub fn mass(&self) -> Complex64 {
        self.mass
    }

    /// `Rτ(λ)`, rejecting points in the guard band around the circle.
    pub fn eval(&self, lambda: Complex64) -> Result<Complex64> {
        let r = lambda.norm();
        if (r - 1.0).abs() <= GUARD_BAND {
            return Err(Error::BoundaryGuard(r));
        }
        Ok(self.eval_unguarded(lambda))
    }

    /// `Rτ(λ)` without the guard check (atoms summed exactly, density part
    /// from its analytic or anti-analytic spectral series).
    pub fn eval_unguarded(&self, lambda: Complex64) -> Complex64 {
        self.atomic_part(lambda) + self.density_part(lambda)
    }

    pub fn atomic_part(&self, lambda: Complex64) -> Complex64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(xi, m)| m / (1.0 - xi.conj() * lambda))
            .sum()
    }

    pub fn density_part(&self, lambda: Complex64) -> Complex64 {
        if self.pos.is_empty() {
            return ZERO;
        }
        if lambda.norm() < 1.0 {
            horner(&self.pos, lambda)
        } else {
            let u = 1.0 / lambda;
            -horner(&self.neg, u) * u
        }
    }

    pub fn r1(&self, lambda: Complex64) -> Result<Complex64> {
        Ok(self.eval(lambda)? - self.mass)
    }

    pub fn r2(&self, lambda: Complex64) -> Result<Complex64> {
        Ok(2.0 * self.eval(lambda)? - self.mass)
    }

    /// Density part of the transform at `ρ e^{2πij/M}` for all `j`, for
    /// `ρ < 1` (inner series) or `ρ > 1` (outer series).
    pub fn density_on_circle(&self, rho: f64, m: usize) -> Vec<Complex64> {
        let side = if rho < 1.0 { Side::Inner } else { Side::Outer };
        self.density_series(side, rho, m)
    }

    fn density_series(&self, side: Side, rho: f64, m: usize) -> Vec<Complex64> {
        let mut a = vec![ZERO; m];
        if self.pos.is_empty() {
            return a;
        }
        let kmax = (m / 2).min(self.pos.len() - 1);
        if side == Side::Inner {
            let mut p = 1.0;
            for k in 0..=kmax {
                a[k] += self.pos[k] * p;
                p *= rho;
            }
        } else {
            let u = 1.0 / rho;
            let mut p = u;
            for k in 1..=kmax.min(self.neg.len()) {
                a[(m - k) % m] -= self.neg[k - 1] * p;
                p *= u;
            }
        }
        synthesize(&a)
    }

    /// Atomic part at `ρ e^{2πij/M}` for all `j`.
    pub fn atoms_on_circle(&self, rho: f64, m: usize) -> Vec<Complex64> {
        (0..m)
            .map(|j| self.atomic_part(Complex64::from_polar(rho, grid_angle(j, m))))
            .collect()
    }

    /// Exact boundary values of the density part at grid resolution: the
    /// analytic projection `P₊(fw)` from inside, `−P₋(fw)` from outside.
    pub fn density_boundary_projection(&self, side: Side, m: usize) -> Vec<Complex64> {
        self.density_series(side, 1.0, m)
    }
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(ZERO, |acc, ck| acc * z + ck)
}

/// Split coefficients indexed mod N into `(k = 0..=N/2, k = 1..=N/2 for −k)`,
/// halving the Nyquist term on both sides.
fn split_coefficients(c: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = c.len();
    let half = n / 2;
    let mut pos: Vec<Complex64> = c[..=half.min(n - 1)].to_vec();
    let mut neg: Vec<Complex64> = (1..=half).map(|k| c[(n - k) % n]).collect();
    if n % 2 == 0 && n >= 2 {
        pos[half] *= 0.5;
        neg[half - 1] = c[half] * 0.5;
    }
    (pos, neg)
}

/// `Rμ(λ)` (optionally of `f·μ`).
pub fn cauchy_r(mu: &CircleMeasure, f: Option<&MeasureFunction>, lambda: Complex64) -> Result<Complex64> {
    CauchyTransform::weighted(mu, f).eval(lambda)
}

/// `R₁τ = Rτ − τ(𝕋)`.
pub fn cauchy_r1(mu: &CircleMeasure, f: Option<&MeasureFunction>, lambda: Complex64) -> Result<Complex64> {
    CauchyTransform::weighted(mu, f).r1(lambda)
}

/// `R₂τ = 2Rτ − τ(𝕋)`.
pub fn cauchy_r2(mu: &CircleMeasure, f: Option<&MeasureFunction>, lambda: Complex64) -> Result<Complex64> {
    CauchyTransform::weighted(mu, f).r2(lambda)
}

/// Poisson extension `Re R₂μ(z)` for `|z| < 1`.
pub fn poisson_extension(mu: &CircleMeasure, z: Complex64) -> Result<f64> {
    if z.norm() >= 1.0 - GUARD_BAND {
        return Err(Error::BoundaryGuard(z.norm()));
    }
    Ok(cauchy_r2(mu, None, z)?.re)
}

/// Radii `ε` and extrapolation order for radial limits.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialLimitConfig {
    pub radii: Vec<f64>,
    pub extrapolation_order: usize,
}

impl Default for RadialLimitConfig {
    fn default() -> Self {
        Self {
            radii: (4..=14).map(|p| 2f64.powi(-p)).collect(),
            extrapolation_order: 6,
        }
    }
}

impl RadialLimitConfig {
    pub fn new(radii: Vec<f64>, extrapolation_order: usize) -> Result<Self> {
        let cfg = Self { radii, extrapolation_order };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() || self.radii.iter().any(|&e| !(e > 0.0 && e < 0.5)) {
            return Err(Error::InvalidParameter("radii must lie in (0, 1/2)".into()));
        }
        if self.radii.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidParameter("radii must be strictly decreasing".into()));
        }
        if self.extrapolation_order < 1 || self.extrapolation_order > self.radii.len() {
            return Err(Error::InvalidParameter("extrapolation order out of range".into()));
        }
        Ok(())
    }

    fn scale(&self, side: Side, eps: f64) -> f64 {
        match side {
            Side::Inner => 1.0 - eps,
            Side::Outer => 1.0 + eps,
        }
    }
}

/// A radially extrapolated boundary value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialLimit {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Polynomial extrapolation to `ε = 0` through the last `order + 1` samples
/// (Neville's scheme), with the difference to the extrapolant using the
/// preceding window as error estimate.
fn extrapolate(eps: &[f64], vals: &[Complex64], order: usize) -> RadialLimit {
    let n = eps.len();
    let k = order.min(n - 1);
    let at = |end: usize| -> Complex64 {
        let start = end + 1 - (k + 1);
        let xs = &eps[start..=end];
        let mut p: Vec<Complex64> = vals[start..=end].to_vec();
        for lvl in 1..=k {
            for i in 0..=(k - lvl) {
                let (xi, xj) = (xs[i], xs[i + lvl]);
                p[i] = (p[i] * (-xj) - p[i + 1] * (-xi)) / (xi - xj);
            }
        }
        p[0]
    };
    let value = at(n - 1);
    let error_estimate = if n > k + 1 { (value - at(n - 2)).norm() } else { 0.0 };
    RadialLimit { value, error_estimate }
}

fn diverges(vals: &[Complex64]) -> bool {
    let mags: Vec<f64> = vals.iter().map(|v| v.norm()).collect();
    let monotone = mags.windows(2).all(|w| w[1] > w[0]);
    monotone && mags[0] > 0.0 && mags[mags.len() - 1] > 10.0 * mags[0] || mags.iter().any(|m| !m.is_finite())
}

/// Radial limit of `F` at `z ∈ 𝕋`, evaluating `F((1 ∓ ε)z)` on the
/// configured radii.
pub fn radial_limit(
    f: impl Fn(Complex64) -> Complex64,
    z: Complex64,
    side: Side,
    cfg: &RadialLimitConfig,
) -> Result<RadialLimit> {
    cfg.validate()?;
    let vals: Vec<Complex64> = cfg.radii.iter().map(|&e| f(z * cfg.scale(side, e))).collect();
    if diverges(&vals) {
        return Err(Error::RadialDivergence(z.arg()));
    }
    Ok(extrapolate(&cfg.radii, &vals, cfg.extrapolation_order))
}

/// Radial limits of a family of grid functions: `f(ρ)` returns samples of
/// the function on the circle of radius `ρ`. Returns per-point limits and
/// a flag for points where the sequence diverges.
pub fn radial_limit_grid(
    f: impl Fn(f64) -> Vec<Complex64>,
    side: Side,
    cfg: &RadialLimitConfig,
) -> Result<(Vec<RadialLimit>, Vec<bool>)> {
    cfg.validate()?;
    let rows: Vec<Vec<Complex64>> = cfg.radii.iter().map(|&e| f(cfg.scale(side, e))).collect();
    let m = rows[0].len();
    let mut out = Vec::with_capacity(m);
    let mut div = Vec::with_capacity(m);
    for j in 0..m {
        let vals: Vec<Complex64> = rows.iter().map(|r| r[j]).collect();
        div.push(diverges(&vals));
        out.push(extrapolate(&cfg.radii, &vals, cfg.extrapolation_order));
    }
    Ok((out, div))
}

/// `T_± f(z)` at a single point: radial limit of `R(fμ)` from inside (`+`)
/// or outside (`−`).
pub fn boundary_value(
    mu: &CircleMeasure,
    f: Option<&MeasureFunction>,
    z: Complex64,
    side: Side,
    cfg: &RadialLimitConfig,
) -> Result<RadialLimit> {
    let t = CauchyTransform::weighted(mu, f);
    radial_limit(|l| t.eval_unguarded(l), z, side, cfg)
}

/// A measure collapsed to point masses: atoms, plus density grid points
/// carrying mass `w_j/N`. Zero-mass grid points are dropped.
pub fn quadrature_nodes(mu: &CircleMeasure) -> (Vec<f64>, Vec<f64>) {
    let mut angles = mu.angles();
    let mut masses = mu.masses();
    if let Some(w) = mu.density() {
        let n = w.len();
        for (j, &wj) in w.iter().enumerate() {
            if wj > 0.0 {
                angles.push(grid_angle(j, n));
                masses.push(wj / n as f64);
            }
        }
    }
    (angles, masses)
}

/// Nyström matrix of `T_r : L²(source) → L²(target)` with entries
/// `K_r(z_i, ξ_j) √(target mass_i) √(source mass_j)`.
pub fn discretize_tr(source: &CircleMeasure, target: &CircleMeasure, r: f64) -> Result<OperatorMatrix> {
    if !(r >= 0.0) || (r - 1.0).abs() < 1e-6 {
        return Err(Error::InvalidParameter(format!("r = {r} must be nonnegative and |r − 1| ≥ 1e-6")));
    }
    let (sa, sm) = quadrature_nodes(source);
    let (ta, tm) = quadrature_nodes(target);
    let rows: Vec<Vec<Complex64>> = ta
        .par_iter()
        .zip(tm.par_iter())
        .map(|(&ti, &mi)| {
            let z = Complex64::from_polar(1.0, ti);
            sa.iter()
                .zip(&sm)
                .map(|(&sj, &mj)| {
                    let xi = Complex64::from_polar(1.0, sj);
                    (mi * mj).sqrt() / (1.0 - r * xi.conj() * z)
                })
                .collect()
        })
        .collect();
    let m = nalgebra::DMatrix::from_fn(ta.len(), sa.len(), |i, j| rows[i][j]);
    Ok(OperatorMatrix::new(m, "L2(source)", "L2(target)"))
}
