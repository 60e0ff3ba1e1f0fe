//! Boundary values on a uniform grid: `θ₀`, `T₊1`, `T₋1`, `T_±f` and the
//! resampled density `w`, for measures with a density part (atoms allowed).
//!
//! Density contributions are radial limits of the spectral series; atom
//! contributions are continuous across the circle away from the atoms and
//! are evaluated in closed form. Grid points close to an atom are excluded.

use num_complex::Complex64;

use crate::cauchy::{radial_limit_grid, CauchyTransform, RadialLimitConfig, Side};
use crate::charfn::theta0_atomic_on_circle;
use crate::error::Result;
use crate::grid::{grid_points, resample};
use crate::measure::{circular_distance, grid_angle, CircleMeasure, MeasureFunction};

/// Grid points closer than this (radians) to an atom are excluded.
pub const ATOM_EXCLUSION: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct GridBoundary {
    pub mu: CircleMeasure,
    pub points: Vec<Complex64>,
    /// Density resampled to the grid (zero without a density part).
    pub w: Vec<f64>,
    pub theta0: Vec<Complex64>,
    pub tp1: Vec<Complex64>,
    pub tm1: Vec<Complex64>,
    pub excluded: Vec<bool>,
    /// Largest radial-extrapolation error estimate over included points.
    pub extrapolation_error: f64,
    cfg: RadialLimitConfig,
}

impl GridBoundary {
    pub fn new(mu: &CircleMeasure, m: usize, cfg: &RadialLimitConfig) -> Result<Self> {
        mu.require_probability()?;
        let points = grid_points(m);
        let w: Vec<f64> = match mu.density() {
            Some(d) => {
                let c: Vec<Complex64> = d.iter().map(|&x| Complex64::new(x, 0.0)).collect();
                resample(&c, m).into_iter().map(|z| z.re).collect()
            }
            None => vec![0.0; m],
        };
        let mut excluded: Vec<bool> = (0..m)
            .map(|j| {
                let t = grid_angle(j, m);
                mu.atoms().iter().any(|a| circular_distance(a.angle, t) < ATOM_EXCLUSION)
            })
            .collect();
        let t = CauchyTransform::new(mu);
        let mut err: f64 = 0.0;
        let theta0 = if mu.is_atomic() {
            points.iter().map(|&z| theta0_atomic_on_circle(mu, z)).collect()
        } else {
            let (lim, div) = radial_limit_grid(
                |rho| {
                    let d = t.density_on_circle(rho, m);
                    let a = t.atoms_on_circle(rho, m);
                    d.iter().zip(&a).map(|(x, y)| 1.0 - 1.0 / (x + y)).collect()
                },
                Side::Inner,
                cfg,
            )?;
            collect_limits(lim, div, &mut excluded, &mut err)
        };
        let (tp1, tm1) = side_values(&t, m, cfg, &mut excluded, &mut err)?;
        Ok(Self { mu: mu.clone(), points, w, theta0, tp1, tm1, excluded, extrapolation_error: err, cfg: cfg.clone() })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(T₊f, T₋f)` on the grid, for `f` given as a function of the angle.
    /// Points where a limit diverges are added to `self.excluded`.
    pub fn transforms(&mut self, f: impl Fn(f64) -> Complex64) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let mf = MeasureFunction::from_fn(&self.mu, &f);
        let t = CauchyTransform::weighted(&self.mu, Some(&mf));
        let m = self.len();
        side_values(&t, m, &self.cfg, &mut self.excluded, &mut self.extrapolation_error)
    }

    /// Samples of `f` on the grid.
    pub fn sample(&self, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        (0..self.len()).map(|j| f(grid_angle(j, self.len()))).collect()
    }
}

fn collect_limits(
    lim: Vec<crate::cauchy::RadialLimit>,
    div: Vec<bool>,
    excluded: &mut [bool],
    err: &mut f64,
) -> Vec<Complex64> {
    lim.iter()
        .enumerate()
        .map(|(j, l)| {
            if div[j] {
                excluded[j] = true;
            } else if !excluded[j] {
                *err = err.max(l.error_estimate);
            }
            l.value
        })
        .collect()
}

fn side_values(
    t: &CauchyTransform,
    m: usize,
    cfg: &RadialLimitConfig,
    excluded: &mut [bool],
    err: &mut f64,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let atoms = t.atoms_on_circle(1.0, m);
    let mut out = Vec::with_capacity(2);
    for side in [Side::Inner, Side::Outer] {
        let (lim, div) = radial_limit_grid(|rho| t.density_on_circle(rho, m), side, cfg)?;
        let d = collect_limits(lim, div, excluded, err);
        out.push(d.iter().zip(&atoms).map(|(x, y)| x + y).collect::<Vec<_>>());
    }
    let tm = out.pop().expect("outer");
    let tp = out.pop().expect("inner");
    Ok((tp, tm))
}
