//! Pointwise boundary identities on a uniform grid, for measures with a
//! density part.

use num_complex::Complex64;
use serde::Serialize;

use crate::boundary::GridBoundary;
use crate::cauchy::RadialLimitConfig;
use crate::charfn::{check_gamma, mobius};
use crate::clark::{g_minus_on, g_one, symbols};
use crate::error::Result;
use crate::grid::CircleFunctionGrid;
use crate::measure::CircleMeasure;

/// Tolerance applied to every identity.
pub const IDENTITY_TOL: f64 = 1e-6;

/// Smooth test function with both analytic and anti-analytic parts.
pub fn test_function(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t) + 0.5 * Complex64::from_polar(1.0, -2.0 * t) + Complex64::new(0.3, -0.2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityRow {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub grid: usize,
    pub gamma: [f64; 2],
    /// Grid points left out (near atoms, or divergent limits).
    pub excluded: usize,
    pub extrapolation_error: f64,
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn max_error(&self) -> f64 {
        self.rows.iter().map(|r| r.max_error).fold(0.0, f64::max)
    }
}

fn max_over(excluded: &[bool], err: impl Fn(usize) -> f64) -> f64 {
    (0..excluded.len()).filter(|&j| !excluded[j]).map(err).fold(0.0, f64::max)
}

/// Runs every identity at tolerance `tol` on an `m`-point grid.
pub fn identity_suite(
    mu: &CircleMeasure,
    gamma: Complex64,
    m: usize,
    tol: f64,
    cfg: &RadialLimitConfig,
) -> Result<IdentityReport> {
    check_gamma(gamma)?;
    let mut gb = GridBoundary::new(mu, m, cfg)?;
    let s = (1.0 - gamma.norm_sqr()).sqrt();
    let f = test_function;
    let fs = gb.sample(f);
    let (tpf, tmf) = gb.transforms(f)?;
    let g1 = g_one(&mut gb, gamma, f)?;
    let gm = g_minus_on(&mut gb, gamma, f)?;

    let th = gb.theta0.clone();
    let w = gb.w.clone();
    let ex = gb.excluded.clone();
    let one = Complex64::new(1.0, 0.0);
    let mut rows = Vec::new();
    let mut push = |name: &'static str, e: f64| {
        rows.push(IdentityRow { name, max_error: e, tolerance: tol, passed: e <= tol });
    };

    push("delta_squared", max_over(&ex, |j| ((1.0 - th[j].norm_sqr()) - (one - th[j]).norm_sqr() * w[j]).abs()));
    push(
        "v0",
        max_over(&ex, |j| {
            let d0 = (one - th[j]).norm() * w[j].max(0.0).sqrt();
            let (_, b) = symbols(th[j], d0, Complex64::new(0.0, 0.0));
            (b[0].norm_sqr() + b[1].norm_sqr() - 2.0 * (one - th[j]).re).abs()
        }),
    );
    push(
        "brac01",
        max_over(&ex, |j| {
            let tg = mobius(th[j], gamma).conj();
            let lhs = tg + gamma.conj();
            let rhs = ((1.0 - gamma) * tg + gamma.conj() - 1.0) * gb.tm1[j];
            (lhs - rhs).norm()
        }),
    );
    push("t_minus_one", max_over(&ex, |j| (gb.tm1[j] * (1.0 - th[j].conj()) + th[j].conj()).norm()));
    push("one_minus_theta0", max_over(&ex, |j| ((1.0 - th[j]) * gb.tp1[j] - 1.0).norm()));
    push("jump", max_over(&ex, |j| (tpf[j] - tmf[j] - w[j] * fs[j]).norm()));
    push(
        "recombination",
        max_over(&ex, |j| {
            let combo = (1.0 - gamma.conj() * th[j]) / (1.0 - th[j]) * g1[j]
                + (1.0 - gamma * th[j].conj()) / (1.0 - th[j].conj()) * gm[j];
            (combo - s * w[j] * fs[j]).norm()
        }),
    );
    if mu.atoms().is_empty() {
        let content = CircleFunctionGrid::new(gm)?.nonnegative_content();
        push("g_minus_antianalytic", content);
    }

    Ok(IdentityReport {
        grid: m,
        gamma: [gamma.re, gamma.im],
        excluded: gb.excluded.iter().filter(|&&e| e).count(),
        extrapolation_error: gb.extrapolation_error,
        rows,
    })
}
