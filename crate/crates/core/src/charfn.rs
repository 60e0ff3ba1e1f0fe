//! Characteristic functions of the contractions `U_γ`:
//!
//! ```text
//! θ₀ = R₁μ / (1 + R₁μ) = (R₂μ − 1)/(R₂μ + 1),      1 − θ₀ = 1/Rμ,
//! θ_γ = −γ + (1 − |γ|²) R₁μ / (1 + (1 − γ̄) R₁μ) = (θ₀ − γ)/(1 − γ̄θ₀).
//! ```
//!
//! For purely atomic `μ` these are finite Blaschke products; their zeros
//! are the solutions of `Rμ(z) = 1/(1 − γ)` in the disc.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::cauchy::{radial_limit, CauchyTransform, RadialLimitConfig, Side, GUARD_BAND};
use crate::error::{Error, Result};
use crate::linalg::{poly_add, poly_mul, poly_roots, poly_scale};
use crate::measure::CircleMeasure;
use crate::rational::RationalInner;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

pub fn check_gamma(gamma: Complex64) -> Result<()> {
    if !(gamma.norm() < 1.0) {
        return Err(Error::InvalidParameter(format!("|γ| = {} must be < 1", gamma.norm())));
    }
    Ok(())
}

fn check_interior(lambda: Complex64) -> Result<()> {
    if !(lambda.norm() < 1.0 - GUARD_BAND) {
        return Err(Error::BoundaryGuard(lambda.norm()));
    }
    Ok(())
}

/// Möbius map `θ ↦ (θ − γ)/(1 − γ̄θ)`.
pub fn mobius(theta: Complex64, gamma: Complex64) -> Complex64 {
    (theta - gamma) / (1.0 - gamma.conj() * theta)
}

/// `θ₀(λ)` for `|λ| < 1`.
pub fn theta0(mu: &CircleMeasure, lambda: Complex64) -> Result<Complex64> {
    mu.require_probability()?;
    check_interior(lambda)?;
    let r1 = CauchyTransform::new(mu).r1(lambda)?;
    Ok(r1 / (1.0 + r1))
}

/// `θ₀(λ)` through the `R₂` form `(R₂μ − 1)/(R₂μ + 1)`.
pub fn theta0_r2_form(mu: &CircleMeasure, lambda: Complex64) -> Result<Complex64> {
    mu.require_probability()?;
    check_interior(lambda)?;
    let r2 = CauchyTransform::new(mu).r2(lambda)?;
    Ok((r2 - 1.0) / (r2 + 1.0))
}

/// `θ_γ(λ)` for `|λ| < 1`, `|γ| < 1`.
pub fn theta_gamma(mu: &CircleMeasure, gamma: Complex64, lambda: Complex64) -> Result<Complex64> {
    check_gamma(gamma)?;
    mu.require_probability()?;
    check_interior(lambda)?;
    let r1 = CauchyTransform::new(mu).r1(lambda)?;
    Ok(-gamma + (1.0 - gamma.norm_sqr()) * r1 / (1.0 + (1.0 - gamma.conj()) * r1))
}

/// `Δ_γ = (1 − |θ_γ|²)^{1/2}` from a boundary value of `θ₀`, using
/// `Δ_γ = (1 − |γ|²)^{1/2} Δ₀ / |1 − γ̄θ₀|`.
pub fn delta_from_theta0(theta0: Complex64, gamma: Complex64) -> f64 {
    let d0 = (1.0 - theta0.norm_sqr()).max(0.0).sqrt();
    (1.0 - gamma.norm_sqr()).sqrt() * d0 / (1.0 - gamma.conj() * theta0).norm()
}

/// Boundary value of `θ₀` at `z ∈ 𝕋`. Atomic measures use the rational
/// form; otherwise a radial limit from inside.
pub fn theta0_boundary(mu: &CircleMeasure, z: Complex64, cfg: &RadialLimitConfig) -> Result<Complex64> {
    mu.require_probability()?;
    if mu.is_atomic() {
        return Ok(theta0_atomic_on_circle(mu, z));
    }
    let t = CauchyTransform::new(mu);
    Ok(radial_limit(|l| 1.0 - 1.0 / t.eval_unguarded(l), z, Side::Inner, cfg)?.value)
}

/// `Δ_γ(z)` on the circle.
pub fn delta_gamma(mu: &CircleMeasure, gamma: Complex64, z: Complex64, cfg: &RadialLimitConfig) -> Result<f64> {
    check_gamma(gamma)?;
    let t0 = theta0_boundary(mu, z, cfg)?;
    let tg = mobius(t0, gamma);
    let direct = (1.0 - tg.norm_sqr()).max(0.0).sqrt();
    let via = delta_from_theta0(t0, gamma);
    if (direct - via).abs() > 1e-9 && (direct - via).abs() > 1e-9 * direct.max(via) {
        // both forms should agree; a mismatch means the limit is not reliable here
        return Err(Error::Conditioning(format!("Δ forms disagree by {:e}", (direct - via).abs())));
    }
    Ok(via)
}

/// `θ₀` of an atomic measure at any `z` off the atoms via `1 − 1/Rμ(z)`,
/// computed without cancellation near an atom.
pub fn theta0_atomic_on_circle(mu: &CircleMeasure, z: Complex64) -> Complex64 {
    1.0 - inverse_cauchy_atomic(mu, z)
}

/// `1/Rμ(z)` for atomic `μ`, stable near (and exactly at) the atoms.
pub fn inverse_cauchy_atomic(mu: &CircleMeasure, z: Complex64) -> Complex64 {
    let pts = mu.points();
    let masses = mu.masses();
    inverse_cauchy_points(&pts, &masses, z, None)
}

/// `1/(Rτ(z)(1 − ξ̄_j z))` for an atomic `τ` with points `pts`, masses
/// `masses`; with `j = None` returns `1/Rτ(z)`. The nearest atom is factored
/// out so the result stays accurate close to the atoms.
pub fn inverse_cauchy_points(pts: &[Complex64], masses: &[f64], z: Complex64, j: Option<usize>) -> Complex64 {
    let d: Vec<Complex64> = pts.iter().map(|p| 1.0 - p.conj() * z).collect();
    let near = (0..pts.len())
        .min_by(|&a, &b| d[a].norm().total_cmp(&d[b].norm()))
        .expect("at least one atom");
    let dn = d[near];
    // Rτ(z)·d_near = m_near + d_near Σ_{k≠near} m_k/d_k
    let mut s = Complex64::new(masses[near], 0.0);
    for k in 0..pts.len() {
        if k != near {
            s += dn * masses[k] / d[k];
        }
    }
    match j {
        None => dn / s,
        Some(j) if j == near => ONE / s,
        Some(j) => dn / (s * d[j]),
    }
}

/// Polynomials `P, Q` with `Rμ = P/Q` for atomic `μ`:
/// `Q = Π(1 − ξ̄_k z)`, `P = Σ m_k Π_{j≠k}(1 − ξ̄_j z)`.
pub fn cauchy_polynomials(mu: &CircleMeasure) -> (Vec<Complex64>, Vec<Complex64>) {
    let pts = mu.points();
    let masses = mu.masses();
    let lin = |p: &Complex64| vec![ONE, -p.conj()];
    let q = pts.iter().fold(vec![ONE], |acc, p| poly_mul(&acc, &lin(p)));
    let mut pp = vec![Complex64::new(0.0, 0.0)];
    for k in 0..pts.len() {
        let mut term = vec![Complex64::new(masses[k], 0.0)];
        for (j, p) in pts.iter().enumerate() {
            if j != k {
                term = poly_mul(&term, &lin(p));
            }
        }
        pp = poly_add(&pp, &term);
    }
    (pp, q)
}

fn cauchy_atomic(pts: &[Complex64], masses: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut r = Complex64::new(0.0, 0.0);
    let mut dr = Complex64::new(0.0, 0.0);
    for (p, m) in pts.iter().zip(masses) {
        let d = 1.0 - p.conj() * z;
        r += m / d;
        dr += m * p.conj() / (d * d);
    }
    (r, dr)
}

/// Midpoint of the largest gap between atoms: a point of 𝕋 far from `supp μ`.
pub fn far_point(mu: &CircleMeasure) -> Complex64 {
    let a = mu.angles();
    if a.is_empty() {
        return ONE;
    }
    let mut best = (a[0] + TAU - a[a.len() - 1], a[a.len() - 1]);
    for w in a.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[0]);
        }
    }
    Complex64::from_polar(1.0, best.1 + 0.5 * best.0)
}

/// `θ_γ` of a purely atomic probability measure as a Blaschke product.
pub fn rational_theta_gamma(mu: &CircleMeasure, gamma: Complex64) -> Result<RationalInner> {
    check_gamma(gamma)?;
    mu.require_atomic()?;
    mu.require_probability()?;
    let pts = mu.points();
    let masses = mu.masses();
    let w = ONE / (1.0 - gamma);
    let (p, q) = cauchy_polynomials(mu);
    let target = poly_add(&p, &poly_scale(&q, -w));
    let raw = poly_roots(&target)?;
    if raw.len() != pts.len() {
        return Err(Error::RootFinding(f64::NAN));
    }
    // Newton polish on Rμ(z) − w in partial-fraction form
    let mut zeros = Vec::with_capacity(raw.len());
    let mut worst: f64 = 0.0;
    for z0 in raw {
        let mut z = z0;
        for _ in 0..60 {
            let (r, dr) = cauchy_atomic(&pts, &masses, z);
            let step = (r - w) / dr;
            let next = z - step;
            if !next.re.is_finite() || !next.im.is_finite() || next.norm() >= 1.0 {
                break;
            }
            z = next;
            if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                break;
            }
        }
        if !(z.norm() < 1.0) {
            return Err(Error::RootFinding(z.norm()));
        }
        let (r, _) = cauchy_atomic(&pts, &masses, z);
        worst = worst.max(((r - w) / w).norm().min((r - w).norm()));
        zeros.push(z);
    }
    if worst > 1e-6 {
        return Err(Error::RootFinding(worst));
    }
    let zeta = far_point(mu);
    let tg = mobius(theta0_atomic_on_circle(mu, zeta), gamma);
    let b = zeros.iter().fold(ONE, |acc, a| acc * (zeta - a) / (1.0 - a.conj() * zeta));
    let c = tg / b;
    if (c.norm() - 1.0).abs() > 1e-8 {
        return Err(Error::RootFinding((c.norm() - 1.0).abs()));
    }
    RationalInner::new(zeros, c / c.norm())
}

/// `θ₀` of a purely atomic probability measure as a Blaschke product.
pub fn rational_theta0(mu: &CircleMeasure) -> Result<RationalInner> {
    rational_theta_gamma(mu, Complex64::new(0.0, 0.0))
}

/// Number of quadrature points on `|z| = ½` used for Taylor coefficients.
const TAYLOR_POINTS: usize = 256;

/// `k`-th Taylor coefficient of `θ_γ` at the origin by contour quadrature
/// on `|z| = ½`.
pub fn theta_fourier(mu: &CircleMeasure, gamma: Complex64, k: usize) -> Result<Complex64> {
    check_gamma(gamma)?;
    mu.require_probability()?;
    if let Some(w) = mu.density() {
        if k > w.len() / 4 {
            return Err(Error::InvalidParameter(format!("k = {k} exceeds N/4 for the density grid")));
        }
    }
    let t = CauchyTransform::new(mu);
    let rho = 0.5;
    let m = TAYLOR_POINTS.max(4 * k);
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let u = Complex64::from_polar(1.0, TAU * j as f64 / m as f64);
        let r1 = t.eval_unguarded(rho * u) - t.mass();
        let th = -gamma + (1.0 - gamma.norm_sqr()) * r1 / (1.0 + (1.0 - gamma.conj()) * r1);
        s += th * u.powi(-(k as i32));
    }
    Ok(s / m as f64 / rho.powi(k as i32))
}

/// A measure and a parameter `γ` bundled with everything derived from them.
#[derive(Debug, Clone)]
pub struct CharFunction {
    measure: CircleMeasure,
    gamma: Complex64,
    transform: CauchyTransform,
    rational: Option<RationalInner>,
}

impl CharFunction {
    pub fn new(mu: &CircleMeasure, gamma: Complex64) -> Result<Self> {
        check_gamma(gamma)?;
        mu.require_probability()?;
        let rational = if mu.is_atomic() { Some(rational_theta_gamma(mu, gamma)?) } else { None };
        Ok(Self { measure: mu.clone(), gamma, transform: CauchyTransform::new(mu), rational })
    }

    pub fn measure(&self) -> &CircleMeasure {
        &self.measure
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn rational(&self) -> Option<&RationalInner> {
        self.rational.as_ref()
    }

    pub fn theta0(&self, lambda: Complex64) -> Result<Complex64> {
        check_interior(lambda)?;
        let r1 = self.transform.r1(lambda)?;
        Ok(r1 / (1.0 + r1))
    }

    /// `θ_γ(λ)`; inside the disc by the Cauchy-transform formula, anywhere
    /// off the poles by the rational form when available.
    pub fn eval(&self, lambda: Complex64) -> Result<Complex64> {
        if lambda.norm() < 1.0 - GUARD_BAND {
            let g = self.gamma;
            let r1 = self.transform.r1(lambda)?;
            return Ok(-g + (1.0 - g.norm_sqr()) * r1 / (1.0 + (1.0 - g.conj()) * r1));
        }
        match &self.rational {
            Some(r) => Ok(r.eval(lambda)),
            None => Err(Error::BoundaryGuard(lambda.norm())),
        }
    }

    pub fn delta(&self, z: Complex64, cfg: &RadialLimitConfig) -> Result<f64> {
        delta_gamma(&self.measure, self.gamma, z, cfg)
    }

    pub fn taylor_coefficient(&self, k: usize) -> Result<Complex64> {
        theta_fourier(&self.measure, self.gamma, k)
    }
}
