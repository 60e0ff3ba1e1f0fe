//! Clark measures `μ_α`, the Clark operator `Φ*_γ : L²(μ) → K_{θ_γ}` and its
//! inverse, the operators `Φ*_{α,γ}` and `V_α`, and the rigidity check.
//!
//! For atomic `μ` the column of `Φ*_γ` belonging to `e_j = 1_{ξ_j}/√m_j` is
//! the function
//!
//! ```text
//! g_j(z) = (1 − |γ|²)^{1/2} (1 − θ₀(z))/(1 − γ̄θ₀(z)) · √m_j/(1 − ξ̄_j z)
//!        = (1 − |γ|²)^{1/2}/(1 − γ̄θ₀(z)) · √m_j/(Rμ(z)(1 − ξ̄_j z)),
//! ```
//!
//! analytic across the circle, projected onto the Takenaka–Malmquist basis.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::boundary::GridBoundary;
use crate::cauchy::{radial_limit, CauchyTransform, RadialLimitConfig, Side};
use crate::charfn::{
    check_gamma, inverse_cauchy_atomic, inverse_cauchy_points, mobius, rational_theta0, rational_theta_gamma,
    theta0_atomic_on_circle, theta0_boundary,
};
use crate::error::{Error, Result};
use crate::grid::{grid_points, CircleFunctionGrid};
use crate::linalg::{min_singular_value, operator_norm, unitarity_residual, CMatrix, CVector, OperatorMatrix};
use crate::measure::{circular_distance, grid_angle, min_atom_distance, Atom, CircleMeasure, MeasureFunction};
use crate::model::{DefectVectors, ModelSpace};
use crate::perturbation::{build_u_gamma, vector_b, vector_b1};
use crate::rational::RationalInner;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn check_alpha(alpha: Complex64) -> Result<()> {
    if (alpha.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!("|α| = {} must be 1", alpha.norm())));
    }
    Ok(())
}

/// A Clark measure together with the diagnostics of its computation.
#[derive(Debug, Clone)]
pub struct ClarkMeasureReport {
    pub measure: CircleMeasure,
    /// Relative residual of the mass system.
    pub system_residual: f64,
    /// Largest `|θ₀(ζ) − α|` over the atoms.
    pub root_residual: f64,
    /// Masses `1/|θ₀′(ζ)|`, for comparison.
    pub derivative_masses: Vec<f64>,
    /// Largest difference between the two mass computations.
    pub mass_discrepancy: f64,
}

/// The Clark measure `μ_α` of an inner `θ₀` with `θ₀(0) = 0`.
pub fn clark_measure(theta0: &RationalInner, alpha: Complex64) -> Result<CircleMeasure> {
    Ok(clark_measure_report(theta0, alpha)?.measure)
}

/// [`clark_measure`] with diagnostics. Atoms solve `θ₀(ζ) = α` on the
/// circle; masses solve `Σ_k v_k/(1 − ζ̄_k z_j) = 1/(1 − ᾱθ₀(z_j))` at
/// interior points `z_j = (1 − δ)ζ_j`.
pub fn clark_measure_report(theta0: &RationalInner, alpha: Complex64) -> Result<ClarkMeasureReport> {
    check_alpha(alpha)?;
    let alpha = alpha / alpha.norm();
    if theta0.eval(ZERO).norm() > 1e-10 {
        return Err(Error::InvalidParameter("θ₀(0) must vanish".into()));
    }
    let ts = theta0.unimodular_solutions(alpha)?;
    let n = ts.len();
    let zeta: Vec<Complex64> = ts.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
    let root_residual = zeta.iter().map(|&z| (theta0.eval(z) - alpha).norm()).fold(0.0, f64::max);
    if root_residual > 1e-8 {
        return Err(Error::RootFinding(root_residual));
    }
    let mut gap = std::f64::consts::TAU;
    for i in 0..n {
        for j in i + 1..n {
            gap = gap.min(circular_distance(ts[i], ts[j]));
        }
    }
    let derivative_masses: Vec<f64> = ts.iter().map(|&t| 1.0 / theta0.phase_derivative(t)).collect();
    let base = (0.05 * gap).min(1e-2);
    let mut last_err = String::new();
    for factor in [1.0, 0.1, 0.01, 3.0] {
        let delta = base * factor;
        let samples: Vec<Complex64> = zeta.iter().map(|z| z * (1.0 - delta)).collect();
        let a = CMatrix::from_fn(n, n, |j, k| ONE / (1.0 - zeta[k].conj() * samples[j]));
        let rhs = CVector::from_iterator(n, samples.iter().map(|&z| ONE / (1.0 - alpha.conj() * theta0.eval(z))));
        let Some(v) = a.clone().lu().solve(&rhs) else {
            last_err = "singular mass system".into();
            continue;
        };
        let system_residual = (&a * &v - &rhs).norm() / rhs.norm();
        let bad = v.iter().any(|x| !(x.re > 0.0) || x.im.abs() > 1e-8 * x.norm().max(1e-300));
        if bad || system_residual > 1e-10 {
            last_err = format!("mass system residual {system_residual:e}");
            continue;
        }
        let atoms: Vec<Atom> = ts.iter().zip(v.iter()).map(|(&angle, m)| Atom { angle, mass: m.re }).collect();
        let measure = CircleMeasure::new(atoms, None)?;
        let mass_discrepancy = measure
            .masses()
            .iter()
            .zip(&derivative_masses)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if (measure.total_mass() - 1.0).abs() > 1e-10 {
            last_err = format!("total mass {}", measure.total_mass());
            continue;
        }
        return Ok(ClarkMeasureReport { measure, system_residual, root_residual, derivative_masses, mass_discrepancy });
    }
    Err(Error::Conditioning(last_err))
}

/// An atomic measure with its `θ₀` and a cache of Clark measures.
#[derive(Debug)]
pub struct ClarkFamily {
    mu: CircleMeasure,
    theta0: RationalInner,
    cache: Mutex<BTreeMap<(u64, u64), CircleMeasure>>,
}

impl ClarkFamily {
    pub fn new(mu: &CircleMeasure) -> Result<Self> {
        Ok(Self { mu: mu.clone(), theta0: rational_theta0(mu)?, cache: Mutex::new(BTreeMap::new()) })
    }

    pub fn mu(&self) -> &CircleMeasure {
        &self.mu
    }

    pub fn theta0(&self) -> &RationalInner {
        &self.theta0
    }

    pub fn measure(&self, alpha: Complex64) -> Result<CircleMeasure> {
        let key = (alpha.re.to_bits(), alpha.im.to_bits());
        if let Some(m) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let m = clark_measure(&self.theta0, alpha)?;
        self.cache.lock().expect("cache lock").insert(key, m.clone());
        Ok(m)
    }
}

/// `Φ*_γ` for an atomic measure, with the model space it maps into.
#[derive(Debug, Clone)]
pub struct ClarkOperator {
    pub mu: CircleMeasure,
    pub gamma: Complex64,
    pub theta0: RationalInner,
    pub theta_gamma: RationalInner,
    pub model: ModelSpace,
    pub defects: DefectVectors,
    pub matrix: OperatorMatrix,
}

/// Residuals of the defining properties of a Clark-type operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClarkReport {
    pub unitarity_residual: f64,
    pub intertwining_residual: f64,
    pub normalization_residual: f64,
}

impl ClarkReport {
    pub fn max(&self) -> f64 {
        self.unitarity_residual.max(self.intertwining_residual).max(self.normalization_residual)
    }
}

/// Coefficients of the functions `z ↦ s/(1 − γ̄θ₀(z)) · √v_j/(Rτ(z)(1 − ζ̄_j z))`
/// for an atomic `τ = Σ v_j δ_{ζ_j}`.
fn normalized_cauchy_columns(
    model: &ModelSpace,
    theta0: &RationalInner,
    gamma: Complex64,
    pts: &[Complex64],
    masses: &[f64],
) -> CMatrix {
    let s = (1.0 - gamma.norm_sqr()).sqrt();
    let nodes = model.quadrature().points();
    let n = pts.len();
    let rows: Vec<Vec<Complex64>> = nodes
        .par_iter()
        .map(|&z| {
            let pre = s / (1.0 - gamma.conj() * theta0.eval(z));
            (0..n)
                .map(|j| pre * masses[j].sqrt() * inverse_cauchy_points(pts, masses, z, Some(j)))
                .collect()
        })
        .collect();
    let samples = CMatrix::from_fn(nodes.len(), n, |i, j| rows[i][j]);
    model.project_samples(&samples)
}

/// `Φ*_γ : L²(μ) → K_{θ_γ}` for atomic `μ`, `|γ| < 1`.
pub fn phi_star_matrix(mu: &CircleMeasure, gamma: Complex64) -> Result<ClarkOperator> {
    check_gamma(gamma)?;
    mu.require_atomic()?;
    mu.require_probability()?;
    let theta0 = rational_theta0(mu)?;
    let theta_gamma = rational_theta_gamma(mu, gamma)?;
    let model = ModelSpace::with_critical_points(&theta_gamma, theta0.zeros())?;
    let defects = model.defect_vectors();
    let m = normalized_cauchy_columns(&model, &theta0, gamma, &mu.points(), &mu.masses());
    Ok(ClarkOperator {
        mu: mu.clone(),
        gamma,
        theta0,
        theta_gamma,
        model,
        defects,
        matrix: OperatorMatrix::new(m, "L2(mu)", "K(theta_gamma)"),
    })
}

impl ClarkOperator {
    pub fn verify(&self) -> Result<ClarkReport> {
        let phi = &self.matrix.matrix;
        let u = build_u_gamma(&self.mu, self.gamma)?.matrix;
        let intertwining_residual = (self.model.compression() * phi - phi * u).norm();
        let nb = (phi * vector_b(&self.mu) - &self.defects.c).norm();
        let nb1 = (phi * vector_b1(&self.mu) - &self.defects.c1).norm();
        Ok(ClarkReport {
            unitarity_residual: unitarity_residual(phi),
            intertwining_residual,
            normalization_residual: nb.max(nb1),
        })
    }

    /// `‖Φ*U₁ − M_zΦ* − (c − c₂)b₁*‖_F` in the basis of `K_{zθ_γ}`.
    pub fn commutation_residual(&self) -> Result<f64> {
        let ext = self.model.extended()?;
        let n = self.model.dim();
        let phi = &self.matrix.matrix;
        let lift = |m: &CMatrix| {
            let mut out = CMatrix::zeros(n + 1, m.ncols());
            out.view_mut((0, 0), (n, m.ncols())).copy_from(m);
            out
        };
        let u1 = build_u_gamma(&self.mu, ONE)?.matrix;
        let shift = self.model.shift_into(&ext);
        let c = lift(&CMatrix::from_column_slice(n, 1, self.defects.c.as_slice()));
        let c2 = &shift * &self.defects.c1;
        let b1 = vector_b1(&self.mu);
        let rhs = &shift * phi + (c - c2) * b1.adjoint();
        Ok((lift(phi) * u1 - rhs).norm())
    }

    /// `f` at the atoms from model coefficients: the radial limit of
    /// `(1 − γ̄)(1 − |γ|²)^{−1/2} g₁` at each atom.
    pub fn phi_apply(&self, coeffs: &CVector, cfg: &RadialLimitConfig) -> Result<MeasureFunction> {
        let s = (1.0 - self.gamma.norm_sqr()).sqrt();
        let k = (1.0 - self.gamma.conj()) / s;
        let mut vals = Vec::with_capacity(self.mu.len());
        for xi in self.mu.points() {
            let lim = radial_limit(|z| self.model.eval(coeffs, z), xi, Side::Inner, cfg)?;
            vals.push(k * lim.value);
        }
        Ok(MeasureFunction { at_atoms: vals, on_grid: Vec::new() })
    }

    /// `Φ*_{α,γ} : L²(μ_α) → K_{θ_γ}` in the same model basis.
    pub fn alpha_variant(&self, alpha: Complex64) -> Result<AlphaClarkOperator> {
        check_alpha(alpha)?;
        let mu_alpha = clark_measure(&self.theta0, alpha)?;
        let m = normalized_cauchy_columns(&self.model, &self.theta0, self.gamma, &mu_alpha.points(), &mu_alpha.masses());
        Ok(AlphaClarkOperator {
            alpha,
            gamma: self.gamma,
            mu_alpha,
            matrix: OperatorMatrix::new(m, "L2(mu_alpha)", "K(theta_gamma)"),
        })
    }
}

/// `Φ*_{α,γ}` with the Clark measure it is defined on.
#[derive(Debug, Clone)]
pub struct AlphaClarkOperator {
    pub alpha: Complex64,
    pub gamma: Complex64,
    pub mu_alpha: CircleMeasure,
    pub matrix: OperatorMatrix,
}

impl AlphaClarkOperator {
    /// Unitarity; intertwining with `U_γ` written in the eigenbasis of `U_α`,
    /// which is `U_{γᾱ}` built on `μ_α`; normalization `Φ*_{α,γ}1 = c`.
    pub fn verify(&self, op: &ClarkOperator) -> Result<ClarkReport> {
        let phi = &self.matrix.matrix;
        let u = build_u_gamma(&self.mu_alpha, self.gamma * self.alpha.conj())?.matrix;
        Ok(ClarkReport {
            unitarity_residual: unitarity_residual(phi),
            intertwining_residual: (op.model.compression() * phi - phi * u).norm(),
            normalization_residual: (phi * vector_b(&self.mu_alpha) - &op.defects.c).norm(),
        })
    }
}

/// `Φ*_{α,γ}` built from scratch.
pub fn phi_star_alpha_gamma(mu: &CircleMeasure, alpha: Complex64, gamma: Complex64) -> Result<(ClarkOperator, AlphaClarkOperator)> {
    let op = phi_star_matrix(mu, gamma)?;
    let a = op.alpha_variant(alpha)?;
    Ok((op, a))
}

/// A function on the circle with its angular derivative `d/dt f(e^{it})`.
pub struct SmoothFunction<'a> {
    value: Box<dyn Fn(f64) -> Complex64 + Sync + 'a>,
    derivative: Option<Box<dyn Fn(f64) -> Complex64 + Sync + 'a>>,
}

impl<'a> SmoothFunction<'a> {
    pub fn new(value: impl Fn(f64) -> Complex64 + Sync + 'a, derivative: impl Fn(f64) -> Complex64 + Sync + 'a) -> Self {
        Self { value: Box::new(value), derivative: Some(Box::new(derivative)) }
    }

    /// Without derivative data; evaluation fails if a point of the output
    /// grid meets the support of the measure.
    pub fn without_derivative(value: impl Fn(f64) -> Complex64 + Sync + 'a) -> Self {
        Self { value: Box::new(value), derivative: None }
    }

    pub fn value(&self, t: f64) -> Complex64 {
        (self.value)(t)
    }

    pub fn derivative(&self, t: f64) -> Option<Complex64> {
        self.derivative.as_ref().map(|d| d(t))
    }
}

/// The two-component symbols `A_γ(z)`, `B_γ(z)` from a boundary value of `θ₀`.
pub fn symbols(theta0: Complex64, delta0: f64, gamma: Complex64) -> ([Complex64; 2], [Complex64; 2]) {
    let s = (1.0 - gamma.norm_sqr()).sqrt();
    let den = 1.0 - gamma.conj() * theta0;
    let tg = mobius(theta0, gamma);
    let bottom = delta0 / den.norm();
    let a = [s / den, gamma.conj() * bottom];
    let b = [(1.0 + (gamma.conj() - 1.0) * tg - gamma) / s, (gamma.conj() - 1.0) * bottom];
    (a, b)
}

/// `Φ*_γ f(z) = A_γ(z) f(z) + B_γ(z) ∫ (f(ξ) − f(z))/(1 − ξ̄z) dμ(ξ)` at the
/// given points of the circle (atoms and density of `μ` both allowed).
pub fn phi_star_universal_apply(
    mu: &CircleMeasure,
    gamma: Complex64,
    f: &SmoothFunction,
    angles: &[f64],
    cfg: &RadialLimitConfig,
) -> Result<Vec<[Complex64; 2]>> {
    check_gamma(gamma)?;
    mu.require_probability()?;
    let transform = if mu.is_atomic() { None } else { Some(CauchyTransform::new(mu)) };
    let atoms = mu.atoms();
    let dens = mu.density();
    angles
        .par_iter()
        .map(|&t| {
            let z = Complex64::from_polar(1.0, t);
            let fz = f.value(t);
            let quotient = |s: f64| -> Result<Complex64> {
                if circular_distance(s, t) < 1e-9 {
                    let d = f.derivative(t).ok_or(Error::MissingDerivative(t))?;
                    return Ok(-Complex64::i() * d);
                }
                let xi = Complex64::from_polar(1.0, s);
                Ok((f.value(s) - fz) / (1.0 - xi.conj() * z))
            };
            let mut integral = ZERO;
            for a in atoms {
                integral += a.mass * quotient(a.angle)?;
            }
            if let Some(w) = dens {
                let n = w.len();
                let mut acc = ZERO;
                for (j, &wj) in w.iter().enumerate() {
                    if wj != 0.0 {
                        acc += wj * quotient(grid_angle(j, n))?;
                    }
                }
                integral += acc / n as f64;
            }
            let (th0, d0) = match &transform {
                None => (theta0_atomic_on_circle(mu, z), 0.0),
                Some(tr) => {
                    let v = radial_limit(|l| 1.0 - 1.0 / tr.eval_unguarded(l), z, Side::Inner, cfg)?.value;
                    (v, (1.0 - v.norm_sqr()).max(0.0).sqrt())
                }
            };
            let (a, b) = symbols(th0, d0, gamma);
            Ok([a[0] * fz + b[0] * integral, a[1] * fz + b[1] * integral])
        })
        .collect()
}

/// A grid function with a mask of excluded points.
#[derive(Debug, Clone)]
pub struct MaskedGrid {
    pub values: Vec<Complex64>,
    pub excluded: Vec<bool>,
}

impl MaskedGrid {
    /// Samples with excluded points set to zero.
    pub fn to_grid(&self) -> Result<CircleFunctionGrid> {
        CircleFunctionGrid::new(
            self.values
                .iter()
                .zip(&self.excluded)
                .map(|(v, &e)| if e { ZERO } else { *v })
                .collect(),
        )
    }
}

/// `g₋ = −(1 − |γ|²)^{1/2} (1 − θ̄₀)/(1 − γθ̄₀) · T₋f` on the `m`-point grid,
/// equal to `(1 − |γ|²)^{−1/2}(θ̄_γ + γ̄) T₋f/T₋1` wherever `T₋1 ≠ 0`.
pub fn g_minus(
    mu: &CircleMeasure,
    gamma: Complex64,
    f: impl Fn(f64) -> Complex64,
    m: usize,
    cfg: &RadialLimitConfig,
) -> Result<MaskedGrid> {
    check_gamma(gamma)?;
    mu.require_probability()?;
    let s = (1.0 - gamma.norm_sqr()).sqrt();
    if mu.is_atomic() {
        let mf = MeasureFunction::from_fn(mu, &f);
        let t = CauchyTransform::weighted(mu, Some(&mf));
        let pts = grid_points(m);
        let mut excluded = vec![false; m];
        let values = pts
            .iter()
            .enumerate()
            .map(|(j, &z)| {
                if mu.points().iter().any(|p| (p - z).norm() < 1e-14) {
                    excluded[j] = true;
                    return ZERO;
                }
                // on the circle off the atoms 1 − θ̄₀ = conj(1/Rμ) and T₋f = R(fμ)
                let inv = inverse_cauchy_atomic(mu, z);
                let th0 = 1.0 - inv;
                -s * inv.conj() / (1.0 - gamma * th0.conj()) * t.atomic_part(z)
            })
            .collect();
        return Ok(MaskedGrid { values, excluded });
    }
    let mut gb = GridBoundary::new(mu, m, cfg)?;
    let values = g_minus_on(&mut gb, gamma, f)?;
    Ok(MaskedGrid { values, excluded: gb.excluded })
}

/// [`g_minus`] on the grid of an existing [`GridBoundary`].
pub fn g_minus_on(gb: &mut GridBoundary, gamma: Complex64, f: impl Fn(f64) -> Complex64) -> Result<Vec<Complex64>> {
    let s = (1.0 - gamma.norm_sqr()).sqrt();
    let (_, tmf) = gb.transforms(&f)?;
    Ok((0..gb.len())
        .map(|j| {
            let th = gb.theta0[j];
            -s * (1.0 - th.conj()) / (1.0 - gamma * th.conj()) * tmf[j]
        })
        .collect())
}

/// `g₁ = (1 − |γ|²)^{−1/2}(1 + γ̄θ_γ) T₊f/T₊1` on the grid of `gb`.
pub fn g_one(gb: &mut GridBoundary, gamma: Complex64, f: impl Fn(f64) -> Complex64) -> Result<Vec<Complex64>> {
    let s = (1.0 - gamma.norm_sqr()).sqrt();
    let (tpf, _) = gb.transforms(&f)?;
    Ok((0..gb.len())
        .map(|j| (1.0 + gamma.conj() * mobius(gb.theta0[j], gamma)) / s * tpf[j] / gb.tp1[j])
        .collect())
}

/// Inverse Clark operator on grid data: from `(g₁, g₋)` recover `f` at the
/// atoms (radial limits of the analytic extension of `g₁`) and the
/// absolutely continuous part from
/// `(1 − |γ|²)^{1/2} w f = (1 − γ̄θ₀)/(1 − θ₀) g₁ + (1 − γθ̄₀)/(1 − θ̄₀) g₋`.
#[derive(Debug, Clone)]
pub struct RecoveredFunction {
    pub at_atoms: Vec<Complex64>,
    /// `None` where the density vanishes or the point is excluded.
    pub on_grid: Vec<Option<Complex64>>,
}

pub fn phi_apply_grid(
    mu: &CircleMeasure,
    gamma: Complex64,
    g1: &[Complex64],
    gm: &[Complex64],
    cfg: &RadialLimitConfig,
) -> Result<RecoveredFunction> {
    check_gamma(gamma)?;
    let m = g1.len();
    if gm.len() != m {
        return Err(Error::InvalidParameter("g₁ and g₋ must share a grid".into()));
    }
    let gb = GridBoundary::new(mu, m, cfg)?;
    let s = (1.0 - gamma.norm_sqr()).sqrt();
    let mut on_grid = Vec::with_capacity(m);
    for j in 0..m {
        if gb.excluded[j] {
            on_grid.push(None);
            continue;
        }
        let th = gb.theta0[j];
        let combo = (1.0 - gamma.conj() * th) / (1.0 - th) * g1[j] + (1.0 - gamma * th.conj()) / (1.0 - th.conj()) * gm[j];
        if gb.w[j] > 1e-8 {
            on_grid.push(Some(combo / (s * gb.w[j])));
        } else if combo.norm() > 1e-8 {
            return Err(Error::InconsistentMember(format!(
                "density vanishes at angle {} but the combination is {}",
                grid_angle(j, m),
                combo.norm()
            )));
        } else {
            on_grid.push(None);
        }
    }
    let mut at_atoms = Vec::with_capacity(mu.len());
    if !mu.atoms().is_empty() {
        let coeffs = crate::grid::fourier_coefficients(g1);
        let half = m / 2;
        let ext = |z: Complex64| -> Complex64 { coeffs[..half].iter().rev().fold(ZERO, |acc, c| acc * z + c) };
        let k = (1.0 - gamma.conj()) / s;
        for xi in mu.points() {
            at_atoms.push(k * radial_limit(ext, xi, Side::Inner, cfg)?.value);
        }
    }
    Ok(RecoveredFunction { at_atoms, on_grid })
}

/// `V_α : L²(μ) → L²(μ_α)` with `μ_α` and its verification data.
#[derive(Debug, Clone)]
pub struct VAlpha {
    pub alpha: Complex64,
    pub mu: CircleMeasure,
    pub mu_alpha: CircleMeasure,
    pub matrix: OperatorMatrix,
}

/// `V_α f(z) = f(z) + (1 − α)∫(f(ξ) − f(z))/(1 − ξ̄z) dμ(ξ)` on the atoms of
/// `μ_α`; the `f(z)` term vanishes there because `(1 − α)Rμ = 1`.
pub fn v_alpha_matrix(mu: &CircleMeasure, alpha: Complex64) -> Result<VAlpha> {
    check_alpha(alpha)?;
    mu.require_atomic()?;
    mu.require_probability()?;
    let n = mu.len();
    if (alpha - ONE).norm() <= 1e-14 {
        return Ok(VAlpha {
            alpha,
            mu: mu.clone(),
            mu_alpha: mu.clone(),
            matrix: OperatorMatrix::new(CMatrix::identity(n, n), "L2(mu)", "L2(mu_alpha)"),
        });
    }
    let theta0 = rational_theta0(mu)?;
    let mu_alpha = clark_measure(&theta0, alpha)?;
    if min_atom_distance(mu, &mu_alpha) <= 1e-12 {
        return Err(Error::AtomCollision("μ and μ_α share an atom".into()));
    }
    let m = representation_matrix(mu, &mu_alpha, alpha);
    Ok(VAlpha { alpha, mu: mu.clone(), mu_alpha, matrix: OperatorMatrix::new(m, "L2(mu)", "L2(mu_alpha)") })
}

/// Entries `√ν_j √m_k (1 − α)/(1 − ξ̄_k z_j)`.
fn representation_matrix(mu: &CircleMeasure, nu: &CircleMeasure, alpha: Complex64) -> CMatrix {
    let xs = mu.points();
    let ms = mu.masses();
    let zs = nu.points();
    let vs = nu.masses();
    CMatrix::from_fn(zs.len(), xs.len(), |j, k| {
        (vs[j] * ms[k]).sqrt() * (1.0 - alpha) / (1.0 - xs[k].conj() * zs[j])
    })
}

impl VAlpha {
    /// Unitarity, `V U_α = M_z V`, and `V b = 1`, `V b₁ = α z̄`.
    pub fn verify(&self) -> Result<ClarkReport> {
        let v = &self.matrix.matrix;
        let u = build_u_gamma(&self.mu, self.alpha)?.matrix;
        let mz = CMatrix::from_diagonal(&CVector::from_vec(self.mu_alpha.points()));
        let one = vector_b(&self.mu_alpha);
        let zbar = vector_b1(&self.mu_alpha) * self.alpha;
        let nb = (v * vector_b(&self.mu) - one).norm();
        let nb1 = (v * vector_b1(&self.mu) - zbar).norm();
        Ok(ClarkReport {
            unitarity_residual: unitarity_residual(v),
            intertwining_residual: (v * u - mz * v).norm(),
            normalization_residual: nb.max(nb1),
        })
    }
}

/// Outcome of [`rigidity_check`].
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RigidityReport {
    /// Largest `|1 − (1 − α)Rμ(z)|` over the atoms of `ν`; nonzero means the
    /// formula depends on values of `f` off the support of `μ`.
    pub coefficient_residual: f64,
    /// `‖VV*M_z − M_zVV*‖_F`.
    pub commutation_residual: f64,
    pub sigma_min_v: f64,
    pub sigma_min_v_adjoint: f64,
    pub kernel_detected: bool,
    /// `|h|²` at the atoms of `ν` when extraction was possible.
    pub h_squared: Option<Vec<f64>>,
    /// Largest `| |h|²ν − μ_α |` over atoms, when extraction was possible.
    pub mass_residual: Option<f64>,
    pub hypothesis_violated: bool,
}

/// Build `V` from the representation formula into `L²(ν)` and test whether
/// some `M_h V` is unitary, recovering `|h|²ν = μ_α`.
pub fn rigidity_check(mu: &CircleMeasure, nu: &CircleMeasure, alpha: Complex64) -> Result<RigidityReport> {
    check_alpha(alpha)?;
    mu.require_atomic()?;
    mu.require_probability()?;
    nu.require_atomic()?;
    if mu.len() < 2 {
        return Err(Error::InvalidParameter("μ needs at least two atoms".into()));
    }
    if (alpha - ONE).norm() < 1e-10 {
        return Err(Error::InvalidParameter("α must differ from 1".into()));
    }
    if min_atom_distance(mu, nu) <= 1e-10 {
        return Err(Error::AtomCollision("ν shares an atom with μ".into()));
    }
    let t = CauchyTransform::new(mu);
    let coefficient_residual = nu
        .points()
        .iter()
        .map(|&z| (1.0 - (1.0 - alpha) * t.atomic_part(z)).norm())
        .fold(0.0, f64::max);
    let v = representation_matrix(mu, nu, alpha);
    let vv = &v * v.adjoint();
    let mz = CMatrix::from_diagonal(&CVector::from_vec(nu.points()));
    let commutation_residual = (&vv * &mz - &mz * &vv).norm();
    let sigma_min_v = min_singular_value(&v);
    let sigma_min_v_adjoint = min_singular_value(&v.adjoint());
    let kernel_detected = sigma_min_v < 1e-10 || sigma_min_v_adjoint < 1e-10;
    let mut report = RigidityReport {
        coefficient_residual,
        commutation_residual,
        sigma_min_v,
        sigma_min_v_adjoint,
        kernel_detected,
        h_squared: None,
        mass_residual: None,
        hypothesis_violated: kernel_detected || coefficient_residual > 1e-8,
    };
    if report.hypothesis_violated || commutation_residual > 1e-8 * operator_norm(&vv).max(1.0) {
        report.hypothesis_violated = true;
        return Ok(report);
    }
    let mu_alpha = clark_measure(&rational_theta0(mu)?, alpha)?;
    let h2: Vec<f64> = (0..nu.len()).map(|j| 1.0 / vv[(j, j)].re).collect();
    let mut res: f64 = 0.0;
    for (j, a) in nu.atoms().iter().enumerate() {
        let target = mu_alpha
            .atoms()
            .iter()
            .min_by(|x, y| circular_distance(x.angle, a.angle).total_cmp(&circular_distance(y.angle, a.angle)))
            .expect("nonempty");
        res = res.max((h2[j] * a.mass - target.mass).abs());
    }
    report.h_squared = Some(h2);
    report.mass_residual = Some(res);
    Ok(report)
}

/// `f ↦ θ̄₀ T₋f/T₋1 = −(1 − θ̄₀) T₋f` on the `m`-point grid.
pub fn bounded_exterior_transform(
    mu: &CircleMeasure,
    f: impl Fn(f64) -> Complex64,
    m: usize,
    cfg: &RadialLimitConfig,
) -> Result<MaskedGrid> {
    let mut gb = GridBoundary::new(mu, m, cfg)?;
    let (_, tmf) = gb.transforms(&f)?;
    let values = (0..m).map(|j| -(1.0 - gb.theta0[j].conj()) * tmf[j]).collect();
    Ok(MaskedGrid { values, excluded: gb.excluded })
}

/// Spectral norm of the bounded exterior transform `L²(μ) → L²(m)`
/// discretized on an `m`-point grid, for a measure with density only.
pub fn bounded_exterior_norm(mu: &CircleMeasure, m: usize) -> Result<f64> {
    mu.require_probability()?;
    if !mu.atoms().is_empty() || mu.density().is_none() {
        return Err(Error::InvalidParameter("needs a measure given by a density alone".into()));
    }
    let gb_w: Vec<f64> = {
        let d = mu.density().expect("density");
        let c: Vec<Complex64> = d.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        crate::grid::resample(&c, m).into_iter().map(|z| z.re.max(0.0)).collect()
    };
    let t = CauchyTransform::new(mu);
    let tp1 = t.density_boundary_projection(Side::Inner, m);
    // P₋ on grid values: circulant with symbol 1 on k < 0, ½ at Nyquist
    let kernel: Vec<Complex64> = {
        let mut sym = vec![ZERO; m];
        for k in (m / 2 + 1)..m {
            sym[k] = ONE;
        }
        sym[m / 2] = Complex64::new(0.5, 0.0);
        crate::grid::synthesize(&sym).into_iter().map(|z| z / m as f64).collect()
    };
    let a = CMatrix::from_fn(m, m, |i, j| {
        let th = 1.0 - ONE / tp1[i];
        (1.0 - th.conj()) * kernel[(i + m - j) % m] * gb_w[j].sqrt()
    });
    Ok(operator_norm(&a))
}

/// `v_γ = |B_γ|²` at points of the circle.
pub fn v_gamma(mu: &CircleMeasure, gamma: Complex64, points: &[Complex64], cfg: &RadialLimitConfig) -> Result<Vec<f64>> {
    check_gamma(gamma)?;
    mu.require_probability()?;
    points
        .iter()
        .map(|&z| {
            let th0 = if mu.is_atomic() { theta0_atomic_on_circle(mu, z) } else { theta0_boundary(mu, z, cfg)? };
            let d0 = if mu.is_atomic() { 0.0 } else { (1.0 - th0.norm_sqr()).max(0.0).sqrt() };
            let (_, b) = symbols(th0, d0, gamma);
            Ok(b[0].norm_sqr() + b[1].norm_sqr())
        })
        .collect()
}

/// One row of a norm sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSweepRow {
    pub r: f64,
    pub norm: f64,
}

/// The radii of the standard sweep.
pub const SWEEP_RADII: [f64; 8] = [0.5, 0.7, 0.9, 0.99, 1.01, 1.1, 1.5, 2.0];

/// `‖T_r‖_{L²(μ) → L²(v_γ)}` for each radius, with the target weight sampled
/// on `m` points offset by half a step from the standard grid.
pub fn norm_sweep(
    mu: &CircleMeasure,
    gamma: Complex64,
    radii: &[f64],
    m: usize,
    cfg: &RadialLimitConfig,
) -> Result<Vec<NormSweepRow>> {
    let pts = crate::model::offset_points(m);
    let v = v_gamma(mu, gamma, &pts, cfg)?;
    let atoms: Vec<Atom> = pts
        .iter()
        .zip(&v)
        .filter(|(_, &vj)| vj > 0.0)
        .map(|(z, &vj)| Atom { angle: z.arg(), mass: vj / m as f64 })
        .collect();
    let target = CircleMeasure::new(atoms, None)?;
    radii
        .par_iter()
        .map(|&r| {
            let op = crate::cauchy::discretize_tr(mu, &target, r)?;
            Ok(NormSweepRow { r, norm: op.norm() })
        })
        .collect()
}
