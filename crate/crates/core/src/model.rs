//! The model space `K_θ = H² ⊖ θH²` of a finite Blaschke product, with the
//! Takenaka–Malmquist orthonormal basis
//!
//! ```text
//! φ_k(z) = √(1 − |a_k|²)/(1 − ā_k z) · Π_{j<k} (z − a_j)/(1 − ā_j z),
//! ```
//!
//! the compressed shift `M_θ = P_θ M_z`, the defect vectors `c`, `c₁`, and the
//! transcription `g ↦ (g₊, g₋) = (g, θ̄g)` into pairs of boundary functions.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{grid_points, CircleFunctionGrid};
use crate::linalg::{singular_values, CMatrix, CVector};
use crate::rational::RationalInner;

/// Largest admissible Gram deviation.
pub const GRAM_TOL: f64 = 1e-9;
/// Largest uniform grid chosen automatically; beyond it the rule is graded.
pub const MAX_UNIFORM: usize = 1 << 13;

const GL_ORDER: usize = 20;
const BASE_PANELS: usize = 64;
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Value of the Takenaka–Malmquist functions `φ_1..φ_n` at `z`.
pub fn tm_values(zeros: &[Complex64], z: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(zeros.len());
    let mut prefix = ONE;
    for a in zeros {
        let d = 1.0 - a.conj() * z;
        out.push(prefix * (1.0 - a.norm_sqr()).sqrt() / d);
        prefix *= (z - a) / d;
    }
    out
}

fn uniform_size(points: &[Complex64], n: usize) -> usize {
    let rmax = points.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let need = if rmax > 0.0 { (40.0 / -rmax.ln()).ceil() as usize } else { 0 };
    need.max(1024).max(32 * n).next_power_of_two()
}

/// Smallest power of two `N ≥ max(1024, 32n)` for which the trapezoid rule
/// integrates products of basis functions to near machine precision.
pub fn default_quad_size(theta: &RationalInner) -> usize {
    uniform_size(theta.zeros(), theta.degree())
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` (Golub–Welsch).
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let j = nalgebra::DMatrix::from_fn(n, n, |r, c| {
        let k = r.max(c) as f64;
        if r.abs_diff(c) == 1 {
            k / (4.0 * k * k - 1.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = j.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], 2.0 * eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Nodes and weights for `∫_𝕋 f dm`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    points: Vec<Complex64>,
    weights: Vec<f64>,
    uniform: bool,
}

impl Quadrature {
    /// Trapezoid rule on the `n`-point grid.
    pub fn uniform(n: usize) -> Self {
        Self { points: grid_points(n), weights: vec![1.0 / n as f64; n], uniform: true }
    }

    /// Composite Gauss–Legendre rule in the angle, with panels halving in
    /// width toward the angle of every critical point close to the circle.
    pub fn graded(critical: &[Complex64]) -> Self {
        let (x, w) = gauss_legendre(GL_ORDER);
        let h0 = TAU / BASE_PANELS as f64;
        let mut breaks: Vec<f64> = (0..BASE_PANELS).map(|k| k as f64 * h0).collect();
        for a in critical {
            let d = 1.0 - a.norm();
            if d >= 0.5 * h0 {
                continue;
            }
            let phi = a.arg();
            breaks.push(phi.rem_euclid(TAU));
            let mut s = d;
            while s < h0 {
                breaks.push((phi + s).rem_euclid(TAU));
                breaks.push((phi - s).rem_euclid(TAU));
                s *= 2.0;
            }
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        let mut points = Vec::with_capacity(breaks.len() * GL_ORDER);
        let mut weights = Vec::with_capacity(breaks.len() * GL_ORDER);
        for (k, &l) in breaks.iter().enumerate() {
            let r = breaks.get(k + 1).copied().unwrap_or(TAU);
            if r - l < 1e-14 {
                continue;
            }
            let half = 0.5 * (r - l);
            for (xi, wi) in x.iter().zip(&w) {
                points.push(Complex64::from_polar(1.0, l + half * (xi + 1.0)));
                weights.push(half * wi / TAU);
            }
        }
        Self { points, weights, uniform: false }
    }

    /// Uniform when a grid of at most [`MAX_UNIFORM`] points suffices for
    /// the given critical points and dimension, graded otherwise.
    pub fn for_points(critical: &[Complex64], n: usize) -> Self {
        let size = uniform_size(critical, n);
        if size <= MAX_UNIFORM {
            Self::uniform(size)
        } else {
            Self::graded(critical)
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    /// `∫ f dm` by the rule.
    pub fn integrate(&self, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
        self.points.iter().zip(&self.weights).map(|(&z, &w)| w * f(z)).sum()
    }
}

#[derive(Debug, Clone)]
pub struct ModelSpace {
    theta: RationalInner,
    quad: Quadrature,
    /// `values[(j, k)] = φ_k(z_j)` at the quadrature nodes.
    values: CMatrix,
    compression: CMatrix,
    gram_deviation: f64,
}

impl ModelSpace {
    /// Build with the uniform rule of the given size.
    pub fn build(theta: &RationalInner, quad_size: usize) -> Result<Self> {
        let n = theta.degree();
        if !quad_size.is_power_of_two() || quad_size < 1024.max(32 * n) {
            return Err(Error::InvalidParameter(format!(
                "quadrature size {quad_size} must be a power of two ≥ max(1024, 32n)"
            )));
        }
        Self::with_quadrature(theta, Quadrature::uniform(quad_size))
    }

    /// Build with an arbitrary rule; fails if the basis is not orthonormal
    /// under it to [`GRAM_TOL`].
    pub fn with_quadrature(theta: &RationalInner, quad: Quadrature) -> Result<Self> {
        let n = theta.degree();
        if n == 0 {
            return Err(Error::InvalidParameter("θ must have degree ≥ 1".into()));
        }
        let zeros = theta.zeros();
        let m = quad.len();
        let mut values = CMatrix::zeros(m, n);
        for (j, z) in quad.points.iter().enumerate() {
            for (k, v) in tm_values(zeros, *z).into_iter().enumerate() {
                values[(j, k)] = v;
            }
        }
        let mut weighted = values.clone();
        let mut zv = values.clone();
        for j in 0..m {
            let w = quad.weights[j];
            let z = quad.points[j];
            for k in 0..n {
                weighted[(j, k)] *= w;
                zv[(j, k)] *= z;
            }
        }
        let gram = weighted.adjoint() * &values;
        let gram_deviation = (&gram - CMatrix::identity(n, n)).norm();
        if gram_deviation > GRAM_TOL {
            return Err(Error::Quadrature(gram_deviation));
        }
        // compression[(i, j)] = ⟨z φ_j, φ_i⟩
        let compression = weighted.adjoint() * zv;
        Ok(Self { theta: theta.clone(), quad, values, compression, gram_deviation })
    }

    /// Build with a rule adapted to the zeros of `θ`.
    pub fn new(theta: &RationalInner) -> Result<Self> {
        Self::with_critical_points(theta, &[])
    }

    /// Build with a rule adapted to the zeros of `θ` and to further points
    /// near which integrands will be sharply peaked.
    pub fn with_critical_points(theta: &RationalInner, extra: &[Complex64]) -> Result<Self> {
        let mut pts = theta.zeros().to_vec();
        pts.extend_from_slice(extra);
        Self::with_quadrature(theta, Quadrature::for_points(&pts, theta.degree()))
    }

    pub fn theta(&self) -> &RationalInner {
        &self.theta
    }

    pub fn dim(&self) -> usize {
        self.theta.degree()
    }

    /// Number of quadrature nodes.
    pub fn quad_size(&self) -> usize {
        self.quad.len()
    }

    pub fn quadrature(&self) -> &Quadrature {
        &self.quad
    }

    pub fn gram_deviation(&self) -> f64 {
        self.gram_deviation
    }

    /// Matrix of `M_θ` in the basis.
    pub fn compression(&self) -> &CMatrix {
        &self.compression
    }

    /// Basis values at the quadrature nodes (rows: points, columns: φ_k).
    pub fn basis_values(&self) -> &CMatrix {
        &self.values
    }

    pub fn basis_at(&self, z: Complex64) -> Vec<Complex64> {
        tm_values(self.theta.zeros(), z)
    }

    /// `Σ c_k φ_k(z)`.
    pub fn eval(&self, coeffs: &CVector, z: Complex64) -> Complex64 {
        self.basis_at(z).iter().zip(coeffs.iter()).map(|(p, c)| p * c).sum()
    }

    /// Samples of `Σ c_k φ_k` on the `m`-point grid.
    pub fn synthesize(&self, coeffs: &CVector, m: usize) -> Vec<Complex64> {
        if self.quad.uniform && m == self.quad.len() {
            return (&self.values * coeffs).iter().cloned().collect();
        }
        grid_points(m).into_iter().map(|z| self.eval(coeffs, z)).collect()
    }

    /// Coefficients `⟨f, φ_k⟩` of a function given pointwise, by quadrature.
    pub fn project_fn(&self, f: impl Fn(Complex64) -> Complex64) -> CVector {
        let samples = CMatrix::from_iterator(self.quad.len(), 1, self.quad.points.iter().map(|&z| f(z)));
        self.project_samples(&samples).column(0).into_owned()
    }

    /// Coefficients of several functions sampled at the quadrature nodes
    /// (one function per column).
    pub fn project_samples(&self, samples: &CMatrix) -> CMatrix {
        let mut weighted = samples.clone();
        for (j, &w) in self.quad.weights.iter().enumerate() {
            weighted.row_mut(j).scale_mut(w);
        }
        self.values.adjoint() * weighted
    }

    /// Coefficients `⟨f, φ_k⟩` of grid samples, with the residual
    /// `‖f − Σ⟨f, φ_k⟩φ_k‖` (zero iff `f ∈ K_θ`).
    pub fn project(&self, f: &CircleFunctionGrid) -> (CVector, f64) {
        let m = f.len();
        let s = f.samples();
        let coeffs = if self.quad.uniform && m == self.quad.len() {
            self.values.adjoint() * CVector::from_column_slice(s) / Complex64::new(m as f64, 0.0)
        } else {
            let mut c = CVector::zeros(self.dim());
            for (j, z) in grid_points(m).into_iter().enumerate() {
                for (k, p) in self.basis_at(z).into_iter().enumerate() {
                    c[k] += s[j] * p.conj();
                }
            }
            c / Complex64::new(m as f64, 0.0)
        };
        let recon = self.synthesize(&coeffs, m);
        let res = (s.iter().zip(&recon).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>() / m as f64).sqrt();
        (coeffs, res)
    }

    /// Singular values of `I − M*M` and `I − MM*` (each should have rank one).
    pub fn defect_singular_values(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim();
        let i = CMatrix::identity(n, n);
        let m = &self.compression;
        (singular_values(&(&i - m.adjoint() * m)), singular_values(&(&i - m * m.adjoint())))
    }

    /// `K_{zθ} = K_θ ⊕ ℂθ`, whose basis starts with the basis of `K_θ`.
    pub fn extended(&self) -> Result<Self> {
        let mut zeros = self.theta.zeros().to_vec();
        zeros.push(ZERO);
        let th = RationalInner::new(zeros, self.theta.constant())?;
        let quad = if self.quad.uniform && self.quad.len() < 32 * th.degree() {
            Quadrature::uniform((32 * th.degree()).next_power_of_two())
        } else {
            self.quad.clone()
        };
        Self::with_quadrature(&th, quad)
    }

    /// Matrix of `M_z : K_θ → K_{zθ}` in the bases of `self` and `ext`.
    pub fn shift_into(&self, ext: &ModelSpace) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(ext.dim(), n);
        for j in 0..n {
            let col = ext.project_fn(|z| z * tm_values(self.theta.zeros(), z)[j]);
            out.set_column(j, &col);
        }
        out
    }

    pub fn defect_vectors(&self) -> DefectVectors {
        let th0 = self.theta.eval(ZERO);
        let s = (1.0 - th0.norm_sqr()).sqrt();
        // c is the normalized reproducing kernel at 0: ⟨k₀, φ_k⟩ = conj φ_k(0)
        let c = CVector::from_iterator(self.dim(), self.basis_at(ZERO).into_iter().map(|p| p.conj() / s));
        let th = self.theta.clone();
        let c1 = self.project_fn(|z| (th.eval(z) - th0) / (z * s));
        DefectVectors { c, c1, theta_at_zero: th0 }
    }
}

/// Unit vectors spanning the defect ranges of `M_θ`: `c` for `I − MM*`,
/// `c₁` for `I − M*M`; `c₂(z) = z c₁(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectVectors {
    pub c: CVector,
    pub c1: CVector,
    pub theta_at_zero: Complex64,
}

impl DefectVectors {
    /// `c₂ = z c₁` as coefficients in the basis of `K_{zθ}`.
    pub fn c2_in(&self, ms: &ModelSpace, ext: &ModelSpace) -> CVector {
        ms.shift_into(ext) * &self.c1
    }

    /// `‖M c₁ + θ(0) c‖`.
    pub fn mc1_residual(&self, ms: &ModelSpace) -> f64 {
        (ms.compression() * &self.c1 + &self.c * self.theta_at_zero).norm()
    }

    /// Distance of `c` from `ran(I − MM*)` and of `c₁` from `ran(I − M*M)`.
    pub fn range_residuals(&self, ms: &ModelSpace) -> (f64, f64) {
        let n = ms.dim();
        let i = CMatrix::identity(n, n);
        let m = ms.compression();
        let dstar = &i - m * m.adjoint();
        let d = &i - m.adjoint() * m;
        (range_distance(&dstar, &self.c), range_distance(&d, &self.c1))
    }
}

/// Distance from `v` to the span of the top singular vector of `a`.
fn range_distance(a: &CMatrix, v: &CVector) -> f64 {
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors");
    let mut best = 0;
    for k in 0..svd.singular_values.len() {
        if svd.singular_values[k] > svd.singular_values[best] {
            best = k;
        }
    }
    let e = u.column(best).into_owned();
    let proj = &e * e.dotc(v);
    (v - proj).norm()
}

/// Result of the de Branges transcription of a model-space element.
#[derive(Debug, Clone)]
pub struct DeBranges {
    pub g_plus: CircleFunctionGrid,
    pub g_minus: CircleFunctionGrid,
    /// Relative negative-frequency content of `g₊` (zero when analytic).
    pub analytic_defect: f64,
    /// Relative non-negative-frequency content of `g₋` (zero when in `H²₋`).
    pub antianalytic_defect: f64,
    /// `|‖(g₁, g₂)‖ − ‖(g₊, g₋)‖_{W^{[−1]}}|`.
    pub norm_mismatch: f64,
}

/// Quadratic form `⟨W_θ^{[−1]} x, x⟩` with `W_θ = [[1, θ], [θ̄, 1]]`, using the
/// eigen-decomposition `1 ± |θ|`, `(1, ±θ̄/|θ|)/√2`.
pub fn weighted_norm_sqr(theta: Complex64, x: [Complex64; 2]) -> f64 {
    let r = theta.norm();
    if r == 0.0 {
        return x[0].norm_sqr() + x[1].norm_sqr();
    }
    let u = theta / r;
    let mut s = 0.0;
    for (lam, sign) in [(1.0 + r, 1.0), (1.0 - r, -1.0)] {
        if lam > 1e-10 {
            let p = (x[0] + x[1] * u * sign) / 2f64.sqrt();
            s += p.norm_sqr() / lam;
        }
    }
    s
}

/// Transcription of `Σ c_k φ_k ∈ K_θ` on an `m`-point grid: `g₋ = θ̄ g₊`.
pub fn to_debranges(ms: &ModelSpace, coeffs: &CVector, m: usize) -> Result<DeBranges> {
    let gp = ms.synthesize(coeffs, m);
    let theta: Vec<Complex64> = grid_points(m).into_iter().map(|z| ms.theta().eval(z)).collect();
    let zero = vec![ZERO; m];
    let mut out = debranges_grid(&theta, &gp, &zero)?;
    out.norm_mismatch = (coeffs.norm() - weighted_norm(&theta, &out).sqrt()).abs();
    Ok(out)
}

fn weighted_norm(theta: &[Complex64], d: &DeBranges) -> f64 {
    let m = theta.len();
    theta
        .iter()
        .zip(d.g_plus.samples().iter().zip(d.g_minus.samples()))
        .map(|(t, (p, q))| weighted_norm_sqr(*t, [*p, *q]))
        .sum::<f64>()
        / m as f64
}

/// Transcription of a Sz.-Nagy–Foiaș pair `(g₁, g₂)` sampled on a grid
/// together with boundary values of `θ`: `g₊ = g₁`, `g₋ = θ̄g₁ + Δg₂`.
pub fn debranges_grid(theta: &[Complex64], g1: &[Complex64], g2: &[Complex64]) -> Result<DeBranges> {
    let m = theta.len();
    let gm: Vec<Complex64> = (0..m)
        .map(|j| {
            let delta = (1.0 - theta[j].norm_sqr()).max(0.0).sqrt();
            theta[j].conj() * g1[j] + delta * g2[j]
        })
        .collect();
    let g_plus = CircleFunctionGrid::new(g1.to_vec())?;
    let g_minus = CircleFunctionGrid::new(gm)?;
    let lhs = (g1.iter().chain(g2).map(|z| z.norm_sqr()).sum::<f64>() / m as f64).sqrt();
    let mut out = DeBranges {
        analytic_defect: g_plus.negative_content(),
        antianalytic_defect: g_minus.nonnegative_content(),
        g_plus,
        g_minus,
        norm_mismatch: 0.0,
    };
    out.norm_mismatch = (lhs - weighted_norm(theta, &out).sqrt()).abs();
    Ok(out)
}

/// Angle grid helper used by callers that need `e^{2πi(j+½)/m}`.
pub fn offset_points(m: usize) -> Vec<Complex64> {
    (0..m).map(|j| Complex64::from_polar(1.0, TAU * (j as f64 + 0.5) / m as f64)).collect()
}
