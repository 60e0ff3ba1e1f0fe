//! The rank-one family `U_γ = U + (γ − 1) b b₁*` on `L²(μ)` for atomic `μ`,
//! written in the orthonormal basis `e_k = 1_{ξ_k}/√m_k`. There `U` is
//! `diag(ξ_k)`, `b = (√m_k)` and `b₁ = U*b = (√m_k ξ̄_k)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, normal_eigen, psd_sqrt, singular_values, CMatrix, CVector};
use crate::measure::{Atom, CircleMeasure};

/// Simple-spectrum threshold for unitary members.
pub const EIGEN_GAP: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct PerturbationMatrix {
    pub mu: CircleMeasure,
    pub gamma: Complex64,
    pub matrix: CMatrix,
}

/// `b = (√m_k)`.
pub fn vector_b(mu: &CircleMeasure) -> CVector {
    CVector::from_iterator(mu.len(), mu.atoms().iter().map(|a| Complex64::new(a.mass.sqrt(), 0.0)))
}

/// `b₁ = (√m_k ξ̄_k)`.
pub fn vector_b1(mu: &CircleMeasure) -> CVector {
    CVector::from_iterator(mu.len(), mu.atoms().iter().map(|a| Complex64::from_polar(a.mass.sqrt(), -a.angle)))
}

/// `U_γ` with entries `ξ_k δ_jk + (γ − 1)√(m_j m_k) ξ_k`.
pub fn build_u_gamma(mu: &CircleMeasure, gamma: Complex64) -> Result<PerturbationMatrix> {
    mu.require_atomic()?;
    if mu.is_empty() {
        return Err(Error::InvalidMeasure("no atoms".into()));
    }
    if gamma.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!("|γ| = {} exceeds 1", gamma.norm())));
    }
    let atoms = mu.atoms();
    let n = atoms.len();
    let g1 = gamma - 1.0;
    let matrix = CMatrix::from_fn(n, n, |j, k| {
        let xi = atoms[k].point();
        let diag = if j == k { xi } else { Complex64::new(0.0, 0.0) };
        diag + g1 * (atoms[j].mass * atoms[k].mass).sqrt() * xi
    });
    Ok(PerturbationMatrix { mu: mu.clone(), gamma, matrix })
}

impl PerturbationMatrix {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn b(&self) -> CVector {
        vector_b(&self.mu)
    }

    pub fn b1(&self) -> CVector {
        vector_b1(&self.mu)
    }

    /// `(D, D_*) = ((I − U*U)^{1/2}, (I − UU*)^{1/2})`.
    pub fn defect_operators(&self) -> (CMatrix, CMatrix) {
        let n = self.n();
        let i = CMatrix::identity(n, n);
        let u = &self.matrix;
        (psd_sqrt(&(&i - u.adjoint() * u)), psd_sqrt(&(&i - u * u.adjoint())))
    }

    /// Rank-one closed forms `((1 − |γ|²)^{1/2} b₁b₁*, (1 − |γ|²)^{1/2} bb*)`.
    pub fn defect_closed_form(&self) -> (CMatrix, CMatrix) {
        let s = Complex64::new((1.0 - self.gamma.norm_sqr()).max(0.0).sqrt(), 0.0);
        let b = self.b();
        let b1 = self.b1();
        (&b1 * b1.adjoint() * s, &b * b.adjoint() * s)
    }

    /// `σ_min` of the Krylov matrix `[b, Ub, …, U^{n−1}b]`.
    pub fn krylov_min_singular_value(&self) -> f64 {
        let n = self.n();
        let mut k = CMatrix::zeros(n, n);
        let mut v = self.b();
        for j in 0..n {
            k.set_column(j, &v);
            v = &self.matrix * v;
        }
        singular_values(&k).last().copied().unwrap_or(0.0)
    }

    /// Largest eigenvalue modulus (below one for a completely non-unitary member).
    pub fn spectral_radius(&self) -> Result<f64> {
        Ok(eigenvalues(&self.matrix)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }

    /// Spectral measure of a unitary member with respect to `b`: atoms at the
    /// eigenvalues, masses `|⟨b, φ_k⟩|²`.
    pub fn spectral_measure(&self) -> Result<CircleMeasure> {
        if (self.gamma.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter("spectral measure needs |γ| = 1".into()));
        }
        let (vals, vecs, _) = normal_eigen(&self.matrix)?;
        let n = vals.len();
        let mut angles: Vec<f64> = vals.iter().map(|z| z.arg()).collect();
        let mut gap = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                gap = gap.min((vals[i] - vals[j]).norm());
            }
        }
        if gap < EIGEN_GAP {
            return Err(Error::NonCyclic(gap));
        }
        let b = self.b();
        let masses: Vec<f64> = (0..n).map(|k| vecs.column(k).dotc(&b).norm_sqr()).collect();
        let atoms = angles
            .drain(..)
            .zip(masses)
            .map(|(angle, mass)| Atom { angle, mass })
            .collect();
        CircleMeasure::new(atoms, None)
    }
}

/// One row of a spectral flow: eigenvalue angles and masses of `U_α`,
/// sorted by angle.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowRow {
    pub alpha_angle: f64,
    pub angles: Vec<f64>,
    pub masses: Vec<f64>,
}

/// Spectral measures of `U_α` for `α = e^{2πij/k}`, `j = 0..k`.
pub fn spectral_flow(mu: &CircleMeasure, k: usize) -> Result<Vec<FlowRow>> {
    (0..k)
        .into_par_iter()
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / k as f64;
            let s = build_u_gamma(mu, Complex64::from_polar(1.0, t))?.spectral_measure()?;
            Ok(FlowRow { alpha_angle: t, angles: s.angles(), masses: s.masses() })
        })
        .collect()
}

/// The characteristic function of a contraction `T` with one-dimensional
/// defects, `θ_T(z) = ⟨(−T + z D_{T*}(I − zT*)^{-1} D_T) e, e_*⟩`, where `e`
/// spans `ran D_T` and `e_*` spans `ran D_{T*}`.
pub fn characteristic_function_matrix(t: &CMatrix, e: &CVector, e_star: &CVector, z: Complex64) -> Result<Complex64> {
    let n = t.nrows();
    let i = CMatrix::identity(n, n);
    let d = psd_sqrt(&(&i - t.adjoint() * t));
    let ds = psd_sqrt(&(&i - t * t.adjoint()));
    let resolvent = (&i - t.adjoint() * z)
        .lu()
        .solve(&(&d * e))
        .ok_or_else(|| Error::Conditioning("I − zT* is singular".into()))?;
    let v = -(t * e) + (&ds * resolvent) * z;
    Ok(e_star.dotc(&v))
}
