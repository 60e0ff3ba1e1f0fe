//! Dense complex linear algebra and polynomial helpers.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// A matrix between two declared orthonormal bases.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub matrix: CMatrix,
    pub source_basis: String,
    pub target_basis: String,
}

impl OperatorMatrix {
    pub fn new(matrix: CMatrix, source: impl Into<String>, target: impl Into<String>) -> Self {
        Self { matrix, source_basis: source.into(), target_basis: target.into() }
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn norm(&self) -> f64 {
        operator_norm(&self.matrix)
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.matrix.adjoint(), self.target_basis.clone(), self.source_basis.clone())
    }
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    singular_values(m).iter().cloned().fold(0.0, f64::max)
}

/// Singular values in decreasing order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().cloned().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Smallest singular value of `m` viewed as an operator on its domain:
/// zero when `m` has more columns than rows.
pub fn min_singular_value(m: &CMatrix) -> f64 {
    if m.ncols() > m.nrows() {
        return 0.0;
    }
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// `‖A*A − I‖_F`.
pub fn isometry_residual(a: &CMatrix) -> f64 {
    (a.adjoint() * a - CMatrix::identity(a.ncols(), a.ncols())).norm()
}

/// `max(‖A*A − I‖_F, ‖AA* − I‖_F)`.
pub fn unitarity_residual(a: &CMatrix) -> f64 {
    isometry_residual(a).max(isometry_residual(&a.adjoint()))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below `1e-12 · max(1, λ_max)` are treated as zero.
pub fn psd_sqrt(h: &CMatrix) -> CMatrix {
    let herm = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let e = herm.symmetric_eigen();
    let lmax = e.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let cut = 1e-12 * lmax.max(1.0);
    let d = e.eigenvalues.map(|l| Complex64::new(if l > cut { l.sqrt() } else { 0.0 }, 0.0));
    &e.eigenvectors * CMatrix::from_diagonal(&d) * e.eigenvectors.adjoint()
}

/// Eigen-decomposition of a normal matrix from its complex Schur form:
/// returns eigenvalues and orthonormal eigenvectors (columns), plus the
/// size of the strictly upper part of the triangular factor (zero for an
/// exactly normal input).
pub fn normal_eigen(m: &CMatrix) -> Result<(Vec<Complex64>, CMatrix, f64)> {
    let n = m.nrows();
    let schur = Schur::try_new(m.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::Conditioning("Schur iteration did not converge".into()))?;
    let (q, t) = schur.unpack();
    let vals: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    let mut off = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            off += t[(i, j)].norm_sqr();
        }
    }
    Ok((vals, q, off.sqrt()))
}

/// Eigenvalues of a general complex square matrix.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let schur = Schur::try_new(m.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::Conditioning("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Polynomial with coefficients in ascending order.
pub fn poly_eval(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(ZERO, |acc, ck| acc * z + ck)
}

pub fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

pub fn poly_scale(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
    a.iter().map(|x| x * s).collect()
}

/// `Π (z − r_k)` in ascending coefficients.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    roots.iter().fold(vec![ONE], |p, r| poly_mul(&p, &[-r, ONE]))
}

/// Roots of a polynomial (ascending coefficients) as eigenvalues of the
/// companion matrix. Leading coefficients below `1e-14 · max|c|` are
/// dropped.
pub fn poly_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let scale = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::RootFinding(0.0));
    }
    let mut deg = c.len() - 1;
    while deg > 0 && c[deg].norm() <= 1e-14 * scale {
        deg -= 1;
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = c[deg];
    let mut comp = CMatrix::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = ONE;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i] / lead;
    }
    eigenvalues(&comp)
}
