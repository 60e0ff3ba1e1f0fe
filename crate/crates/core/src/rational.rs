//! Finite Blaschke products `θ(z) = c Π (z − a_k)/(1 − ā_k z)`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{poly_eval, poly_from_roots, poly_mul, poly_scale};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// A rational inner function given by its zeros and a unimodular constant,
/// with the numerator/denominator polynomials cached.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalInner {
    zeros: Vec<Complex64>,
    constant: Complex64,
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

/// Points used to validate innerness.
pub const TEST_GRID: usize = 256;

impl RationalInner {
    pub fn new(zeros: Vec<Complex64>, constant: Complex64) -> Result<Self> {
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::InvalidParameter(format!("zero {a} is not inside the disc")));
        }
        if (constant.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("constant {constant} is not unimodular")));
        }
        let num = poly_scale(&poly_from_roots(&zeros), constant);
        let den = zeros
            .iter()
            .fold(vec![ONE], |p, a| poly_mul(&p, &[ONE, -a.conj()]));
        let th = Self { zeros, constant, num, den };
        // the expanded polynomials lose accuracy for clustered zeros, so only
        // the factored form is required to be inner; see `self_check`
        let (inner_dev, _) = th.self_check();
        if inner_dev > 1e-9 {
            return Err(Error::Conditioning(format!("Blaschke product is not inner (deviation {inner_dev:e})")));
        }
        Ok(th)
    }

    /// `θ(z) = z^n`.
    pub fn monomial(n: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); n], ONE).expect("monomial")
    }

    /// Single Möbius factor `(z − a)/(1 − āz)`.
    pub fn mobius(a: Complex64) -> Result<Self> {
        Self::new(vec![a], ONE)
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn numerator(&self) -> &[Complex64] {
        &self.num
    }

    pub fn denominator(&self) -> &[Complex64] {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// `θ(z)` from the Blaschke factors.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.constant, |p, a| p * (z - a) / (1.0 - a.conj() * z))
    }

    /// `θ(z)` from the cached polynomial quotient.
    pub fn eval_polynomial(&self, z: Complex64) -> Complex64 {
        poly_eval(&self.num, z) / poly_eval(&self.den, z)
    }

    /// Blaschke product without the constant, over the first `k` zeros.
    pub fn partial_product(&self, k: usize, z: Complex64) -> Complex64 {
        self.zeros[..k]
            .iter()
            .fold(ONE, |p, a| p * (z - a) / (1.0 - a.conj() * z))
    }

    /// `θ′(z)`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        // θ'/θ = Σ (1 − |a|²)/((z − a)(1 − āz)); written without dividing by θ
        let n = self.zeros.len();
        let mut total = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let a = self.zeros[k];
            let mut p = self.constant * (1.0 - a.norm_sqr()) / ((1.0 - a.conj() * z) * (1.0 - a.conj() * z));
            for (j, b) in self.zeros.iter().enumerate() {
                if j != k {
                    p *= (z - b) / (1.0 - b.conj() * z);
                }
            }
            total += p;
        }
        total
    }

    /// `|θ′(e^{it})| = Σ (1 − |a_k|²)/|e^{it} − a_k|²`, the derivative of the
    /// boundary phase.
    pub fn phase_derivative(&self, t: f64) -> f64 {
        let z = Complex64::from_polar(1.0, t);
        self.zeros.iter().map(|a| (1.0 - a.norm_sqr()) / (z - a).norm_sqr()).sum()
    }

    /// Continuous, strictly increasing boundary phase
    /// `Ψ(t) = arg c + n t − 2 Σ arg(1 − ā_k e^{it})`, with
    /// `θ(e^{it}) = e^{iΨ(t)}` and `Ψ(t + 2π) = Ψ(t) + 2πn`.
    pub fn phase(&self, t: f64) -> f64 {
        let z = Complex64::from_polar(1.0, t);
        self.constant.arg() + self.zeros.len() as f64 * t
            - 2.0 * self.zeros.iter().map(|a| (1.0 - a.conj() * z).arg()).sum::<f64>()
    }

    /// Largest deviation of `|θ|` from one and between the two evaluation
    /// forms on the test grid.
    pub fn self_check(&self) -> (f64, f64) {
        let mut inner: f64 = 0.0;
        let mut form: f64 = 0.0;
        for j in 0..TEST_GRID {
            let z = Complex64::from_polar(1.0, TAU * (j as f64 + 0.5) / TEST_GRID as f64);
            let b = self.eval(z);
            inner = inner.max((b.norm() - 1.0).abs());
            form = form.max((b - self.eval_polynomial(z)).norm());
        }
        (inner, form)
    }

    /// All `t ∈ [0, 2π)` with `θ(e^{it}) = α`, increasing, found by
    /// safeguarded Newton iteration on the monotone boundary phase.
    pub fn unimodular_solutions(&self, alpha: Complex64) -> Result<Vec<f64>> {
        let n = self.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        let p0 = self.phase(0.0);
        let phi = alpha.arg();
        // smallest target phi + 2πm that is ≥ Ψ(0)
        let m0 = ((p0 - phi) / TAU).ceil();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let target = phi + TAU * (m0 + i as f64);
            out.push(self.solve_phase(target)?);
        }
        Ok(out)
    }

    fn solve_phase(&self, target: f64) -> Result<f64> {
        let g = |t: f64| self.phase(t) - target;
        let (mut lo, mut hi) = (0.0, TAU);
        if g(lo) >= 0.0 {
            return Ok(0.0);
        }
        let mut t = 0.5 * (lo + hi);
        for _ in 0..400 {
            let v = g(t);
            if v == 0.0 {
                return Ok(t);
            }
            if v < 0.0 {
                lo = t;
            } else {
                hi = t;
            }
            let d = self.phase_derivative(t);
            let newton = t - v / d;
            let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if (next - t).abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0) || hi - lo <= 1e-15 {
                return Ok(next);
            }
            t = next;
        }
        Err(Error::RootFinding(g(t).abs()))
    }
}
