//! Measures on the unit circle: finitely many atoms plus an optional density
//! sampled on a uniform grid.
//!
//! Fourier coefficients follow the convention `μ̂(k) = ∫ ξ̄^k dμ(ξ)`, so that
//! `R₁μ(z) = Σ_{k≥1} μ̂(k) z^k` inside the disc.

use std::f64::consts::TAU;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimal circular distance between two atoms of one measure.
pub const ATOM_SEPARATION: f64 = 1e-12;
/// Tolerance on `μ(𝕋) = 1`.
pub const MASS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub angle: f64,
    pub mass: f64,
}

impl Atom {
    pub fn point(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }
}

/// Circular distance between two angles, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Reduce an angle to `[0, 2π)`.
pub fn reduce_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Angle of the `j`-th point of the uniform `n`-point grid.
pub fn grid_angle(j: usize, n: usize) -> f64 {
    TAU * j as f64 / n as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleMeasure {
    atoms: Vec<Atom>,
    density: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct DensityJson {
    n: usize,
    samples: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    atoms: Vec<Atom>,
    density: Option<DensityJson>,
}

impl CircleMeasure {
    /// Build a (not necessarily normalized) measure. Atoms are sorted by
    /// angle; angles are reduced to `[0, 2π)`.
    pub fn new(atoms: Vec<Atom>, density: Option<Vec<f64>>) -> Result<Self> {
        let mut atoms: Vec<Atom> = atoms
            .into_iter()
            .map(|a| Atom { angle: reduce_angle(a.angle), mass: a.mass })
            .collect();
        for a in &atoms {
            if !a.angle.is_finite() || !a.mass.is_finite() {
                return Err(Error::InvalidMeasure("non-finite atom".into()));
            }
            if a.mass <= 0.0 {
                return Err(Error::InvalidMeasure(format!("atom mass {} is not positive", a.mass)));
            }
        }
        atoms.sort_by(|a, b| a.angle.total_cmp(&b.angle));
        let n = atoms.len();
        for i in 0..n {
            for j in i + 1..n {
                if circular_distance(atoms[i].angle, atoms[j].angle) <= ATOM_SEPARATION {
                    return Err(Error::InvalidMeasure(format!(
                        "atoms at angles {} and {} are not separated",
                        atoms[i].angle, atoms[j].angle
                    )));
                }
            }
        }
        if let Some(s) = &density {
            if s.is_empty() {
                return Err(Error::InvalidMeasure("empty density grid".into()));
            }
            if s.iter().any(|w| !w.is_finite() || *w < 0.0) {
                return Err(Error::InvalidMeasure("density samples must be finite and nonnegative".into()));
            }
        }
        if atoms.is_empty() && density.is_none() {
            return Err(Error::InvalidMeasure("measure has neither atoms nor density".into()));
        }
        Ok(Self { atoms, density })
    }

    /// Build a measure and require total mass one.
    pub fn probability(atoms: Vec<Atom>, density: Option<Vec<f64>>) -> Result<Self> {
        let m = Self::new(atoms, density)?;
        m.require_probability()?;
        Ok(m)
    }

    /// Purely atomic measure from `(angle, mass)` pairs.
    pub fn atomic(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(angle, mass)| Atom { angle, mass }).collect(), None)
    }

    pub fn dirac(angle: f64) -> Self {
        Self::atomic(&[(angle, 1.0)]).expect("single atom")
    }

    /// Normalized Lebesgue measure sampled on `n` grid points.
    pub fn lebesgue(n: usize) -> Self {
        Self::new(Vec::new(), Some(vec![1.0; n])).expect("lebesgue")
    }

    /// Density `w(t)` sampled on `n` points, then normalized to mass one.
    pub fn from_density_fn(n: usize, w: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = (0..n).map(|j| w(grid_angle(j, n))).collect();
        Self::new(Vec::new(), Some(samples))?.normalize()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn density(&self) -> Option<&[f64]> {
        self.density.as_deref()
    }

    pub fn is_atomic(&self) -> bool {
        self.density.is_none()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.density.is_none()
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.atoms.iter().map(Atom::point).collect()
    }

    pub fn masses(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.mass).collect()
    }

    pub fn angles(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.angle).collect()
    }

    pub fn atomic_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    pub fn density_mass(&self) -> f64 {
        self.density
            .as_ref()
            .map(|s| s.iter().sum::<f64>() / s.len() as f64)
            .unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.atomic_mass() + self.density_mass()
    }

    pub fn is_probability(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= MASS_TOL
    }

    pub fn require_probability(&self) -> Result<()> {
        if self.is_probability() {
            Ok(())
        } else {
            Err(Error::NotProbability(self.total_mass()))
        }
    }

    pub fn require_atomic(&self) -> Result<()> {
        if self.is_atomic() {
            Ok(())
        } else {
            Err(Error::NotAtomic)
        }
    }

    /// Scale atoms and density uniformly to total mass one.
    pub fn normalize(&self) -> Result<Self> {
        let total = self.total_mass();
        if !(total > 0.0) {
            return Err(Error::InvalidMeasure("cannot normalize a measure of zero mass".into()));
        }
        let atoms = self.atoms.iter().map(|a| Atom { angle: a.angle, mass: a.mass / total }).collect();
        let density = self.density.as_ref().map(|s| s.iter().map(|w| w / total).collect());
        Self::new(atoms, density)
    }

    /// Same measure with the atom masses multiplied by `factors` (cyclically).
    pub fn rescale_atoms(&self, factors: &[f64]) -> Result<Self> {
        let atoms = self
            .atoms
            .iter()
            .enumerate()
            .map(|(k, a)| Atom { angle: a.angle, mass: a.mass * factors[k % factors.len()] })
            .collect();
        Self::new(atoms, self.density.clone())
    }

    /// Same measure without the atom at position `k`.
    pub fn remove_atom(&self, k: usize) -> Result<Self> {
        let mut atoms = self.atoms.clone();
        atoms.remove(k);
        Self::new(atoms, self.density.clone())
    }

    /// `μ̂(k) = ∫ ξ̄^k dμ(ξ)`; the density part uses the trapezoid rule.
    pub fn fourier_coefficient(&self, k: i64) -> Complex64 {
        let mut s: Complex64 = self
            .atoms
            .iter()
            .map(|a| Complex64::from_polar(a.mass, -(k as f64) * a.angle))
            .sum();
        if let Some(w) = &self.density {
            let n = w.len();
            let kk = k.rem_euclid(n as i64) as usize;
            let d: Complex64 = w
                .iter()
                .enumerate()
                .map(|(j, &wj)| Complex64::from_polar(wj, -TAU * ((kk * j) % n) as f64 / n as f64))
                .sum();
            s += d / n as f64;
        }
        s
    }

    /// `∫ log w dm` for the density part; `-∞` when the density vanishes
    /// somewhere on the grid or is absent.
    pub fn log_density_integral(&self) -> f64 {
        match &self.density {
            Some(w) => w.iter().map(|x| x.ln()).sum::<f64>() / w.len() as f64,
            None => f64::NEG_INFINITY,
        }
    }

    pub fn to_json(&self) -> String {
        let j = MeasureJson {
            atoms: self.atoms.clone(),
            density: self.density.as_ref().map(|s| DensityJson { n: s.len(), samples: s.clone() }),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.to_json()).expect("valid json")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: MeasureJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_parsed(j)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let j: MeasureJson = serde_json::from_value(v).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_parsed(j)
    }

    fn from_parsed(j: MeasureJson) -> Result<Self> {
        let density = match j.density {
            Some(d) => {
                if d.n != d.samples.len() {
                    return Err(Error::Json(format!(
                        "density.n = {} but {} samples given",
                        d.n,
                        d.samples.len()
                    )));
                }
                Some(d.samples)
            }
            None => None,
        };
        Self::new(j.atoms, density)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
        Self::from_json(&s)
    }
}

/// True iff every atom of `mu` is farther than `tol` from every atom of `nu`.
pub fn atoms_disjoint(mu: &CircleMeasure, nu: &CircleMeasure, tol: f64) -> bool {
    min_atom_distance(mu, nu) > tol
}

/// Smallest circular distance between an atom of `mu` and an atom of `nu`
/// (`+∞` if either has no atoms).
pub fn min_atom_distance(mu: &CircleMeasure, nu: &CircleMeasure) -> f64 {
    let mut d = f64::INFINITY;
    for a in mu.atoms() {
        for b in nu.atoms() {
            d = d.min(circular_distance(a.angle, b.angle));
        }
    }
    d
}

/// A function on the support of a measure: values at the atoms and at the
/// density grid points. This is the computable model of an element of `L²(μ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureFunction {
    pub at_atoms: Vec<Complex64>,
    pub on_grid: Vec<Complex64>,
}

impl MeasureFunction {
    pub fn from_fn(mu: &CircleMeasure, f: impl Fn(f64) -> Complex64) -> Self {
        let at_atoms = mu.atoms().iter().map(|a| f(a.angle)).collect();
        let on_grid = match mu.density() {
            Some(w) => (0..w.len()).map(|j| f(grid_angle(j, w.len()))).collect(),
            None => Vec::new(),
        };
        Self { at_atoms, on_grid }
    }

    pub fn ones(mu: &CircleMeasure) -> Self {
        Self::from_fn(mu, |_| Complex64::new(1.0, 0.0))
    }

    /// The function with orthonormal-basis coordinates `x` on an atomic
    /// measure: `f(ξ_k) = x_k / √m_k`.
    pub fn from_coordinates(mu: &CircleMeasure, x: &[Complex64]) -> Self {
        let at_atoms = mu.atoms().iter().zip(x).map(|(a, xk)| xk / a.mass.sqrt()).collect();
        Self { at_atoms, on_grid: Vec::new() }
    }

    /// Coordinates in the orthonormal atom basis `e_k = 1_{ξ_k}/√m_k`.
    pub fn coordinates(&self, mu: &CircleMeasure) -> Vec<Complex64> {
        mu.atoms().iter().zip(&self.at_atoms).map(|(a, f)| f * a.mass.sqrt()).collect()
    }

    /// `‖f‖²_{L²(μ)}`.
    pub fn norm_sqr(&self, mu: &CircleMeasure) -> f64 {
        let mut s: f64 = mu.atoms().iter().zip(&self.at_atoms).map(|(a, f)| a.mass * f.norm_sqr()).sum();
        if let Some(w) = mu.density() {
            s += w.iter().zip(&self.on_grid).map(|(w, f)| w * f.norm_sqr()).sum::<f64>() / w.len() as f64;
        }
        s
    }
}
