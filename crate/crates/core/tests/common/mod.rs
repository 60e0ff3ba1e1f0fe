#![allow(dead_code)]

use clark_core::measure::{Atom, CircleMeasure};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// `n` angles in `[0, 2π)` with pairwise circular gaps at least `gap`.
pub fn spread_angles(rng: &mut ChaCha8Rng, n: usize, gap: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(n);
    while out.len() < n {
        let t = rng.gen_range(0.0..TAU);
        if out.iter().all(|&s| {
            let d = (t - s).rem_euclid(TAU);
            d.min(TAU - d) >= gap
        }) {
            out.push(t);
        }
    }
    out
}

/// Atomic probability measure with `n` atoms and masses drawn from `[0.5, 1.5]`.
pub fn random_atomic(rng: &mut ChaCha8Rng, n: usize) -> CircleMeasure {
    let gap = (0.5 * TAU / n as f64).min(0.05);
    let angles = spread_angles(rng, n, gap);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
    let total: f64 = raw.iter().sum();
    let atoms = angles.into_iter().zip(raw).map(|(angle, m)| Atom { angle, mass: m / total }).collect();
    CircleMeasure::new(atoms, None).unwrap()
}

/// A point of the disc with modulus at most `r`.
pub fn random_disc(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.gen_range(0.0f64..1.0).sqrt(), rng.gen_range(0.0..TAU))
}

pub fn random_unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

/// Measure invariant under rotation by `2π/k`: `base` random atoms copied
/// `k` times, so `μ̂(j) = 0` unless `k | j`.
pub fn symmetric_atomic(rng: &mut ChaCha8Rng, base: usize, k: usize) -> CircleMeasure {
    let sector = TAU / k as f64;
    let angles = spread_angles(rng, base, 0.05).into_iter().map(|t| t / k as f64).collect::<Vec<_>>();
    let raw: Vec<f64> = (0..base).map(|_| rng.gen_range(0.5..1.5)).collect();
    let total: f64 = raw.iter().sum::<f64>() * k as f64;
    let mut atoms = Vec::new();
    for r in 0..k {
        for (t, m) in angles.iter().zip(&raw) {
            atoms.push(Atom { angle: t + r as f64 * sector, mass: m / total });
        }
    }
    CircleMeasure::new(atoms, None).unwrap()
}

/// `μ̂(k) = Σ m_j ξ̄_j^k` by direct summation.
pub fn fourier_atomic(mu: &CircleMeasure, k: i64) -> Complex64 {
    mu.atoms().iter().map(|a| a.mass * Complex64::from_polar(1.0, -(k as f64) * a.angle)).sum()
}

/// The four reference densities: Lebesgue, `1 + ½cos t`, Poisson kernel at
/// `r = ½`, and `exp(0.8 cos t)` normalized.
pub fn reference_densities(n: usize) -> Vec<(&'static str, CircleMeasure)> {
    vec![
        ("lebesgue", CircleMeasure::lebesgue(n)),
        ("cosine", CircleMeasure::from_density_fn(n, |t| 1.0 + 0.5 * t.cos()).unwrap()),
        ("poisson", CircleMeasure::from_density_fn(n, |t| 0.75 / (1.25 - t.cos())).unwrap()),
        ("exponential", CircleMeasure::from_density_fn(n, |t| (0.8 * t.cos()).exp()).unwrap()),
    ]
}
