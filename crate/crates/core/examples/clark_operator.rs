//! `Φ*_γ` for random atomic measures, checked against its defining
//! properties.

use std::f64::consts::TAU;
use std::time::Instant;

use clark_core::clark::phi_star_matrix;
use clark_core::measure::{Atom, CircleMeasure};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_measure(rng: &mut ChaCha8Rng, n: usize) -> clark_core::Result<CircleMeasure> {
    let atoms = (0..n)
        .map(|k| Atom { angle: TAU * (k as f64 + rng.gen_range(0.1..0.9)) / n as f64, mass: rng.gen_range(0.5..1.5) })
        .collect();
    CircleMeasure::new(atoms, None)?.normalize()
}

fn main() -> clark_core::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    println!(" n  unitarity  intertwining  normalization  commutation   ms");
    for n in [1, 2, 4, 8, 16, 24] {
        let mu = random_measure(&mut rng, n)?;
        let gamma = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU));
        let t = Instant::now();
        let op = phi_star_matrix(&mu, gamma)?;
        let r = op.verify()?;
        let c = op.commutation_residual()?;
        println!(
            "{n:2}  {:.2e}   {:.2e}      {:.2e}       {c:.2e}   {:.1}",
            r.unitarity_residual,
            r.intertwining_residual,
            r.normalization_residual,
            t.elapsed().as_secs_f64() * 1e3
        );
    }

    let mu = CircleMeasure::atomic(&[(0.0, 0.5), (std::f64::consts::PI, 0.5)])?;
    let op = phi_star_matrix(&mu, Complex64::new(0.0, 0.0))?;
    println!("Φ* for ½δ₁ + ½δ₋₁, γ = 0:\n{:.6}", op.matrix.matrix);
    Ok(())
}
