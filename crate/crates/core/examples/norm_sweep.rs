//! Norms of the discretized kernels `K_r` from `L²(μ)` to `L²(v_γ)` as `r`
//! crosses the circle, and the bounded exterior transform.

use clark_core::cauchy::RadialLimitConfig;
use clark_core::clark::{bounded_exterior_norm, norm_sweep, SWEEP_RADII};
use clark_core::measure::CircleMeasure;
use num_complex::Complex64;

fn main() -> clark_core::Result<()> {
    let cfg = RadialLimitConfig::default();
    let sources = [
        ("three atoms", CircleMeasure::atomic(&[(0.5, 0.3), (2.5, 0.3), (4.5, 0.4)])?),
        ("1 + ½cos t", CircleMeasure::from_density_fn(256, |t| 1.0 + 0.5 * t.cos())?),
    ];
    for (name, mu) in &sources {
        println!("{name}");
        for row in norm_sweep(mu, Complex64::new(0.3, 0.3), &SWEEP_RADII, 256, &cfg)? {
            println!("  r = {:<5} ‖T_r‖ = {:.6}", row.r, row.norm);
        }
    }
    let w = CircleMeasure::from_density_fn(256, |t| (0.8 * t.cos()).exp())?.normalize()?;
    println!("exterior transform norm for exp(0.8 cos t): {:.10}", bounded_exterior_norm(&w, 256)?);
    Ok(())
}
