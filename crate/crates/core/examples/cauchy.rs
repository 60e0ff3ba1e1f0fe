use std::f64::consts::PI;

use clark_core::cauchy::{boundary_value, cauchy_r, cauchy_r2, discretize_tr, poisson_extension, RadialLimitConfig, Side};
use clark_core::measure::CircleMeasure;
use num_complex::Complex64;

fn main() -> clark_core::Result<()> {
    let mu = CircleMeasure::atomic(&[(0.0, 0.5), (PI, 0.5)])?;
    let lam = Complex64::new(0.5, 0.0);
    println!("R(0.5)  = {:.12}  (4/3 expected)", cauchy_r(&mu, None, lam)?);
    println!("R2(0.5) = {:.12}", cauchy_r2(&mu, None, lam)?);
    println!("Poisson extension at 0.3i = {:.6}", poisson_extension(&mu, Complex64::new(0.0, 0.3))?);

    // Boundary values from the inside and the outside.
    let cfg = RadialLimitConfig::default();
    let z = Complex64::from_polar(1.0, 1.0);
    let w = CircleMeasure::from_density_fn(512, |t| 1.0 + 0.5 * t.cos())?;
    let plus = boundary_value(&w, None, z, Side::Inner, &cfg)?;
    let minus = boundary_value(&w, None, z, Side::Outer, &cfg)?;
    println!("T+1 = {:.10} (error estimate {:.1e})", plus.value, plus.error_estimate);
    println!("T-1 = {:.10}", minus.value);
    println!("jump T+1 - T-1 = {:.10}, density w(z) = {:.10}", plus.value - minus.value, 1.0 + 0.5 * 1f64.cos());

    match boundary_value(&mu, None, Complex64::new(1.0, 0.0), Side::Inner, &cfg) {
        Ok(v) => println!("unexpected limit {}", v.value),
        Err(e) => println!("at an atom: {e}"),
    }

    for r in [0.5, 0.9, 0.99] {
        let m = discretize_tr(&w, &w, r)?;
        println!("‖T_{r}‖ on L²(w) ≈ {:.6}", m.norm());
    }
    Ok(())
}
