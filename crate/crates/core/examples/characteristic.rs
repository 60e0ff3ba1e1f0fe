//! Characteristic functions from a measure: pointwise, as a Blaschke product,
//! and through Taylor coefficients.

use std::f64::consts::PI;

use clark_core::cauchy::RadialLimitConfig;
use clark_core::charfn::{rational_theta0, theta0, CharFunction};
use clark_core::measure::CircleMeasure;
use num_complex::Complex64;

fn main() -> clark_core::Result<()> {
    let mu = CircleMeasure::atomic(&[(0.0, 0.75), (PI, 0.25)])?;
    let th = rational_theta0(&mu)?;
    println!("zeros of θ₀: {:?}", th.zeros());
    let z = Complex64::new(0.3, 0.4);
    println!("θ₀(z) = {:.12}", theta0(&mu, z)?);
    println!("z(z+½)/(1+½z) = {:.12}", z * (z + 0.5) / (1.0 + 0.5 * z));
    let (inner, forms) = th.self_check();
    println!("innerness {inner:.1e}, polynomial form {forms:.1e}");

    let gamma = Complex64::new(0.3, -0.2);
    let cf = CharFunction::new(&mu, gamma)?;
    println!("θ_γ(0) = {:.12} (−γ = {})", cf.eval(Complex64::new(0.0, 0.0))?, -gamma);
    // the first nonzero coefficients agree up to the factor 1 − |γ|²
    let k = (1..).find(|&k| mu.fourier_coefficient(k).norm() > 1e-12).unwrap();
    let hat = (1.0 - gamma.norm_sqr()) * mu.fourier_coefficient(k);
    println!("θ̂_γ({k}) = {:.10}   (1 − |γ|²) μ̂({k}) = {:.10}", cf.taylor_coefficient(k as usize)?, hat);
    println!("θ̂_γ(2) = {:.10}", cf.taylor_coefficient(2)?);

    let w = CircleMeasure::from_density_fn(512, |t| 1.0 + 0.5 * t.cos())?;
    let cfg = RadialLimitConfig::default();
    let cw = CharFunction::new(&w, Complex64::new(0.5, 0.0))?;
    for t in [0.0, 1.0, 2.0] {
        println!("Δ_γ(e^{{i{t}}}) = {:.10}", cw.delta(Complex64::from_polar(1.0, t), &cfg)?);
    }
    Ok(())
}
