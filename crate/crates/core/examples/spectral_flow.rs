use clark_core::measure::CircleMeasure;
use clark_core::perturbation::{build_u_gamma, spectral_flow};
use num_complex::Complex64;

fn main() -> clark_core::Result<()> {
    let mu = CircleMeasure::atomic(&[(0.4, 0.2), (2.1, 0.3), (4.4, 0.5)])?;

    let contraction = build_u_gamma(&mu, Complex64::new(0.4, 0.3))?;
    println!("spectral radius of U_γ, |γ| = 0.5: {:.6}", contraction.spectral_radius()?);
    println!("Krylov σ_min: {:.3e}", contraction.krylov_min_singular_value());

    // every eigenvalue moves monotonically as α goes once around the circle
    println!("alpha  eigenvalue angles");
    for row in spectral_flow(&mu, 12)? {
        let angles: Vec<String> = row.angles.iter().map(|a| format!("{a:.4}")).collect();
        println!("{:.4}  {}", row.alpha_angle, angles.join(" "));
    }
    Ok(())
}
