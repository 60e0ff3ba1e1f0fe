use clark_core::clark::{rigidity_check, v_alpha_matrix};
use clark_core::measure::CircleMeasure;
use num_complex::Complex64;

fn main() -> clark_core::Result<()> {
    let mu = CircleMeasure::atomic(&[(0.2, 0.25), (1.9, 0.25), (3.3, 0.3), (5.0, 0.2)])?;
    let alpha = Complex64::from_polar(1.0, 2.0);

    let v = v_alpha_matrix(&mu, alpha)?;
    let r = v.verify()?;
    println!("V_α: unitarity {:.1e}, intertwining {:.1e}", r.unitarity_residual, r.intertwining_residual);
    println!("μ_α angles {:.4?}", v.mu_alpha.angles());

    // Same support, other masses: the formula still works after a weight.
    let nu = v.mu_alpha.rescale_atoms(&[1.0, 4.0, 0.25, 2.0])?;
    let rep = rigidity_check(&mu, &nu, alpha)?;
    println!("rescaled ν: |h|² = {:.6?}, residual {:.1e}", rep.h_squared.unwrap_or_default(), rep.mass_residual.unwrap_or(f64::NAN));

    // One atom fewer: V has a kernel and cannot be made unitary.
    let short = v.mu_alpha.remove_atom(2)?;
    let rep = rigidity_check(&mu, &short, alpha)?;
    println!("deleted atom: kernel {} (σ_min {:.1e}), violated {}", rep.kernel_detected, rep.sigma_min_v, rep.hypothesis_violated);

    // Wrong support: the coefficient of f(z) no longer vanishes.
    let off = CircleMeasure::atomic(&[(0.7, 0.5), (3.9, 0.5)])?;
    let rep = rigidity_check(&mu, &off, alpha)?;
    println!("other support: coefficient residual {:.3}, violated {}", rep.coefficient_residual, rep.hypothesis_violated);
    Ok(())
}
