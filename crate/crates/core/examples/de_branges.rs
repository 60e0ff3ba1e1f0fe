//! From `L²(μ)` to the de Branges–Rovnyak picture and back.

use clark_core::cauchy::RadialLimitConfig;
use clark_core::clark::{g_minus, phi_apply_grid, phi_star_matrix};
use clark_core::measure::CircleMeasure;
use clark_core::model::to_debranges;
use nalgebra::DVector;
use num_complex::Complex64;

fn main() -> clark_core::Result<()> {
    let cfg = RadialLimitConfig::default();

    // Atomic μ: an element of K_θ and its pair (g₊, g₋ = θ̄g₊).
    let mu = CircleMeasure::atomic(&[(0.5, 0.3), (2.5, 0.3), (4.5, 0.4)])?;
    let op = phi_star_matrix(&mu, Complex64::new(0.2, 0.0))?;
    let f = DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(0.5, 0.5)]);
    let g = &op.matrix.matrix * &f;
    let db = to_debranges(&op.model, &g, 256)?;
    println!("analytic defect {:.1e}, anti-analytic defect {:.1e}, norm mismatch {:.1e}", db.analytic_defect, db.antianalytic_defect, db.norm_mismatch);
    let back = op.phi_apply(&g, &cfg)?;
    println!("recovered f at the atoms: {:.8?}", back.coordinates(&mu));

    // Smooth density: g₋ is anti-analytic and Φ recovers f on the grid.
    let m = 1024;
    let w = CircleMeasure::from_density_fn(m, |t| 1.0 + 0.5 * t.cos())?;
    let f = |t: f64| Complex64::from_polar(1.0, 2.0 * t) + 0.3;
    let gm = g_minus(&w, Complex64::new(0.0, 0.0), f, m, &cfg)?;
    let grid = gm.to_grid()?;
    println!("g₋ non-negative frequency content: {:.1e}", grid.nonnegative_content());
    let g1: Vec<Complex64> = {
        let mut gb = clark_core::boundary::GridBoundary::new(&w, m, &cfg)?;
        clark_core::clark::g_one(&mut gb, Complex64::new(0.0, 0.0), f)?
    };
    let rec = phi_apply_grid(&w, Complex64::new(0.0, 0.0), &g1, &gm.values, &cfg)?;
    let err = rec
        .on_grid
        .iter()
        .enumerate()
        .filter_map(|(j, v)| v.map(|v| (v - f(std::f64::consts::TAU * j as f64 / m as f64)).norm()))
        .fold(0.0, f64::max);
    println!("max error of recovered f on the grid: {err:.1e}");
    Ok(())
}
