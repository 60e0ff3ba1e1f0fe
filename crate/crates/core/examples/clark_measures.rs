use std::f64::consts::TAU;

use clark_core::clark::{clark_measure_report, ClarkFamily};
use clark_core::measure::{min_atom_distance, CircleMeasure};
use num_complex::Complex64;

fn main() -> clark_core::Result<()> {
    let mu = CircleMeasure::atomic(&[(0.3, 0.1), (1.2, 0.2), (2.9, 0.3), (4.7, 0.4)])?;
    let family = ClarkFamily::new(&mu)?;

    let mut all = Vec::new();
    for j in 0..6 {
        let alpha = Complex64::from_polar(1.0, TAU * j as f64 / 6.0);
        let m = family.measure(alpha)?;
        println!("α = e^{{i{:.3}}}: angles {:.4?} masses {:.4?}", TAU * j as f64 / 6.0, m.angles(), m.masses());
        all.push(m);
    }
    let sep = (1..all.len()).map(|k| min_atom_distance(&all[0], &all[k])).fold(f64::INFINITY, f64::min);
    println!("smallest distance between atoms of μ₁ and the others: {sep:.3e}");

    // masses from the linear system against 1/|θ′|
    let r = clark_measure_report(family.theta0(), Complex64::new(0.0, 1.0))?;
    println!("mass discrepancy {:.1e}, system residual {:.1e}", r.mass_discrepancy, r.system_residual);
    Ok(())
}
