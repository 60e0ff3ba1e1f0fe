use clark_core::cauchy::RadialLimitConfig;
use clark_core::measure::{Atom, CircleMeasure};
use clark_core::suite::{identity_suite, IDENTITY_TOL};
use num_complex::Complex64;

fn main() -> clark_core::Result<()> {
    let cfg = RadialLimitConfig::default();
    let n = 4096;
    let smooth = CircleMeasure::from_density_fn(n, |t| 1.0 + 0.5 * t.cos())?;
    let w: Vec<f64> = smooth.density().unwrap().iter().map(|x| 0.8 * x).collect();
    let mixed = CircleMeasure::new(vec![Atom { angle: 1.0, mass: 0.2 }], Some(w))?;

    for (name, mu) in [("1 + ½cos t", &smooth), ("with an atom", &mixed)] {
        let rep = identity_suite(mu, Complex64::new(0.3, 0.4), n, IDENTITY_TOL, &cfg)?;
        println!("{name}: {} points excluded, extrapolation error {:.1e}", rep.excluded, rep.extrapolation_error);
        for row in &rep.rows {
            println!("  {:<22} {:.2e}  {}", row.name, row.max_error, if row.passed { "ok" } else { "FAIL" });
        }
    }
    Ok(())
}
