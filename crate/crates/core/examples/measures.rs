//! Building measures on the circle, Fourier coefficients and the JSON format.

use std::f64::consts::PI;

use clark_core::measure::{atoms_disjoint, Atom, CircleMeasure};

fn main() -> clark_core::Result<()> {
    let atoms = vec![Atom { angle: 0.0, mass: 3.0 }, Atom { angle: PI / 2.0, mass: 1.0 }];
    let raw = CircleMeasure::new(atoms, None)?;
    println!("total mass before normalizing: {}", raw.total_mass());
    let mu = raw.normalize()?;
    println!("masses after: {:?}", mu.masses());

    // μ̂(k) = ∫ ξ̄^k dμ
    for k in 0..4 {
        println!("mu_hat({k}) = {:.6}", mu.fourier_coefficient(k));
    }

    let smooth = CircleMeasure::from_density_fn(256, |t| 1.0 + 0.5 * t.cos())?;
    println!("density part mass {:.12}, first coefficient {:.6}", smooth.density_mass(), smooth.fourier_coefficient(1));
    println!("∫ log w dm = {:.6}", smooth.log_density_integral());

    let other = CircleMeasure::dirac(PI);
    println!("disjoint atoms: {}", atoms_disjoint(&mu, &other, 1e-6));

    let path = std::env::temp_dir().join("clark_example_measure.json");
    mu.save(&path)?;
    let back = CircleMeasure::load(&path)?;
    println!("{}", mu.to_json());
    println!("round trip exact: {}", back == mu);
    Ok(())
}
