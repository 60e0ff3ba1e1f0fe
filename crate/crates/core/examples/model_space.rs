//! The model space `K_θ` of a Blaschke product, its compressed shift and
//! defect vectors.

use clark_core::model::ModelSpace;
use clark_core::rational::RationalInner;
use num_complex::Complex64;

fn main() -> clark_core::Result<()> {
    let zeros = vec![Complex64::new(0.5, 0.0), Complex64::new(-0.2, 0.6), Complex64::from_polar(0.995, 1.0)];
    let theta = RationalInner::new(zeros, Complex64::new(1.0, 0.0))?;
    let ms = ModelSpace::new(&theta)?;
    println!("dimension {}, quadrature nodes {}, Gram deviation {:.1e}", ms.dim(), ms.quad_size(), ms.gram_deviation());
    println!("compression M_θ = {:.4}", ms.compression());

    let d = ms.defect_vectors();
    println!("θ(0) = {:.6}", d.theta_at_zero);
    println!("‖M c₁ + θ(0) c‖ = {:.1e}", d.mc1_residual(&ms));
    let (rc, rc1) = d.range_residuals(&ms);
    println!("defect range residuals {rc:.1e} {rc1:.1e}");

    let (ds, dss) = ms.defect_singular_values();
    let show = |v: &[f64]| v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" ");
    println!("singular values of I − M*M: {}", show(&ds));
    println!("singular values of I − MM*: {}", show(&dss));
    Ok(())
}
