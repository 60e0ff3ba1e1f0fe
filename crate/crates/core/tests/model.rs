use clark_core::grid::grid_points;
use clark_core::model::{debranges_grid, to_debranges, ModelSpace, Quadrature};
use clark_core::rational::RationalInner;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn compression_of_z() {
    let ms = ModelSpace::new(&RationalInner::monomial(1)).unwrap();
    assert_eq!(ms.dim(), 1);
    assert!(ms.compression()[(0, 0)].norm() < 1e-14);
}

#[test]
fn compression_of_z_squared_is_the_shift() {
    let ms = ModelSpace::new(&RationalInner::monomial(2)).unwrap();
    let m = ms.compression();
    let want = [[0.0, 0.0], [1.0, 0.0]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((m[(i, j)] - want[i][j]).norm() < 1e-14);
        }
    }
}

#[test]
fn compression_of_mobius_factor() {
    let ms = ModelSpace::new(&RationalInner::mobius(c(0.5, 0.0)).unwrap()).unwrap();
    assert!((ms.compression()[(0, 0)] - 0.5).norm() < 1e-13);
    // the basis function is the normalized kernel √(1 − ¼)/(1 − z/2)
    let z = c(0.3, -0.7);
    assert!((ms.basis_at(z)[0] - 0.75f64.sqrt() / (1.0 - z / 2.0)).norm() < 1e-14);
}

#[test]
fn uniform_size_validated() {
    let th = RationalInner::monomial(2);
    assert!(ModelSpace::build(&th, 1000).is_err());
    assert!(ModelSpace::build(&th, 512).is_err());
    assert_eq!(ModelSpace::build(&th, 1024).unwrap().quad_size(), 1024);
}

#[test]
fn graded_rule_integrates_peaked_kernel() {
    // ∫ (1 − |a|²)/|1 − āz|² dm = 1; rounding in 1 − |a|² alone costs ε/d
    let a = Complex64::from_polar(1.0 - 1e-5, 0.4);
    let q = Quadrature::graded(&[a]);
    let v = q.integrate(|z| ((1.0 - a.norm_sqr()) / (1.0 - a.conj() * z).norm_sqr()).into());
    assert!((v - 1.0).norm() < 1e-10, "{v}");
    assert!(q.len() < 4096);
}

#[test]
fn gram_check() {
    let zeros = vec![c(0.5, 0.2), Complex64::from_polar(0.999, 2.0), c(-0.1, 0.0)];
    let ms = ModelSpace::new(&RationalInner::new(zeros, c(1.0, 0.0)).unwrap()).unwrap();
    assert!(ms.gram_deviation() <= 1e-9);
}

#[test]
fn defect_vectors_of_monomials() {
    let ms = ModelSpace::new(&RationalInner::monomial(1)).unwrap();
    let d = ms.defect_vectors();
    assert!((d.c[0] - 1.0).norm() < 1e-14 && (d.c1[0] - 1.0).norm() < 1e-14);
    assert!(d.mc1_residual(&ms) < 1e-14);

    let ms = ModelSpace::new(&RationalInner::monomial(2)).unwrap();
    let d = ms.defect_vectors();
    assert!((&d.c - DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])).norm() < 1e-14);
    assert!((&d.c1 - DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)])).norm() < 1e-14);
    assert!((ms.compression() * &d.c1).norm() < 1e-14);
}

#[test]
fn defect_pairing_recovers_gamma() {
    let th = RationalInner::mobius(c(0.5, 0.0)).unwrap();
    let ms = ModelSpace::new(&th).unwrap();
    let d = ms.defect_vectors();
    assert!((d.theta_at_zero + 0.5).norm() < 1e-15);
    assert!((d.c.dotc(&(ms.compression() * &d.c1)) - 0.5).norm() < 1e-12);
    let (rc, rc1) = d.range_residuals(&ms);
    assert!(rc < 1e-8 && rc1 < 1e-8);
}

#[test]
fn projections() {
    let th = RationalInner::new(vec![c(0.3, 0.1), c(-0.5, 0.4), c(0.0, -0.2)], c(0.0, 1.0)).unwrap();
    let ms = ModelSpace::new(&th).unwrap();
    let p = ms.project_fn(|z| ms.basis_at(z)[0]);
    assert!((p[0] - 1.0).norm() < 1e-12 && p.rows(1, 2).norm() < 1e-12);
    let t = th.clone();
    assert!(ms.project_fn(move |z| t.eval(z) * z).norm() < 1e-8);

    let ms = ModelSpace::new(&RationalInner::monomial(2)).unwrap();
    let p = ms.project_fn(|_| c(1.0, 0.0));
    assert!((p[0] - 1.0).norm() < 1e-14 && p[1].norm() < 1e-14);
}

#[test]
fn debranges_of_constants() {
    let ms = ModelSpace::new(&RationalInner::monomial(1)).unwrap();
    let d = to_debranges(&ms, &DVector::from_vec(vec![c(1.0, 0.0)]), 64).unwrap();
    for (g, z) in d.g_minus.samples().iter().zip(grid_points(64)) {
        assert!((g - z.conj()).norm() < 1e-14);
    }
    let coeffs = d.g_minus.coefficients();
    let energy: f64 = coeffs.iter().map(|x| x.norm_sqr()).sum();
    assert!((energy - 1.0).abs() < 1e-12 && (coeffs[63] - 1.0).norm() < 1e-12);
    assert!(d.antianalytic_defect < 1e-8 && d.analytic_defect < 1e-8 && d.norm_mismatch < 1e-7);

    let ms = ModelSpace::new(&RationalInner::monomial(2)).unwrap();
    let d = to_debranges(&ms, &DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]), 64).unwrap();
    for (g, z) in d.g_minus.samples().iter().zip(grid_points(64)) {
        assert!((g - z.conj() * z.conj()).norm() < 1e-14);
    }
}

#[test]
fn debranges_degenerate_pair() {
    let m = 64;
    let pts = grid_points(m);
    let theta = vec![c(0.0, 0.0); m];
    let g1 = vec![c(1.0, 0.0); m];
    let g2: Vec<Complex64> = pts.iter().map(|z| z.conj()).collect();
    let d = debranges_grid(&theta, &g1, &g2).unwrap();
    for (g, z) in d.g_minus.samples().iter().zip(&pts) {
        assert!((g - z.conj()).norm() < 1e-15);
    }
    assert!(d.norm_mismatch < 1e-14);
}

#[test]
fn non_member_is_flagged() {
    let m = 64;
    let theta = vec![c(0.0, 0.0); m];
    let pts = grid_points(m);
    let g1: Vec<Complex64> = pts.iter().map(|z| z.conj()).collect();
    let d = debranges_grid(&theta, &g1, &vec![c(0.0, 0.0); m]).unwrap();
    assert!(d.analytic_defect > 0.5);
}

#[test]
fn extended_space_contains_shifted_basis() {
    let th = RationalInner::new(vec![c(0.3, 0.1), c(-0.5, 0.4)], c(1.0, 0.0)).unwrap();
    let ms = ModelSpace::new(&th).unwrap();
    let ext = ms.extended().unwrap();
    assert_eq!(ext.dim(), 3);
    let s: DMatrix<Complex64> = ms.shift_into(&ext);
    // z K_θ ⊂ K_{zθ} isometrically
    assert!((s.adjoint() * &s - DMatrix::identity(2, 2)).norm() < 1e-12);
}
