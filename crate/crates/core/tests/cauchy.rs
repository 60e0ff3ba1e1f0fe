use std::f64::consts::PI;

use clark_core::cauchy::{
    boundary_value, cauchy_r, cauchy_r1, cauchy_r2, discretize_tr, poisson_extension, radial_limit, RadialLimitConfig, Side,
};
use clark_core::linalg::operator_norm;
use clark_core::measure::{CircleMeasure, MeasureFunction};
use clark_core::Error;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_atoms() -> CircleMeasure {
    CircleMeasure::atomic(&[(0.0, 0.5), (PI, 0.5)]).unwrap()
}

#[test]
fn r_of_point_mass() {
    assert!((cauchy_r(&CircleMeasure::dirac(0.0), None, c(0.5, 0.0)).unwrap() - 2.0).norm() < 1e-15);
}

#[test]
fn r_of_lebesgue_is_one_inside() {
    let v = cauchy_r(&CircleMeasure::lebesgue(4096), None, c(0.0, 0.7)).unwrap();
    assert!((v - 1.0).norm() < 1e-14);
}

#[test]
fn r_of_lebesgue_is_zero_outside() {
    let v = cauchy_r(&CircleMeasure::lebesgue(4096), None, c(0.0, 1.7)).unwrap();
    assert!(v.norm() < 1e-14);
}

#[test]
fn r_of_symmetric_pair() {
    let v = cauchy_r(&two_atoms(), None, c(0.5, 0.0)).unwrap();
    assert!((v - 4.0 / 3.0).norm() < 1e-15);
}

#[test]
fn r1_r2_of_point_mass() {
    let d = CircleMeasure::dirac(0.0);
    assert!(cauchy_r1(&d, None, c(0.0, 0.0)).unwrap().norm() < 1e-15);
    assert!((cauchy_r2(&d, None, c(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
    assert!((cauchy_r1(&d, None, c(0.5, 0.0)).unwrap() - 1.0).norm() < 1e-15);
    assert!((cauchy_r2(&d, None, c(0.5, 0.0)).unwrap() - 3.0).norm() < 1e-15);
}

#[test]
fn weighted_transform() {
    // f = ξ on ½δ₁ + ½δ₋₁: R(fμ)(λ) = ½/(1 − λ) − ½/(1 + λ)
    let mu = two_atoms();
    let f = MeasureFunction::from_fn(&mu, |t| Complex64::from_polar(1.0, t));
    let l = c(0.3, 0.2);
    let want = 0.5 / (1.0 - l) - 0.5 / (1.0 + l);
    assert!((cauchy_r(&mu, Some(&f), l).unwrap() - want).norm() < 1e-15);
}

#[test]
fn guard_band() {
    let d = CircleMeasure::dirac(0.0);
    assert!(matches!(cauchy_r(&d, None, c(0.0, 1.0 - 1e-9)), Err(Error::BoundaryGuard(_))));
    assert!(matches!(poisson_extension(&d, c(1.0 - 1e-9, 0.0)), Err(Error::BoundaryGuard(_))));
    assert!(poisson_extension(&d, c(1.5, 0.0)).is_err());
}

#[test]
fn poisson_closed_forms() {
    let d = CircleMeasure::dirac(0.0);
    assert!((poisson_extension(&d, c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
    for r in [0.1, 0.5, 0.9] {
        let want = (1.0 + r) / (1.0 - r);
        assert!((poisson_extension(&d, c(r, 0.0)).unwrap() - want).abs() < 1e-12 * want);
    }
    let leb = CircleMeasure::lebesgue(1024);
    for z in [c(0.3, -0.4), c(-0.9, 0.1)] {
        assert!((poisson_extension(&leb, z).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn boundary_values_of_lebesgue() {
    let cfg = RadialLimitConfig::default();
    let leb = CircleMeasure::lebesgue(1024);
    let z = Complex64::from_polar(1.0, 0.7);
    assert!((boundary_value(&leb, None, z, Side::Inner, &cfg).unwrap().value - 1.0).norm() < 1e-10);
    assert!(boundary_value(&leb, None, z, Side::Outer, &cfg).unwrap().value.norm() < 1e-10);
}

#[test]
fn boundary_value_away_from_atom() {
    let cfg = RadialLimitConfig::default();
    let v = boundary_value(&CircleMeasure::dirac(0.0), None, c(-1.0, 0.0), Side::Inner, &cfg).unwrap();
    assert!((v.value - 0.5).norm() < 1e-10);
    assert!(v.error_estimate < 1e-8);
}

#[test]
fn boundary_value_at_atom_diverges() {
    let cfg = RadialLimitConfig::default();
    let r = boundary_value(&CircleMeasure::dirac(0.0), None, c(1.0, 0.0), Side::Inner, &cfg);
    assert!(matches!(r, Err(Error::RadialDivergence(_))));
}

#[test]
fn radial_limit_of_smooth_function() {
    let cfg = RadialLimitConfig::default();
    let z = Complex64::from_polar(1.0, 2.0);
    let v = radial_limit(|l| (l * 0.5).exp() / (2.0 - l), z, Side::Outer, &cfg).unwrap();
    assert!((v.value - (z * 0.5).exp() / (2.0 - z)).norm() < 1e-11);
}

#[test]
fn config_validation() {
    assert!(RadialLimitConfig::new(vec![0.1, 0.2], 1).is_err());
    assert!(RadialLimitConfig::new(vec![0.6, 0.2], 1).is_err());
    assert!(RadialLimitConfig::new(vec![0.2, 0.1], 3).is_err());
    assert!(RadialLimitConfig::new(vec![0.2, 0.1], 2).is_ok());
}

#[test]
fn discretized_kernels() {
    let d = CircleMeasure::dirac(0.0);
    let m = discretize_tr(&d, &d, 0.0).unwrap();
    assert!((m.matrix[(0, 0)] - 1.0).norm() < 1e-15);
    let m = discretize_tr(&d, &CircleMeasure::dirac(PI), 0.5).unwrap();
    assert!((m.matrix[(0, 0)] - 2.0 / 3.0).norm() < 1e-15);
    let mu = two_atoms();
    let m = discretize_tr(&mu, &mu, 0.5).unwrap();
    let pts = [c(1.0, 0.0), c(-1.0, 0.0)];
    for i in 0..2 {
        for j in 0..2 {
            let want = 0.5 / (1.0 - 0.5 * pts[j].conj() * pts[i]);
            assert!((m.matrix[(i, j)] - want).norm() < 1e-15);
        }
    }
    assert!(discretize_tr(&d, &d, 1.0 - 1e-7).is_err());
}

#[test]
fn operator_norm_of_diagonal() {
    let m = nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.5, 0.0), c(0.0, -2.0)]));
    assert!((operator_norm(&m) - 2.0).abs() < 1e-14);
}
