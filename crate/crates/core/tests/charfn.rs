use std::f64::consts::PI;

use clark_core::cauchy::RadialLimitConfig;
use clark_core::charfn::{
    delta_gamma, rational_theta0, rational_theta_gamma, theta0, theta0_r2_form, theta_fourier, theta_gamma, CharFunction,
};
use clark_core::measure::CircleMeasure;
use clark_core::rational::RationalInner;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_atoms() -> CircleMeasure {
    CircleMeasure::atomic(&[(0.0, 0.5), (PI, 0.5)]).unwrap()
}

const SAMPLES: [Complex64; 4] = [
    Complex64 { re: 0.5, im: 0.0 },
    Complex64 { re: -0.3, im: 0.6 },
    Complex64 { re: 0.0, im: -0.95 },
    Complex64 { re: 0.1, im: 0.1 },
];

#[test]
fn lebesgue_theta_vanishes() {
    let leb = CircleMeasure::lebesgue(256);
    for z in SAMPLES {
        assert!(theta0(&leb, z).unwrap().norm() < 1e-14);
    }
}

#[test]
fn closed_forms() {
    for z in SAMPLES {
        assert!((theta0(&CircleMeasure::dirac(0.0), z).unwrap() - z).norm() < 1e-14);
        assert!((theta0(&two_atoms(), z).unwrap() - z * z).norm() < 1e-14);
        assert!((theta0_r2_form(&two_atoms(), z).unwrap() - z * z).norm() < 1e-14);
    }
}

#[test]
fn theta_gamma_examples() {
    let d = CircleMeasure::dirac(0.0);
    let half = c(0.5, 0.0);
    assert!((theta_gamma(&d, half, c(0.0, 0.0)).unwrap() + half).norm() < 1e-15);
    assert!(theta_gamma(&d, half, half).unwrap().norm() < 1e-15);
    for z in SAMPLES {
        let a = theta_gamma(&two_atoms(), c(0.0, 0.0), z).unwrap();
        assert!((a - theta0(&two_atoms(), z).unwrap()).norm() < 1e-15);
    }
    assert!(theta_gamma(&d, c(1.0, 0.0), half).is_err());
}

#[test]
fn delta_examples() {
    let cfg = RadialLimitConfig::default();
    let z = Complex64::from_polar(1.0, 1.3);
    assert!(delta_gamma(&two_atoms(), c(0.2, -0.4), z, &cfg).unwrap() < 1e-9);
    let leb = CircleMeasure::lebesgue(256);
    assert!((delta_gamma(&leb, c(0.0, 0.0), z, &cfg).unwrap() - 1.0).abs() < 1e-9);
    assert!((delta_gamma(&leb, c(0.5, 0.0), z, &cfg).unwrap() - 0.75f64.sqrt()).abs() < 1e-9);
}

#[test]
fn rational_forms() {
    let th = rational_theta0(&CircleMeasure::dirac(0.0)).unwrap();
    assert_eq!(th.degree(), 1);
    assert!(th.zeros()[0].norm() < 1e-14);
    assert!((th.constant() - 1.0).norm() < 1e-14);

    let th = rational_theta0(&two_atoms()).unwrap();
    assert!(th.zeros().iter().all(|a| a.norm() < 1e-7));
    for z in SAMPLES {
        assert!((th.eval(z) - z * z).norm() < 1e-12);
    }

    let mu = CircleMeasure::atomic(&[(0.0, 0.75), (PI, 0.25)]).unwrap();
    let th = rational_theta0(&mu).unwrap();
    for z in SAMPLES {
        let want = z * (z + 0.5) / (1.0 + 0.5 * z);
        assert!((th.eval(z) - want).norm() < 1e-12);
    }
    assert!(th.self_check().0 < 1e-9);
}

#[test]
fn rational_theta_gamma_matches_pointwise() {
    let mu = CircleMeasure::atomic(&[(0.4, 0.2), (2.0, 0.3), (4.5, 0.5)]).unwrap();
    let g = c(0.3, -0.5);
    let th = rational_theta_gamma(&mu, g).unwrap();
    for z in SAMPLES {
        assert!((th.eval(z) - theta_gamma(&mu, g, z).unwrap()).norm() < 1e-12);
    }
    assert!((th.eval(c(0.0, 0.0)) + g).norm() < 1e-12);
}

#[test]
fn rational_theta_requires_atoms() {
    assert!(rational_theta0(&CircleMeasure::lebesgue(64)).is_err());
}

#[test]
fn taylor_examples() {
    let d = CircleMeasure::dirac(0.0);
    assert!((theta_fourier(&d, c(0.0, 0.0), 1).unwrap() - 1.0).norm() < 1e-12);
    assert!((theta_fourier(&d, c(0.5, 0.0), 1).unwrap() - 0.75).norm() < 1e-12);
    for g in [c(0.0, 0.0), c(0.4, 0.3), c(-0.7, 0.1)] {
        assert!(theta_fourier(&two_atoms(), g, 1).unwrap().norm() < 1e-12);
    }
}

#[test]
fn taylor_of_density_measure() {
    // w = 1 + ½cos t: Rμ = 1 + z/4, θ₀ = z/(4 + z)
    let mu = CircleMeasure::from_density_fn(256, |t| 1.0 + 0.5 * t.cos()).unwrap();
    let cf = CharFunction::new(&mu, c(0.0, 0.0)).unwrap();
    assert!(cf.rational().is_none());
    assert!((cf.taylor_coefficient(1).unwrap() - 0.25).norm() < 1e-12);
    assert!((cf.taylor_coefficient(2).unwrap() + 1.0 / 16.0).norm() < 1e-12);
}

#[test]
fn blaschke_constructor_checks() {
    assert!(RationalInner::new(vec![c(1.0, 0.0)], c(1.0, 0.0)).is_err());
    assert!(RationalInner::new(vec![c(0.5, 0.0)], c(2.0, 0.0)).is_err());
    let m = RationalInner::mobius(c(0.5, 0.0)).unwrap();
    assert!((m.eval_polynomial(c(0.2, 0.3)) - m.eval(c(0.2, 0.3))).norm() < 1e-15);
}

#[test]
fn unimodular_solutions_of_square() {
    let th = RationalInner::monomial(2);
    let ts = th.unimodular_solutions(c(-1.0, 0.0)).unwrap();
    assert_eq!(ts.len(), 2);
    assert!((ts[0] - PI / 2.0).abs() < 1e-13);
    assert!((ts[1] - 3.0 * PI / 2.0).abs() < 1e-13);
}
