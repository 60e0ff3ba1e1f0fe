mod common;

use std::f64::consts::PI;

use clark_core::cauchy::RadialLimitConfig;
use clark_core::charfn::rational_theta_gamma;
use clark_core::clark::{
    bounded_exterior_transform, clark_measure, clark_measure_report, g_minus, phi_apply_grid, phi_star_matrix,
    phi_star_universal_apply, rigidity_check, v_alpha_matrix, ClarkFamily, SmoothFunction,
};
use clark_core::grid::grid_points;
use clark_core::measure::{circular_distance, CircleMeasure, MeasureFunction};
use clark_core::perturbation::{build_u_gamma, vector_b};
use clark_core::rational::RationalInner;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

type CMatrix = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_atoms() -> CircleMeasure {
    CircleMeasure::atomic(&[(0.0, 0.5), (PI, 0.5)]).unwrap()
}

/// The unique `X` with `X U = M X` and `X b = c`, from the Krylov bases.
fn krylov_solution(u: &CMatrix, b: &DVector<Complex64>, m: &CMatrix, c: &DVector<Complex64>) -> CMatrix {
    let n = b.len();
    let mut kb = CMatrix::zeros(n, n);
    let mut kc = CMatrix::zeros(n, n);
    let (mut vb, mut vc) = (b.clone(), c.clone());
    for j in 0..n {
        kb.set_column(j, &vb);
        kc.set_column(j, &vc);
        vb = u * vb;
        vc = m * vc;
    }
    kc * kb.try_inverse().unwrap()
}

#[test]
fn clark_measures_of_monomials() {
    let m = clark_measure(&RationalInner::monomial(1), c(0.0, 1.0)).unwrap();
    assert_eq!(m.len(), 1);
    assert!(circular_distance(m.atoms()[0].angle, PI / 2.0) < 1e-14 && (m.atoms()[0].mass - 1.0).abs() < 1e-12);

    let m = clark_measure(&RationalInner::monomial(2), c(1.0, 0.0)).unwrap();
    for (a, b) in m.atoms().iter().zip(two_atoms().atoms()) {
        assert!(circular_distance(a.angle, b.angle) < 1e-14 && (a.mass - b.mass).abs() < 1e-12);
    }
}

#[test]
fn clark_measure_rejects_non_unimodular_alpha() {
    assert!(clark_measure(&RationalInner::monomial(2), c(0.5, 0.0)).is_err());
}

#[test]
fn mass_cross_check() {
    let th = RationalInner::new(vec![c(0.0, 0.0), c(0.4, -0.3), c(-0.6, 0.5)], c(1.0, 0.0)).unwrap();
    let r = clark_measure_report(&th, Complex64::from_polar(1.0, 2.2)).unwrap();
    assert!(r.mass_discrepancy < 1e-10 && r.root_residual < 1e-12 && r.system_residual < 1e-10);
    assert!((r.measure.total_mass() - 1.0).abs() < 1e-10);
}

#[test]
fn family_recovers_generator() {
    let mu = CircleMeasure::atomic(&[(0.3, 0.1), (1.7, 0.4), (4.0, 0.5)]).unwrap();
    let fam = ClarkFamily::new(&mu).unwrap();
    let m1 = fam.measure(c(1.0, 0.0)).unwrap();
    for (a, b) in m1.atoms().iter().zip(mu.atoms()) {
        assert!(circular_distance(a.angle, b.angle) < 1e-8 && (a.mass - b.mass).abs() < 1e-8);
    }
}

#[test]
fn phi_star_scalar_case() {
    let op = phi_star_matrix(&CircleMeasure::dirac(0.0), c(0.0, 0.0)).unwrap();
    assert!((op.matrix.matrix[(0, 0)] - 1.0).norm() < 1e-12);
}

#[test]
fn phi_star_matches_krylov_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases = vec![(two_atoms(), c(0.0, 0.0))];
    for n in 1..=6 {
        cases.push((random_atomic(&mut rng, n), random_disc(&mut rng, 0.9)));
    }
    for (mu, g) in cases {
        let op = phi_star_matrix(&mu, g).unwrap();
        let u = build_u_gamma(&mu, g).unwrap().matrix;
        let want = krylov_solution(&u, &vector_b(&mu), op.model.compression(), &op.defects.c);
        assert!((&op.matrix.matrix - want).norm() < 1e-9, "n = {}", mu.len());
        assert!(op.verify().unwrap().max() < 1e-9);
    }
}

#[test]
fn phi_star_of_symmetric_pair_maps_b_to_one() {
    let op = phi_star_matrix(&two_atoms(), c(0.0, 0.0)).unwrap();
    let img = &op.matrix.matrix * vector_b(&two_atoms());
    assert!((img[0] - 1.0).norm() < 1e-12 && img[1].norm() < 1e-12);
}

#[test]
fn commutation_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [1, 3, 5] {
        let op = phi_star_matrix(&random_atomic(&mut rng, n), random_disc(&mut rng, 0.9)).unwrap();
        assert!(op.commutation_residual().unwrap() < 1e-9);
    }
}

#[test]
fn universal_apply_of_one_is_c() {
    let cfg = RadialLimitConfig::default();
    let mu = CircleMeasure::atomic(&[(0.3, 0.2), (2.0, 0.3), (4.0, 0.5)]).unwrap();
    let g = c(0.2, 0.5);
    let op = phi_star_matrix(&mu, g).unwrap();
    let one = SmoothFunction::new(|_| c(1.0, 0.0), |_| c(0.0, 0.0));
    let angles = [0.9, 3.0, 5.5];
    let out = phi_star_universal_apply(&mu, g, &one, &angles, &cfg).unwrap();
    for (v, t) in out.iter().zip(angles) {
        let want = op.model.eval(&op.defects.c, Complex64::from_polar(1.0, t));
        assert!((v[0] - want).norm() < 1e-9 && v[1].norm() < 1e-12);
    }
}

#[test]
fn universal_apply_matches_matrix_column() {
    let cfg = RadialLimitConfig::default();
    let mu = CircleMeasure::atomic(&[(0.3, 0.2), (2.0, 0.3), (4.0, 0.5)]).unwrap();
    let g = c(-0.3, 0.1);
    let op = phi_star_matrix(&mu, g).unwrap();
    let f = |t: f64| Complex64::from_polar(1.0, 2.0 * t) + 0.5;
    let coords = DVector::from_vec(MeasureFunction::from_fn(&mu, f).coordinates(&mu));
    let image = &op.matrix.matrix * coords;
    let sf = SmoothFunction::new(f, |t| Complex64::i() * 2.0 * Complex64::from_polar(1.0, 2.0 * t));
    let angles = [1.0, 2.5, 5.0];
    let out = phi_star_universal_apply(&mu, g, &sf, &angles, &cfg).unwrap();
    for (v, t) in out.iter().zip(angles) {
        assert!((v[0] - op.model.eval(&image, Complex64::from_polar(1.0, t))).norm() < 1e-9);
    }
}

#[test]
fn universal_apply_for_lebesgue() {
    let cfg = RadialLimitConfig::default();
    let leb = CircleMeasure::lebesgue(256);
    let f = SmoothFunction::new(|t| Complex64::from_polar(1.0, t), |t| Complex64::i() * Complex64::from_polar(1.0, t));
    let angles = [0.0, 1.0, 4.0];
    let out = phi_star_universal_apply(&leb, c(0.0, 0.0), &f, &angles, &cfg).unwrap();
    for (v, t) in out.iter().zip(angles) {
        assert!((v[0] - Complex64::from_polar(1.0, t)).norm() < 1e-10 && v[1].norm() < 1e-10);
    }
}

#[test]
fn universal_apply_needs_derivative_on_atoms() {
    let cfg = RadialLimitConfig::default();
    let f = SmoothFunction::without_derivative(|t| c(t, 0.0));
    let r = phi_star_universal_apply(&two_atoms(), c(0.0, 0.0), &f, &[0.0], &cfg);
    assert!(r.is_err());
}

#[test]
fn g_minus_of_one() {
    let cfg = RadialLimitConfig::default();
    let m = 64;
    let pts = grid_points(m);
    let gm = g_minus(&CircleMeasure::dirac(0.0), c(0.0, 0.0), |_| c(1.0, 0.0), m, &cfg).unwrap();
    for ((v, z), e) in gm.values.iter().zip(&pts).zip(&gm.excluded) {
        if !e {
            assert!((v - z.conj()).norm() < 1e-12);
        }
    }
    let mu = CircleMeasure::atomic(&[(0.3, 0.2), (2.0, 0.3), (4.0, 0.5)]).unwrap();
    let g = c(0.4, -0.2);
    let th = rational_theta_gamma(&mu, g).unwrap();
    let s = (1.0 - g.norm_sqr()).sqrt();
    let gm = g_minus(&mu, g, |_| c(1.0, 0.0), m, &cfg).unwrap();
    for ((v, z), e) in gm.values.iter().zip(&pts).zip(&gm.excluded) {
        if !e {
            assert!((v - (th.eval(*z).conj() + g.conj()) / s).norm() < 1e-10);
        }
    }
}

#[test]
fn phi_round_trip_on_atoms() {
    let cfg = RadialLimitConfig::default();
    let mu = CircleMeasure::atomic(&[(0.3, 0.2), (2.0, 0.3), (4.0, 0.5)]).unwrap();
    let op = phi_star_matrix(&mu, c(0.1, 0.6)).unwrap();
    let x = DVector::from_vec(vec![c(1.0, -2.0), c(0.5, 0.0), c(-0.3, 0.7)]);
    let f = op.phi_apply(&(&op.matrix.matrix * &x), &cfg).unwrap();
    for (a, b) in f.coordinates(&mu).iter().zip(x.iter()) {
        assert!((a - b).norm() < 1e-7);
    }
    let op = phi_star_matrix(&CircleMeasure::dirac(0.0), c(0.0, 0.0)).unwrap();
    let f = op.phi_apply(&op.defects.c, &cfg).unwrap();
    assert!((f.coordinates(&op.mu)[0] - 1.0).norm() < 1e-7);
}

#[test]
fn phi_grid_for_lebesgue() {
    let cfg = RadialLimitConfig::default();
    let m = 128;
    let r = phi_apply_grid(&CircleMeasure::lebesgue(m), c(0.0, 0.0), &vec![c(1.0, 0.0); m], &vec![c(0.0, 0.0); m], &cfg)
        .unwrap();
    assert!(r.at_atoms.is_empty());
    assert!(r.on_grid.iter().all(|v| (v.unwrap() - 1.0).norm() < 1e-10));
}

#[test]
fn alpha_variants() {
    let mu = CircleMeasure::atomic(&[(0.3, 0.2), (2.0, 0.3), (4.0, 0.5)]).unwrap();
    let op = phi_star_matrix(&mu, c(0.2, 0.2)).unwrap();
    let a1 = op.alpha_variant(c(1.0, 0.0)).unwrap();
    assert!((&a1.matrix.matrix - &op.matrix.matrix).norm() < 1e-9);

    let op = phi_star_matrix(&CircleMeasure::dirac(0.0), c(0.0, 0.0)).unwrap();
    let a = op.alpha_variant(c(0.0, 1.0)).unwrap();
    assert!((a.matrix.matrix[(0, 0)].norm() - 1.0).abs() < 1e-12);

    let op = phi_star_matrix(&two_atoms(), c(0.0, 0.0)).unwrap();
    let a = op.alpha_variant(c(-1.0, 0.0)).unwrap();
    let v = v_alpha_matrix(&two_atoms(), c(-1.0, 0.0)).unwrap();
    assert!((&a.matrix.matrix - &op.matrix.matrix * v.matrix.matrix.adjoint()).norm() < 1e-9);
    assert!(a.verify(&op).unwrap().max() < 1e-9);
}

#[test]
fn v_alpha_examples() {
    let mu = CircleMeasure::atomic(&[(0.3, 0.2), (2.0, 0.3), (4.0, 0.5)]).unwrap();
    let v = v_alpha_matrix(&mu, c(1.0, 0.0)).unwrap();
    assert!((&v.matrix.matrix - CMatrix::identity(3, 3)).norm() < 1e-14);

    let v = v_alpha_matrix(&CircleMeasure::dirac(0.0), c(0.0, 1.0)).unwrap();
    assert!((v.matrix.matrix[(0, 0)] - 1.0).norm() < 1e-12);
}

#[test]
fn v_alpha_matches_spectral_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut cases = vec![(two_atoms(), c(-1.0, 0.0))];
    for n in 2..=6 {
        cases.push((random_atomic(&mut rng, n), random_unimodular(&mut rng)));
    }
    for (mu, a) in cases {
        let v = v_alpha_matrix(&mu, a).unwrap();
        let u = build_u_gamma(&mu, a).unwrap().matrix;
        let mz = CMatrix::from_diagonal(&DVector::from_vec(v.mu_alpha.points()));
        let want = krylov_solution(&u, &vector_b(&mu), &mz, &vector_b(&v.mu_alpha));
        assert!((&v.matrix.matrix - want).norm() < 1e-9);
        assert!(v.verify().unwrap().max() < 1e-9);
    }
}

#[test]
fn rigidity_examples() {
    let mu = CircleMeasure::atomic(&[(0.3, 0.2), (2.0, 0.3), (4.0, 0.5)]).unwrap();
    let a = c(0.0, -1.0);
    let ma = v_alpha_matrix(&mu, a).unwrap().mu_alpha;
    let rep = rigidity_check(&mu, &ma, a).unwrap();
    assert!(!rep.hypothesis_violated);
    assert!(rep.h_squared.as_ref().unwrap().iter().all(|h| (h - 1.0).abs() < 1e-9));
    assert!(rep.mass_residual.unwrap() < 1e-9);

    let scaled = ma.rescale_atoms(&[1.0, 4.0, 0.25]).unwrap();
    let rep = rigidity_check(&mu, &scaled, a).unwrap();
    let h2 = rep.h_squared.unwrap();
    for (h, f) in h2.iter().zip([1.0, 0.25, 4.0]) {
        assert!((h - f).abs() < 1e-8 * f);
    }
    assert!(rep.mass_residual.unwrap() < 1e-8);

    let rep = rigidity_check(&mu, &ma.remove_atom(1).unwrap(), a).unwrap();
    assert!(rep.kernel_detected && rep.hypothesis_violated && rep.h_squared.is_none());

    assert_eq!(rigidity_check(&mu, &mu, a).unwrap_err().code(), "atom_collision");
}

#[test]
fn exterior_transform_examples() {
    let cfg = RadialLimitConfig::default();
    let leb = CircleMeasure::lebesgue(256);
    let e = bounded_exterior_transform(&leb, |_| c(1.0, 0.0), 256, &cfg).unwrap();
    assert!(e.values.iter().all(|v| v.norm() < 1e-10));

    // δ₁, f ≡ 1: −(1 − z̄)·1/(1 − z) = z̄, which is −1 at z = −1
    let m = 64;
    let e = bounded_exterior_transform(&CircleMeasure::dirac(0.0), |_| c(1.0, 0.0), m, &cfg).unwrap();
    assert!((e.values[m / 2] + 1.0).norm() < 1e-9);
    for ((v, z), ex) in e.values.iter().zip(grid_points(m)).zip(&e.excluded) {
        if !ex {
            assert!((v - z.conj()).norm() < 1e-9);
        }
    }
}
