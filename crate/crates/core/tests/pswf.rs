mod common;

use ballpswf::bouwkamp::{radial_params, solve_degree, truncation_order, Family};
use ballpswf::pswf::fd;
use ballpswf::pswf::*;
use ballpswf::special_functions::{spherical_harmonic, SphericalDirection};
use ballpswf::verification::polynomial::Poly;
use ballpswf::{Error, Vec3};
use common::{explicit_jacobi, fd_rotational};
use proptest::prelude::*;

fn vector(alpha: f64, c: f64, n: usize, k: usize, ell: usize) -> VectorPswf {
    VectorPswf::new(ModeIndex::new(alpha, c, n, k, ell).unwrap()).unwrap()
}

#[test]
fn c_zero_scalar_is_ball_polynomial() {
    let mut rng = common::rng(1);
    for (alpha, n, k, ell) in [
        (0.0, 0, 0, 1),
        (0.0, 1, 0, 1),
        (1.0, 2, 1, 4),
        (2.5, 3, 2, 7),
        (-0.5, 1, 3, 3),
    ] {
        let s = ScalarPswf::new(ModeIndex::new(alpha, 0.0, n, k, ell).unwrap()).unwrap();
        let idx = s.mode().spherical_index();
        for _ in 0..20 {
            let x = common::ball_point(&mut rng, 1.0, 0.01);
            let r = x.norm();
            let want = explicit_jacobi(k, alpha, n as f64 + 0.5, 2.0 * r * r - 1.0)
                * r.powi(n as i32)
                * spherical_harmonic(idx, &SphericalDirection::from_point(&x).unwrap());
            assert!(
                (s.eval(&x).unwrap() - want).abs() < 1e-12,
                "α={alpha} n={n} k={k}"
            );
        }
    }
}

#[test]
fn eval_matches_doubled_term_by_term_sum() {
    let mut rng = common::rng(2);
    for (alpha, c, n, k) in [(0.0, 2.0, 1, 0), (1.0, 5.0, 2, 1), (0.0, 10.0, 3, 2)] {
        let v = vector(alpha, c, n, k, 1);
        let s = v.scalar();
        let big = 2 * truncation_order(n + 2 * k, n, alpha);
        let wide = &solve_degree(n, alpha, c, big, Family::Vector).unwrap()[k];
        let beta_param = radial_params(n, alpha).unwrap().beta();
        for _ in 0..10 {
            let r: f64 = rand::Rng::gen_range(&mut rng, 0.0..1.0);
            let eta = 2.0 * r * r - 1.0;
            let sum: f64 = wide
                .beta
                .iter()
                .enumerate()
                .filter(|(_, b)| b.abs() > 1e-18)
                .map(|(j, b)| b * explicit_jacobi(j, alpha, beta_param, eta))
                .sum();
            let want = sum * r.powi(n as i32);
            assert!(
                (s.radial_profile(r) - want).abs() < 1e-9,
                "c={c} n={n} k={k} r={r}"
            );
        }
    }
}

#[test]
fn vector_field_is_rotational_of_scalar() {
    let mut rng = common::rng(3);
    for (alpha, c, n, k, ell) in [
        (0.0, 2.0, 1, 0, 1),
        (0.0, 2.0, 1, 0, 2),
        (1.0, 10.0, 3, 1, 5),
        (2.5, 4.0, 4, 0, 9),
    ] {
        let v = vector(alpha, c, n, k, ell);
        for _ in 0..20 {
            let x = common::ball_point(&mut rng, 0.95, 0.05);
            let fd = fd_rotational(|y| v.scalar().eval(y).unwrap(), &x, 1e-5);
            let got = v.eval(&x).unwrap();
            assert!(
                (got - fd).norm() < 1e-7 * (1.0 + got.norm()),
                "n={n} ℓ={ell}: {got} vs {fd}"
            );
        }
    }
}

#[test]
fn l_operator_eigen_relation_by_fd() {
    let mut rng = common::rng(4);
    for (alpha, c, n, k, ell) in [
        (0.0, 2.0, 1, 0, 1),
        (1.0, 2.0, 2, 1, 3),
        (0.0, 10.0, 3, 0, 6),
    ] {
        let v = vector(alpha, c, n, k, ell);
        for _ in 0..10 {
            let x = common::ball_point(&mut rng, 0.85, 0.1);
            let lhs = apply_l_fd(&v, &x, 1e-3).unwrap();
            let rhs = v.eval(&x).unwrap() * v.chi();
            assert!(
                (lhs - rhs).norm() < 1e-4 * v.chi() * (1.0 + v.eval(&x).unwrap().norm()),
                "{lhs} vs {rhs}"
            );
        }
    }
}

#[test]
fn radial_l_operator_on_modes() {
    for alpha in [0.0, 1.0] {
        for c in [2.0, 10.0] {
            let v = vector(alpha, c, 2, 1, 1);
            for i in 1..32 {
                let r = i as f64 / 32.0;
                let g = v.scalar().radial_profile(r);
                let lg = apply_l_radial(v.scalar(), r).unwrap();
                assert!((lg - v.chi() * g).abs() <= 1e-9 * v.chi() * g.abs().max(1e-3));
            }
        }
    }
}

#[test]
fn l_commutes_with_rotational_on_polynomials() {
    let mut rng = common::rng(5);
    for _ in 0..5 {
        let u = Poly::random(&mut rng, 4);
        let (alpha, c) = (0.7, 3.0);
        let rot = u.rotational();
        let field = |y: &Vec3| Ok(rot.eval(y));
        let x = common::ball_point(&mut rng, 0.8, 0.1);
        // second differences at h = 1e-3 carry an O(h²) error of a few 1e-6
        let lhs = apply_l_fd_field(&field, alpha, c, &x, 1e-3).unwrap();
        let rhs = u.sturm_liouville(alpha, c).rotational().eval(&x);
        assert!(
            (lhs - rhs).norm() < 2e-5 * (1.0 + rhs.norm()),
            "{} vs {}",
            lhs.transpose(),
            rhs.transpose()
        );
    }
}

#[test]
fn d_operator_shift_is_uniform() {
    let mut rng = common::rng(6);
    for (alpha, c, n, k, ell) in [
        (0.0, 2.0, 1, 0, 1),
        (1.0, 3.0, 2, 1, 2),
        (0.5, 6.0, 3, 0, 7),
    ] {
        let v = vector(alpha, c, n, k, ell);
        let want = v.chi() + 2.0 * alpha + 2.0;
        let mut errs = [0.0f64; 2];
        for _ in 0..8 {
            let x = common::ball_point(&mut rng, 0.8, 0.15);
            let f = v.eval(&x).unwrap();
            if f.norm() < 1e-2 {
                continue;
            }
            for (e, h) in errs.iter_mut().zip([1e-3, 5e-4]) {
                let d = apply_d_fd(&v, &x, h).unwrap();
                *e = e.max((d.dot(&f) / f.norm_squared() - want).abs() / want);
            }
        }
        assert!(errs[0] <= 5e-4, "α={alpha} n={n}: {}", errs[0]);
        assert!(errs[1] < errs[0]);
    }
}

#[test]
fn divergence_free_by_fd() {
    let mut rng = common::rng(7);
    for c in [0.0, 2.0, 10.0] {
        let v = vector(1.0, c, 2, 1, 4);
        for _ in 0..50 {
            let x = common::ball_point(&mut rng, 0.9, 0.05);
            assert!(divergence_fd(&v, &x, 1e-4).unwrap().abs() <= 1e-6);
        }
    }
}

#[test]
fn control_field_divergence() {
    let x = Vec3::new(0.2, -0.3, 0.1);
    let d = fd::divergence(&|y: &Vec3| Ok(*y), &x, 1e-4).unwrap();
    assert!((d - 3.0).abs() < 1e-10);
}

#[test]
fn guards() {
    let v = vector(0.0, 1.0, 1, 0, 1);
    assert!(matches!(
        v.eval(&Vec3::new(0.0, 0.0, 0.5)),
        Err(Error::Pole(_))
    ));
    assert!(matches!(
        v.eval(&Vec3::new(1.0, 1.0, 0.0)),
        Err(Error::Domain(_))
    ));
    assert_eq!(v.eval(&Vec3::zeros()).unwrap(), Vec3::zeros());
    assert!(matches!(
        apply_d_fd(&v, &Vec3::new(0.0, 0.0005, 0.3), 1e-3),
        Err(Error::Pole(_))
    ));
    assert!(matches!(
        divergence_fd(&v, &Vec3::new(0.999, 0.0, 0.0), 1e-3),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        apply_l_radial(v.scalar(), 1.0),
        Err(Error::Domain(_))
    ));
}

proptest! {
    #[test]
    fn vector_field_is_tangential(theta in 0.05f64..3.09, phi in 0.0f64..std::f64::consts::TAU, r in 0.05f64..1.0, n in 1usize..6, ell_seed in 0usize..64) {
        let ell = 1 + ell_seed % (2 * n + 1);
        let v = vector(0.5, 3.0, n, 0, ell);
        let x = SphericalDirection::new(theta, phi).unwrap().unit_vector() * r;
        let f = v.eval(&x).unwrap();
        prop_assert!(f.dot(&x).abs() <= 1e-14 * (1.0 + f.norm()));
    }
}
