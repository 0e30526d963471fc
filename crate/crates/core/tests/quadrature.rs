mod common;

use std::f64::consts::PI;

use approx::assert_relative_eq;
use ballpswf::pswf::{ModeIndex, ScalarPswf};
use ballpswf::quadrature::{
    ball_rule, gauss_jacobi, gauss_legendre, sphere_rule, BallQuadratureRule, BallRuleSizes,
};
use ballpswf::special_functions::{
    jacobi_eval, spherical_harmonic, JacobiParams, SphericalDirection, SphericalIndex,
};
use ballpswf::Vec3;
use proptest::prelude::*;
use statrs::function::gamma::gamma;

/// ∫_B x^a y^b z^c (1−|x|²)^α dx in closed form.
fn weighted_monomial_integral(a: u32, b: u32, c: u32, alpha: f64) -> f64 {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return 0.0;
    }
    let (ha, hb, hc) = (
        (a as f64 + 1.0) / 2.0,
        (b as f64 + 1.0) / 2.0,
        (c as f64 + 1.0) / 2.0,
    );
    let sphere = 2.0 * gamma(ha) * gamma(hb) * gamma(hc) / gamma(ha + hb + hc);
    let d = (a + b + c) as f64;
    // ∫_0^1 r^{d+2} (1−r²)^α dr = B((d+3)/2, α+1)/2
    let radial =
        0.5 * gamma((d + 3.0) / 2.0) * gamma(alpha + 1.0) / gamma((d + 3.0) / 2.0 + alpha + 1.0);
    sphere * radial
}

proptest! {
    #[test]
    fn ball_rule_exact_on_random_monomials(a in 0u32..6, b in 0u32..6, c in 0u32..6, alpha in -0.9f64..3.0) {
        // joint degree: 4 m_r − 1 radial, 2 m_θ − 1 polar, m_φ − 1 azimuthal
        let rule = ball_rule(alpha, 5, 9, 18).unwrap();
        let got = rule.integrate(|x| x.x.powi(a as i32) * x.y.powi(b as i32) * x.z.powi(c as i32));
        let want = weighted_monomial_integral(a, b, c, alpha);
        prop_assert!((got - want).abs() <= 1e-12 * want.abs() + 1e-14, "{} vs {}", got, want);
    }

    #[test]
    fn gauss_jacobi_exact_to_degree(m in 1usize..20, alpha in -0.9f64..3.0, beta in -0.9f64..3.0) {
        let p = JacobiParams::new(alpha, beta).unwrap();
        let rule = gauss_jacobi(m, p).unwrap();
        prop_assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(rule.weights.iter().all(|w| *w > 0.0));
        // J_{2m−1} is orthogonal to constants; the weight sum is a beta integral.
        let top = rule.integrate(|x| jacobi_eval(2 * m - 1, p, x).unwrap());
        prop_assert!(top.abs() <= 1e-10);
        let total: f64 = rule.weights.iter().sum();
        let want = 2f64.powf(alpha + beta + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(alpha + beta + 2.0);
        prop_assert!((total - want).abs() <= 1e-12 * want);
    }
}

#[test]
fn jacobi_weight_sum_closed_form() {
    let rule = gauss_jacobi(7, JacobiParams::new(0.0, 1.5).unwrap()).unwrap();
    let total: f64 = rule.weights.iter().sum();
    assert_relative_eq!(total, 0.4 * 2f64.powf(2.5), max_relative = 1e-14);
}

#[test]
fn legendre_small_cases() {
    let r = gauss_legendre(2).unwrap();
    assert_relative_eq!(r.nodes[1], 1.0 / 3f64.sqrt(), max_relative = 1e-15);
    assert_relative_eq!(r.weights[0], 1.0, max_relative = 1e-15);
}

#[test]
fn ball_polynomial_has_unit_norm() {
    let rule = ball_rule(0.0, 8, 8, 16).unwrap();
    let p = ScalarPswf::new(ModeIndex::new(0.0, 0.0, 1, 0, 1).unwrap()).unwrap();
    let norm = rule.integrate(|x| p.eval(x).unwrap().powi(2));
    assert!((norm - 1.0).abs() < 1e-10, "{norm}");
    // Independent form: J_0^{(0,3/2)} r Y¹₁.
    let jp = JacobiParams::new(0.0, 1.5).unwrap();
    let idx = SphericalIndex::new(1, 1).unwrap();
    let direct = rule.integrate(|x| {
        let r = x.norm();
        let v = jacobi_eval(0, jp, 2.0 * r * r - 1.0).unwrap()
            * r
            * spherical_harmonic(idx, &SphericalDirection::from_point(x).unwrap());
        v * v
    });
    assert!((direct - 1.0).abs() < 1e-10);
}

#[test]
fn sphere_rule_normalizes_harmonic() {
    let rule = sphere_rule(6, 12).unwrap();
    let idx = SphericalIndex::new(2, 3).unwrap();
    let v = rule.integrate(|x| {
        spherical_harmonic(idx, &SphericalDirection::from_point(x).unwrap()).powi(2)
    });
    assert!((v - 1.0).abs() < 1e-13);
    assert!((rule.integrate(|_| 1.0) - 4.0 * PI).abs() < 1e-13);
}

#[test]
fn odd_monomials_vanish() {
    let rule = ball_rule(1.5, 6, 6, 12).unwrap();
    for f in [
        |x: &Vec3| x.x,
        |x: &Vec3| x.y * x.z * x.z,
        |x: &Vec3| x.x * x.y * x.z,
    ] {
        assert!(rule.integrate(f).abs() < 1e-14);
    }
}

#[test]
fn vector_integration_componentwise() {
    let rule = ball_rule(0.0, 6, 6, 8).unwrap();
    let v = rule.integrate_vec(|x| Vec3::new(1.0, x.x * x.x, x.y));
    assert_relative_eq!(v.x, 4.0 * PI / 3.0, max_relative = 1e-12);
    assert_relative_eq!(v.y, 4.0 * PI / 15.0, max_relative = 1e-12);
    assert!(v.z.abs() < 1e-14);
}

#[test]
fn rule_invariants() {
    for alpha in [-0.5, 0.0, 2.5] {
        let rule = BallQuadratureRule::with_sizes(alpha, BallRuleSizes::new(5, 4, 7)).unwrap();
        assert_eq!(rule.len(), 5 * 4 * 7);
        assert!(rule.weights.iter().all(|w| *w > 0.0));
        assert!(rule.points.iter().all(|x| x.norm() < 1.0));
        let mass = PI.powf(1.5) * gamma(alpha + 1.0) / gamma(alpha + 2.5);
        assert_relative_eq!(rule.integrate(|_| 1.0), mass, max_relative = 1e-10);
    }
    assert!(ball_rule(0.0, 0, 1, 1).is_err());
}

#[test]
fn doubling_is_stable_for_smooth_integrand() {
    let sizes = BallRuleSizes::new(12, 12, 24);
    let f = |x: &Vec3| (3.0 * x.x - x.y * x.z).cos() * (1.0 + x.z * x.z);
    let a = BallQuadratureRule::with_sizes(1.0, sizes)
        .unwrap()
        .integrate(f);
    let b = BallQuadratureRule::with_sizes(1.0, sizes.doubled())
        .unwrap()
        .integrate(f);
    assert!((a - b).abs() < 1e-12 * b.abs());
}
