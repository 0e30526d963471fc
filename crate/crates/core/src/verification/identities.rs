//! Exact vector-calculus identities of x×∇ checked on random polynomials.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::polynomial::{Poly, PolyVec};
use crate::Vec3;

/// Maximum absolute defect of each identity over all trials.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub trials: usize,
    pub degree: u32,
    pub defects: BTreeMap<String, f64>,
}

impl IdentityReport {
    pub fn max_defect(&self) -> f64 {
        self.defects.values().fold(0.0, |m, d| m.max(*d))
    }
}

/// Lhs − rhs of every identity, as scalar or vector polynomials.
enum Defect {
    Scalar(Poly),
    Vector(PolyVec),
}

fn identities(u: &Poly, alpha: f64, c: f64) -> Vec<(&'static str, Defect)> {
    let x = PolyVec::position();
    let rot = u.rotational();
    let lb = u.laplace_beltrami();
    let curl_rot = rot.curl();
    vec![
        ("div_rotational", Defect::Scalar(rot.divergence())),
        ("x_dot_rotational", Defect::Scalar(x.dot(&rot))),
        (
            "rotational_squared",
            Defect::Scalar(rot.rotational_dot() - lb.clone()),
        ),
        (
            "laplace_beltrami_commutes",
            Defect::Vector(rot.map(|p| p.laplace_beltrami()) - lb.rotational()),
        ),
        (
            "x_cross_rotational",
            Defect::Vector(
                x.cross(&rot) - (x.scale_by(&u.euler()) - u.grad().scale_by(&x.dot(&x))),
            ),
        ),
        (
            "div_x_cross_rotational",
            Defect::Scalar(x.cross(&rot).divergence() + lb.clone()),
        ),
        (
            "curl_rotational",
            Defect::Vector(
                curl_rot.clone()
                    - (x.scale_by(&u.laplacian())
                        - u.grad().map(|p| p.euler())
                        - u.grad().map(|p| p.scale(2.0))),
            ),
        ),
        ("div_curl_rotational", Defect::Scalar(curl_rot.divergence())),
        (
            "x_dot_curl_rotational",
            Defect::Scalar(x.dot(&curl_rot) - lb),
        ),
        (
            "sturm_liouville_commutes",
            Defect::Vector(
                rot.map(|p| p.sturm_liouville(alpha, c)) - u.sturm_liouville(alpha, c).rotational(),
            ),
        ),
    ]
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let x = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if x.norm_squared() < 1.0 {
            return x;
        }
    }
}

/// Runs every identity on `trials` random polynomials of degree ≤ `degree`,
/// each evaluated at one random point of the ball.
pub fn identity_suite(seed: u64, trials: usize, degree: u32) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut defects = BTreeMap::new();
    for _ in 0..trials {
        let u = Poly::random(&mut rng, degree);
        let alpha = rng.gen_range(-0.9..3.0);
        let c = rng.gen_range(0.0..10.0);
        let x = random_point(&mut rng);
        for (name, d) in identities(&u, alpha, c) {
            let v = match d {
                Defect::Scalar(p) => p.eval(&x).abs(),
                Defect::Vector(p) => p.eval(&x).amax(),
            };
            let e = defects.entry(name.to_string()).or_insert(0.0f64);
            *e = e.max(v);
        }
    }
    IdentityReport {
        seed,
        trials,
        degree,
        defects,
    }
}
