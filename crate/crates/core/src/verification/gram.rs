//! Weighted Gram matrices of PSWF families by ball quadrature.
//!
//! Every PSWF is a radial factor times an angular factor, so the tensor rule
//! sum Σ_{i,j} w_i w_j ψ_a(x_ij)·ψ_b(x_ij) splits exactly into a radial sum
//! times a sphere sum. This evaluates the same quadrature at a fraction of
//! the cost.

use nalgebra::DMatrix;

use super::transform::check_alpha;
use crate::pswf::{ScalarPswf, VectorPswf};
use crate::quadrature::BallQuadratureRule;
use crate::special_functions::{
    angular_parts, vector_spherical_harmonic, SphericalDirection, VshFamily,
};
use crate::{Error, Result, Vec3};

fn check_family<'a>(
    mut modes: impl Iterator<Item = &'a ScalarPswf>,
    rule: &BallQuadratureRule,
) -> Result<()> {
    let Some(first) = modes.next() else {
        return Ok(());
    };
    let (alpha, c) = (first.mode().alpha, first.mode().c);
    for m in modes {
        if m.mode().alpha != alpha || m.mode().c != c {
            return Err(Error::Config(format!(
                "Gram matrix needs one (alpha, c); got ({alpha}, {c}) and ({}, {})",
                m.mode().alpha,
                m.mode().c
            )));
        }
    }
    check_alpha(rule, alpha)
}

/// Sphere directions of the rule, polar-major then azimuth.
fn sphere_directions(rule: &BallQuadratureRule) -> Vec<(SphericalDirection, f64)> {
    let dphi = 2.0 * std::f64::consts::PI / rule.sizes.m_phi as f64;
    rule.polar
        .iter()
        .flat_map(|(u, wu)| {
            (0..rule.sizes.m_phi).map(move |q| {
                (
                    SphericalDirection::new(u.acos(), q as f64 * dphi)
                        .expect("polar node in range"),
                    wu * dphi,
                )
            })
        })
        .collect()
}

fn radial_samples(s: &ScalarPswf, rule: &BallQuadratureRule) -> Vec<f64> {
    rule.radial
        .iter()
        .map(|(r, _)| s.radial_profile(*r))
        .collect()
}

fn assemble(
    radial: &[Vec<f64>],
    rule: &BallQuadratureRule,
    angular: &[Vec<f64>],
    sphere_w: &[f64],
    dim: usize,
) -> DMatrix<f64> {
    let n = radial.len();
    DMatrix::from_fn(n, n, |a, b| {
        let rad: f64 = rule
            .radial
            .iter()
            .enumerate()
            .map(|(i, (_, w))| w * radial[a][i] * radial[b][i])
            .sum();
        let ang: f64 = sphere_w
            .iter()
            .enumerate()
            .map(|(j, w)| {
                w * (0..dim)
                    .map(|d| angular[a][dim * j + d] * angular[b][dim * j + d])
                    .sum::<f64>()
            })
            .sum();
        rad * ang
    })
}

/// G_ab = ∫_B ψ_a ψ_b (1−|x|²)^α dx.
pub fn gram_scalar(modes: &[ScalarPswf], rule: &BallQuadratureRule) -> Result<DMatrix<f64>> {
    check_family(modes.iter(), rule)?;
    let dirs = sphere_directions(rule);
    let radial: Vec<Vec<f64>> = modes.iter().map(|s| radial_samples(s, rule)).collect();
    let angular: Vec<Vec<f64>> = modes
        .iter()
        .map(|s| {
            dirs.iter()
                .map(|(d, _)| angular_parts(s.mode().spherical_index(), d).value)
                .collect()
        })
        .collect();
    let w: Vec<f64> = dirs.iter().map(|(_, w)| *w).collect();
    Ok(assemble(&radial, rule, &angular, &w, 1))
}

/// G_ab = ∫_B ψ⃗_a·ψ⃗_b (1−|x|²)^α dx.
pub fn gram_vector(modes: &[VectorPswf], rule: &BallQuadratureRule) -> Result<DMatrix<f64>> {
    check_family(modes.iter().map(|v| v.scalar()), rule)?;
    let dirs = sphere_directions(rule);
    let radial: Vec<Vec<f64>> = modes
        .iter()
        .map(|v| radial_samples(v.scalar(), rule))
        .collect();
    let angular = modes
        .iter()
        .map(|v| {
            let mut out = Vec::with_capacity(3 * dirs.len());
            for (d, _) in &dirs {
                let y: Vec3 =
                    vector_spherical_harmonic(v.mode().spherical_index(), VshFamily::Toroidal, d)?;
                out.extend(y.iter());
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let w: Vec<f64> = dirs.iter().map(|(_, w)| *w).collect();
    Ok(assemble(&radial, rule, &angular, &w, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pswf::ModeIndex;
    use crate::quadrature::ball_rule;

    #[test]
    fn mixed_parameters_rejected() {
        let a = ScalarPswf::new(ModeIndex::new(0.0, 1.0, 1, 0, 1).unwrap()).unwrap();
        let b = ScalarPswf::new(ModeIndex::new(0.0, 2.0, 1, 0, 1).unwrap()).unwrap();
        let rule = ball_rule(0.0, 4, 4, 8).unwrap();
        assert!(matches!(
            gram_scalar(&[a.clone(), b], &rule),
            Err(Error::Config(_))
        ));
        let rule1 = ball_rule(1.0, 4, 4, 8).unwrap();
        assert!(matches!(gram_scalar(&[a], &rule1), Err(Error::Config(_))));
    }

    #[test]
    fn separable_sum_equals_tensor_sum() {
        let rule = ball_rule(0.5, 10, 8, 12).unwrap();
        let a = VectorPswf::new(ModeIndex::new(0.5, 2.0, 2, 0, 4).unwrap()).unwrap();
        let b = VectorPswf::new(ModeIndex::new(0.5, 2.0, 2, 1, 4).unwrap()).unwrap();
        let g = gram_vector(&[a.clone(), b.clone()], &rule).unwrap();
        let direct = rule.integrate(|x| a.eval(x).unwrap().dot(&b.eval(x).unwrap()));
        assert!((g[(0, 1)] - direct).abs() < 1e-13);
        let aa = rule.integrate(|x| a.eval(x).unwrap().norm_squared());
        assert!((g[(0, 0)] - aa).abs() < 1e-12 * aa);
    }
}
