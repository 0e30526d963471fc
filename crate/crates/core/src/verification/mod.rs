//! Quadrature checks of the integral eigen-relations, orthogonality and the
//! vector-calculus identities.
//!
//! The eigenvalue λ is estimated from the ratio
//! `ρ(x) = F_c[ψ⃗](x)·ψ⃗(x) / |ψ⃗(x)|²`, which should equal (−i)^{n+2k} λ at
//! every point. μ is estimated the same way from F_c* F_c ψ⃗.

mod gram;
mod identities;
pub mod polynomial;
mod transform;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use gram::{gram_scalar, gram_vector};
pub use identities::{identity_suite, IdentityReport};
pub use transform::{
    finite_fourier_transform, finite_fourier_transform_scalar, transform_on_rule,
    transform_samples, CVec3, Sign,
};

use crate::pswf::{ModeIndex, VectorPswf};
use crate::quadrature::BallQuadratureRule;
use crate::special_functions::{vector_spherical_harmonic, SphericalDirection, VshFamily};
use crate::{Error, Result, Vec3};

/// Pilot points drawn before selecting evaluation points.
const PILOT_SIZE: usize = 200;
/// Evaluation points must beat this quantile of |ψ⃗| over the pilot set.
const PILOT_QUANTILE: f64 = 0.3;

/// `count` deterministic interior points where |ψ⃗| is not small.
///
/// Pilot points are uniform in {|x| ≤ 0.9} away from the polar axis; the
/// first `count` whose |ψ⃗| exceeds the pilot's 30th percentile are kept.
pub fn sample_points(v: &VectorPswf, count: usize, seed: u64) -> Result<Vec<Vec3>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pilot = Vec::with_capacity(PILOT_SIZE);
    while pilot.len() < PILOT_SIZE.max(count) {
        let x = Vec3::new(
            rng.gen_range(-0.9..0.9),
            rng.gen_range(-0.9..0.9),
            rng.gen_range(-0.9..0.9),
        );
        if x.norm() <= 0.9 && x.x.hypot(x.y) >= 0.1 {
            pilot.push((x, v.eval(&x)?.norm()));
        }
    }
    let mut mags: Vec<f64> = pilot.iter().map(|(_, m)| *m).collect();
    mags.sort_by(f64::total_cmp);
    let threshold = mags[(PILOT_QUANTILE * mags.len() as f64) as usize];
    let chosen: Vec<Vec3> = pilot
        .into_iter()
        .filter(|(_, m)| *m > threshold)
        .map(|(x, _)| x)
        .take(count)
        .collect();
    if chosen.len() < count || threshold <= 0.0 {
        return Err(Error::Sampling(format!(
            "only {} usable points out of {count}",
            chosen.len()
        )));
    }
    Ok(chosen)
}

/// ψ⃗ at every node of `rule`, using its radial × angular factorization.
pub fn samples_on_rule(v: &VectorPswf, rule: &BallQuadratureRule) -> Result<Vec<Vec3>> {
    let m_phi = rule.sizes.m_phi;
    let dphi = 2.0 * PI / m_phi as f64;
    let mut angular = Vec::with_capacity(rule.polar.len() * m_phi);
    for (u, _) in &rule.polar {
        for q in 0..m_phi {
            let dir = SphericalDirection::new(u.acos(), q as f64 * dphi)?;
            angular.push(vector_spherical_harmonic(
                v.mode().spherical_index(),
                VshFamily::Toroidal,
                &dir,
            )?);
        }
    }
    let mut out = Vec::with_capacity(rule.len());
    for (r, _) in &rule.radial {
        let g = v.scalar().radial_profile(*r);
        out.extend(angular.iter().map(|y| y * g));
    }
    Ok(out)
}

fn to_complex(samples: &[Vec3]) -> Vec<CVec3> {
    samples
        .iter()
        .map(|v| [v.x.into(), v.y.into(), v.z.into()])
        .collect()
}

/// Ratios ρ(x) = T(x)·ψ⃗(x)/|ψ⃗(x)|² at the given points.
fn ratios(
    v: &VectorPswf,
    points: &[Vec3],
    transformed: impl Fn(&Vec3) -> Result<CVec3>,
) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(points.len());
    let mut scale: f64 = 0.0;
    let mut values = Vec::with_capacity(points.len());
    for x in points {
        let f = v.eval(x)?;
        scale = scale.max(f.norm());
        values.push(f);
    }
    for (x, f) in points.iter().zip(values) {
        if f.norm() <= 1e-8 * scale {
            continue;
        }
        let t = transformed(x)?;
        let dot = t[0] * f.x + t[1] * f.y + t[2] * f.z;
        out.push(dot / f.norm_squared());
    }
    if out.is_empty() {
        return Err(Error::Sampling("ψ⃗ vanishes at every sample point".into()));
    }
    Ok(out)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Angle of z relative to (−i)^p, wrapped into (−π, π].
fn phase_offset(z: Complex64, p: usize) -> f64 {
    let d = z.arg() + p as f64 * PI / 2.0;
    let w = d.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Result of the ratio estimator for λ.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaEstimate {
    /// Median of |ρ|.
    pub lambda: f64,
    /// max | |ρ| − λ | / λ.
    pub dispersion: f64,
    /// max |arg ρ + (n+2k)π/2| wrapped to (−π, π].
    pub phase_error: f64,
    #[serde(skip)]
    pub ratios: Vec<Complex64>,
}

/// λ from F_c[ψ⃗](x) at the given points.
pub fn estimate_lambda(
    v: &VectorPswf,
    rule: &BallQuadratureRule,
    points: &[Vec3],
) -> Result<LambdaEstimate> {
    let m = v.mode();
    transform::check_alpha(rule, m.alpha)?;
    let samples = to_complex(&samples_on_rule(v, rule)?);
    let rho = ratios(v, points, |x| {
        transform_samples(&samples, rule, m.c, Sign::Forward, x)
    })?;
    let lambda = median(rho.iter().map(|z| z.norm()).collect());
    let dispersion = rho
        .iter()
        .map(|z| (z.norm() - lambda).abs())
        .fold(0.0, f64::max)
        / lambda;
    let p = m.phase_index();
    let phase_error = rho
        .iter()
        .map(|z| phase_offset(*z, p).abs())
        .fold(0.0, f64::max);
    Ok(LambdaEstimate {
        lambda,
        dispersion,
        phase_error,
        ratios: rho,
    })
}

/// Result of the double-transform estimator for μ.
#[derive(Debug, Clone, Serialize)]
pub struct MuEstimate {
    /// Median of Re ρ.
    pub mu: f64,
    /// max |ρ − μ| / μ, including any imaginary part.
    pub dispersion: f64,
}

/// μ from F_c*[F_c[ψ⃗]] at the given points.
///
/// The inner transform is evaluated at every node of `rule` by ring FFTs,
/// the outer one directly at the points.
pub fn mu_via_double_transform(
    v: &VectorPswf,
    rule: &BallQuadratureRule,
    points: &[Vec3],
) -> Result<MuEstimate> {
    let m = v.mode();
    transform::check_alpha(rule, m.alpha)?;
    let samples = to_complex(&samples_on_rule(v, rule)?);
    let inner = transform_on_rule(&samples, rule, m.c, Sign::Forward)?;
    let rho = ratios(v, points, |x| {
        transform_samples(&inner, rule, m.c, Sign::Adjoint, x)
    })?;
    let mu = median(rho.iter().map(|z| z.re).collect());
    let dispersion = rho.iter().map(|z| (z - mu).norm()).fold(0.0, f64::max) / mu.abs();
    Ok(MuEstimate { mu, dispersion })
}

/// Eigenvalue summary of one divergence-free PSWF.
#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub mode: ModeIndex,
    pub chi: f64,
    pub lambda: f64,
    pub mu: f64,
    pub phase_index: usize,
    pub dispersion: f64,
    pub residuals: BTreeMap<String, f64>,
}

impl EigenReport {
    /// Runs both estimators; `mu_rule` may be smaller than `lambda_rule`
    /// since the double transform costs O(rings²).
    pub fn compute(
        v: &VectorPswf,
        lambda_rule: &BallQuadratureRule,
        mu_rule: &BallQuadratureRule,
        points: &[Vec3],
    ) -> Result<Self> {
        let l = estimate_lambda(v, lambda_rule, points)?;
        let mu = mu_via_double_transform(v, mu_rule, points)?;
        let mut residuals = BTreeMap::new();
        residuals.insert("phase_error".to_string(), l.phase_error);
        residuals.insert("mu_dispersion".to_string(), mu.dispersion);
        residuals.insert(
            "mu_vs_lambda_squared".to_string(),
            (mu.mu - l.lambda * l.lambda).abs() / mu.mu.abs(),
        );
        Ok(Self {
            mode: *v.mode(),
            chi: v.chi(),
            lambda: l.lambda,
            mu: mu.mu,
            phase_index: v.mode().phase_index(),
            dispersion: l.dispersion,
            residuals,
        })
    }
}
