//! Verification checks run by `ballpswf verify`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bouwkamp::{
    build_matrix, residual, solve_degree, solve_modes, truncation_order, Family, ModeTable,
};
use crate::pswf::{apply_d_fd, apply_l_radial, divergence_fd, ScalarPswf, VectorPswf};
use crate::quadrature::{BallQuadratureRule, BallRuleSizes};
use crate::special_functions::SphericalIndex;
use crate::verification::{
    estimate_lambda, gram_scalar, gram_vector, identity_suite, mu_via_double_transform,
    sample_points, EigenReport,
};
use crate::{Error, Result, Vec3};

/// Names accepted by `--checks`.
pub const ALL_CHECKS: &[&str] = &[
    "identities",
    "ordering",
    "residual",
    "truncation",
    "radial",
    "d-operator",
    "divergence",
    "gram-scalar",
    "gram-vector",
    "lambda",
];

pub const IDENTITY_TOL: f64 = 1e-12;
pub const MATRIX_RESIDUAL_TOL: f64 = 1e-11;
pub const TAIL_TOL: f64 = 1e-12;
pub const TRUNCATION_TOL: f64 = 1e-10;
pub const RADIAL_TOL: f64 = 1e-9;
pub const D_SHIFT_TOL: f64 = 5e-4;
pub const D_STEP: f64 = 1e-3;
/// Accepted range of error(h) / error(h/2).
pub const D_HALVING_BAND: (f64, f64) = (3.5, 4.5);
pub const DIVERGENCE_TOL: f64 = 1e-6;
pub const DIVERGENCE_STEP: f64 = 1e-4;
pub const GRAM_TOL: f64 = 1e-8;
pub const LAMBDA_DISPERSION_TOL: f64 = 1e-5;
pub const PHASE_TOL: f64 = 1e-6;
pub const MU_TOL: f64 = 1e-5;

/// Inputs shared by all checks.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub alpha: f64,
    pub c: f64,
    pub max_degree: usize,
    pub quadrature: BallRuleSizes,
    /// Rule for the inner transform of μ, whose cost grows with (m_r·m_θ)².
    pub mu_quadrature: BallRuleSizes,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
    pub details: Value,
}

impl CheckResult {
    fn new(name: &str, value: f64, tolerance: f64, details: Value) -> Self {
        // NaN never passes.
        Self {
            name: name.to_string(),
            passed: value <= tolerance,
            value,
            tolerance,
            details,
        }
    }
}

/// Runs the named checks in order.
pub fn run_checks(cfg: &VerifyConfig, names: &[String]) -> Result<Vec<CheckResult>> {
    let table = solve_modes(cfg.max_degree, cfg.alpha, cfg.c)?;
    names
        .iter()
        .map(|name| match name.as_str() {
            "identities" => Ok(check_identities(cfg)),
            "ordering" => Ok(check_ordering(&table)),
            "residual" => check_residual(cfg, &table),
            "truncation" => check_truncation(cfg, &table),
            "radial" => check_radial(&table),
            "d-operator" => check_d_operator(cfg, &table),
            "divergence" => check_divergence(cfg, &table),
            "gram-scalar" => check_gram_scalar(cfg),
            "gram-vector" => check_gram_vector(cfg, &table),
            "lambda" => check_lambda(cfg, &table),
            other => Err(Error::Parameter(format!(
                "unknown check {other:?}; expected one of {}",
                ALL_CHECKS.join(", ")
            ))),
        })
        .collect()
}

fn check_identities(cfg: &VerifyConfig) -> CheckResult {
    let report = identity_suite(cfg.seed, 100, 6);
    CheckResult::new(
        "identities",
        report.max_defect(),
        IDENTITY_TOL,
        json!(report.defects),
    )
}

fn check_ordering(table: &ModeTable) -> CheckResult {
    let mut violations = Vec::new();
    for e in table.iter() {
        if let Some(next) = table.get(e.n, e.k + 1) {
            if next.chi <= e.chi {
                violations.push(json!({"n": e.n, "k": e.k, "chi": e.chi, "chi_next": next.chi}));
            }
        }
    }
    CheckResult::new(
        "ordering",
        violations.len() as f64,
        0.0,
        json!({ "violations": violations }),
    )
}

fn check_residual(cfg: &VerifyConfig, table: &ModeTable) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut worst_tail: f64 = 0.0;
    for e in table.iter() {
        let trunc = truncation_order(cfg.max_degree, e.n, cfg.alpha);
        let t = build_matrix(e.n, cfg.alpha, cfg.c, trunc, Family::Vector)?;
        worst = worst.max(residual(&t, e.chi, &e.beta)? / t.norm());
        worst_tail = worst_tail.max(e.tail());
    }
    let value = (worst / MATRIX_RESIDUAL_TOL).max(worst_tail / TAIL_TOL);
    Ok(CheckResult::new(
        "residual",
        value,
        1.0,
        json!({"max_relative_residual": worst, "residual_tolerance": MATRIX_RESIDUAL_TOL,
               "max_tail": worst_tail, "tail_tolerance": TAIL_TOL}),
    ))
}

fn check_truncation(cfg: &VerifyConfig, table: &ModeTable) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for n in 1..=cfg.max_degree {
        let doubled = solve_degree(
            n,
            cfg.alpha,
            cfg.c,
            2 * truncation_order(cfg.max_degree, n, cfg.alpha),
            Family::Vector,
        )?;
        for e in table.iter().filter(|e| e.n == n) {
            worst = worst.max((doubled[e.k].chi - e.chi).abs() / e.chi.abs().max(1.0));
        }
    }
    Ok(CheckResult::new(
        "truncation",
        worst,
        TRUNCATION_TOL,
        json!({"max_relative_change": worst}),
    ))
}

/// Chebyshev points of (0, 1).
pub fn chebyshev_radii(count: usize) -> Vec<f64> {
    (0..count)
        .map(|j| 0.5 * (1.0 + ((2 * j + 1) as f64 * PI / (2 * count) as f64).cos()))
        .collect()
}

/// max_r |𝓛g − χg| / max_r |χg| over 32 Chebyshev radii.
pub fn radial_residual(s: &ScalarPswf) -> Result<f64> {
    let mut num: f64 = 0.0;
    let mut den: f64 = 0.0;
    for r in chebyshev_radii(32) {
        let g = s.radial_profile(r);
        num = num.max((apply_l_radial(s, r)? - s.chi() * g).abs());
        den = den.max((s.chi() * g).abs());
    }
    Ok(num / den)
}

fn scalar_of(e: &crate::bouwkamp::RadialExpansion) -> Result<ScalarPswf> {
    ScalarPswf::from_expansion(e.clone(), 1)
}

fn vector_of(e: &crate::bouwkamp::RadialExpansion, ell: usize) -> Result<VectorPswf> {
    VectorPswf::from_scalar(ScalarPswf::from_expansion(e.clone(), ell)?)
}

fn check_radial(table: &ModeTable) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut per_mode = Vec::new();
    for e in table.iter() {
        let r = radial_residual(&scalar_of(e)?)?;
        per_mode.push(json!({"n": e.n, "k": e.k, "residual": r}));
        worst = worst.max(r);
    }
    Ok(CheckResult::new(
        "radial",
        worst,
        RADIAL_TOL,
        json!(per_mode),
    ))
}

/// Max relative deviation of (𝓓ψ⃗)·ψ⃗/|ψ⃗|² from χ + 2α + 2.
pub fn d_shift_error(v: &VectorPswf, points: &[Vec3], h: f64) -> Result<f64> {
    let m = v.mode();
    let expected = v.chi() + 2.0 * m.alpha + 2.0;
    let mut worst: f64 = 0.0;
    for x in points {
        let f = v.eval(x)?;
        let ratio = apply_d_fd(v, x, h)?.dot(&f) / f.norm_squared();
        worst = worst.max((ratio - expected).abs() / expected.abs());
    }
    Ok(worst)
}

fn check_d_operator(cfg: &VerifyConfig, table: &ModeTable) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut worst_order = f64::INFINITY;
    let mut best_order: f64 = 0.0;
    let mut per_mode = Vec::new();
    for e in table.iter() {
        let v = vector_of(e, 1)?;
        let pts = sample_points(&v, 5, cfg.seed)?;
        let err_h = d_shift_error(&v, &pts, D_STEP)?;
        let err_h2 = d_shift_error(&v, &pts, D_STEP / 2.0)?;
        let order = err_h / err_h2;
        per_mode.push(
            json!({"n": e.n, "k": e.k, "error_h": err_h, "error_h_half": err_h2, "ratio": order}),
        );
        worst = worst.max(err_h);
        worst_order = worst_order.min(order);
        best_order = best_order.max(order);
    }
    let mut res = CheckResult::new(
        "d-operator",
        worst,
        D_SHIFT_TOL,
        json!({"h": D_STEP, "min_halving_ratio": worst_order, "max_halving_ratio": best_order, "modes": per_mode}),
    );
    // Second-order differences must shrink the error about fourfold per halving.
    res.passed &= worst_order >= D_HALVING_BAND.0 && best_order <= D_HALVING_BAND.1;
    Ok(res)
}

/// Uniform points with |x| ≤ 0.95 and distance ≥ 0.01 from the polar axis.
pub fn interior_points(count: usize, seed: u64) -> Vec<Vec3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = Vec3::new(
            rng.gen_range(-0.95..0.95),
            rng.gen_range(-0.95..0.95),
            rng.gen_range(-0.95..0.95),
        );
        if x.norm() <= 0.95 && x.x.hypot(x.y) >= 0.01 {
            out.push(x);
        }
    }
    out
}

fn check_divergence(cfg: &VerifyConfig, table: &ModeTable) -> Result<CheckResult> {
    let pts = interior_points(200, cfg.seed);
    let mut worst: f64 = 0.0;
    for e in table.iter() {
        for ell in 1..=2 * e.n + 1 {
            let v = vector_of(e, ell)?;
            for x in &pts {
                worst = worst.max(divergence_fd(&v, x, DIVERGENCE_STEP)?.abs());
            }
        }
    }
    Ok(CheckResult::new(
        "divergence",
        worst,
        DIVERGENCE_TOL,
        json!({"h": DIVERGENCE_STEP, "points": pts.len()}),
    ))
}

/// Max deviation of `g` from `target`, and the change under a doubled rule.
fn gram_defect(g: &nalgebra::DMatrix<f64>, target: impl Fn(usize) -> f64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let t = if i == j { target(i) } else { 0.0 };
            worst = worst.max((g[(i, j)] - t).abs());
        }
    }
    worst
}

fn all_scalar_modes(cfg: &VerifyConfig) -> Result<Vec<ScalarPswf>> {
    let table = crate::bouwkamp::solve_modes_for(cfg.max_degree, cfg.alpha, cfg.c, Family::Scalar)?;
    let mut out = Vec::new();
    for e in table.iter() {
        for idx in SphericalIndex::all_of_degree(e.n) {
            out.push(ScalarPswf::from_expansion(e.clone(), idx.ell())?);
        }
    }
    Ok(out)
}

/// Every (n, k, ℓ) vector mode of the table.
pub fn all_vector_modes(table: &ModeTable) -> Result<Vec<VectorPswf>> {
    let mut out = Vec::new();
    for e in table.iter() {
        for idx in SphericalIndex::all_of_degree(e.n) {
            out.push(vector_of(e, idx.ell())?);
        }
    }
    Ok(out)
}

fn gram_check(
    name: &str,
    cfg: &VerifyConfig,
    gram: impl Fn(&BallQuadratureRule) -> Result<nalgebra::DMatrix<f64>>,
    target: impl Fn(usize) -> f64 + Copy,
) -> Result<CheckResult> {
    let rule = BallQuadratureRule::with_sizes(cfg.alpha, cfg.quadrature)?;
    let big = BallQuadratureRule::with_sizes(cfg.alpha, cfg.quadrature.doubled())?;
    let g = gram(&rule)?;
    let g2 = gram(&big)?;
    let defect = gram_defect(&g, target);
    let change = (&g - &g2).amax();
    Ok(CheckResult::new(
        name,
        defect.max(change),
        GRAM_TOL,
        json!({"size": g.nrows(), "max_defect": defect, "doubling_change": change}),
    ))
}

fn check_gram_scalar(cfg: &VerifyConfig) -> Result<CheckResult> {
    let modes = all_scalar_modes(cfg)?;
    gram_check(
        "gram-scalar",
        cfg,
        |rule| gram_scalar(&modes, rule),
        |_| 1.0,
    )
}

fn check_gram_vector(cfg: &VerifyConfig, table: &ModeTable) -> Result<CheckResult> {
    let modes = all_vector_modes(table)?;
    let diag: Vec<f64> = modes
        .iter()
        .map(|v| (v.mode().n * (v.mode().n + 1)) as f64)
        .collect();
    let mut res = gram_check(
        "gram-vector",
        cfg,
        |rule| gram_vector(&modes, rule),
        |i| diag[i],
    )?;
    res.details["diagonal_target"] = json!(diag);
    Ok(res)
}

fn check_lambda(cfg: &VerifyConfig, table: &ModeTable) -> Result<CheckResult> {
    let rule = BallQuadratureRule::with_sizes(cfg.alpha, cfg.quadrature)?;
    let big = BallQuadratureRule::with_sizes(cfg.alpha, cfg.quadrature.doubled())?;
    let mu_rule = BallQuadratureRule::with_sizes(cfg.alpha, cfg.mu_quadrature)?;
    let mu_big = BallQuadratureRule::with_sizes(cfg.alpha, cfg.mu_quadrature.doubled())?;
    let mut reports = Vec::new();
    let mut score: f64 = 0.0;
    let mut ordering_violations = 0usize;
    let mut previous: Option<(usize, f64)> = None;
    for e in table.iter() {
        let v = vector_of(e, 1)?;
        let pts = sample_points(&v, 20, cfg.seed)?;
        let mut report = EigenReport::compute(&v, &rule, &mu_rule, &pts)?;
        let l2 = estimate_lambda(&v, &big, &pts)?;
        let m2 = mu_via_double_transform(&v, &mu_big, &pts)?;
        let dl = (l2.lambda - report.lambda).abs() / report.lambda;
        let dm = (m2.mu - report.mu).abs() / report.mu.abs();
        report.residuals.insert("lambda_doubling_change".into(), dl);
        report.residuals.insert("mu_doubling_change".into(), dm);
        score = score
            .max(report.dispersion / LAMBDA_DISPERSION_TOL)
            .max(report.residuals["phase_error"] / PHASE_TOL)
            .max(report.residuals["mu_vs_lambda_squared"] / MU_TOL)
            .max(report.residuals["mu_dispersion"] / MU_TOL)
            .max(dl / LAMBDA_DISPERSION_TOL)
            .max(dm / MU_TOL);
        if let Some((n, lam)) = previous {
            if n == e.n && report.lambda >= lam {
                ordering_violations += 1;
            }
        }
        previous = Some((e.n, report.lambda));
        reports.push(report);
    }
    if ordering_violations > 0 {
        score = f64::INFINITY;
    }
    Ok(CheckResult::new(
        "lambda",
        score,
        1.0,
        json!({"reports": reports, "lambda_ordering_violations": ordering_violations,
               "tolerances": {"dispersion": LAMBDA_DISPERSION_TOL, "phase": PHASE_TOL, "mu": MU_TOL}}),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_radii_inside() {
        let r = chebyshev_radii(32);
        assert_eq!(r.len(), 32);
        assert!(r.iter().all(|x| *x > 0.0 && *x < 1.0));
    }

    #[test]
    fn unknown_check_rejected() {
        let cfg = VerifyConfig {
            alpha: 0.0,
            c: 1.0,
            max_degree: 1,
            quadrature: BallRuleSizes::new(4, 4, 8),
            mu_quadrature: BallRuleSizes::new(4, 4, 8),
            seed: 1,
        };
        assert!(run_checks(&cfg, &["bogus".to_string()]).is_err());
        let r = run_checks(&cfg, &["ordering".to_string(), "residual".to_string()]).unwrap();
        assert!(r.iter().all(|c| c.passed));
    }
}
