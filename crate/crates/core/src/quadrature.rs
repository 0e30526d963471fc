//! Gauss rules on [-1, 1] and tensor-product rules on the sphere and the ball.
//!
//! One-dimensional rules come from Golub–Welsch on the same recurrence
//! coefficients that define the normalized Jacobi polynomials. The ball rule
//! integrates `∫_B f(x) (1-|x|²)^α dx` by substituting η = 2r² − 1 in the
//! radius, Gauss–Legendre in cos θ and the trapezoid rule in φ.

use std::f64::consts::PI;

use crate::bouwkamp::{eigen_tridiagonal, TridiagonalMatrix};
use crate::special_functions::{recurrence_coeffs, JacobiParams};
use crate::{Error, Result, Vec3};

/// Weight function a 1-D rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightKind {
    Legendre,
    Jacobi(JacobiParams),
}

impl WeightKind {
    fn params(&self) -> JacobiParams {
        match self {
            WeightKind::Legendre => JacobiParams::legendre(),
            WeightKind::Jacobi(p) => *p,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub weight_kind: WeightKind,
}

impl QuadratureRule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }
}

fn golub_welsch(m: usize, kind: WeightKind) -> Result<QuadratureRule1D> {
    if m == 0 {
        return Err(Error::Parameter(
            "quadrature needs at least one node".into(),
        ));
    }
    let p = kind.params();
    let (off, diag): (Vec<f64>, Vec<f64>) = (0..m).map(|k| recurrence_coeffs(k, p)).unzip();
    let t = TridiagonalMatrix::new(diag, off[..m - 1].to_vec())?;
    let total = p.weight_integral();
    let (nodes, weights) = eigen_tridiagonal(&t)
        .into_iter()
        .map(|pair| (pair.value, total * pair.vector[0] * pair.vector[0]))
        .unzip();
    Ok(QuadratureRule1D {
        nodes,
        weights,
        weight_kind: kind,
    })
}

/// m-point Gauss–Legendre rule; exact for degree ≤ 2m − 1.
pub fn gauss_legendre(m: usize) -> Result<QuadratureRule1D> {
    golub_welsch(m, WeightKind::Legendre)
}

/// m-point Gauss–Jacobi rule for the weight (1-η)^α (1+η)^β.
pub fn gauss_jacobi(m: usize, p: JacobiParams) -> Result<QuadratureRule1D> {
    golub_welsch(m, WeightKind::Jacobi(p))
}

/// Tensor rule on S²: Gauss–Legendre in cos θ, trapezoid in φ.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub points: Vec<Vec3>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn integrate(&self, f: impl Fn(&Vec3) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(x))
            .sum()
    }
}

pub fn sphere_rule(m_theta: usize, m_phi: usize) -> Result<SphereRule> {
    if m_phi == 0 {
        return Err(Error::Parameter("m_phi must be >= 1".into()));
    }
    let polar = gauss_legendre(m_theta)?;
    let dphi = 2.0 * PI / m_phi as f64;
    let mut points = Vec::with_capacity(m_theta * m_phi);
    let mut weights = Vec::with_capacity(m_theta * m_phi);
    for (u, wu) in polar.nodes.iter().zip(&polar.weights) {
        let s = (1.0 - u * u).sqrt();
        for q in 0..m_phi {
            let (sp, cp) = (q as f64 * dphi).sin_cos();
            points.push(Vec3::new(s * cp, s * sp, *u));
            weights.push(wu * dphi);
        }
    }
    Ok(SphereRule { points, weights })
}

/// Rule counts of a ball rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct BallRuleSizes {
    pub m_r: usize,
    pub m_theta: usize,
    pub m_phi: usize,
}

impl BallRuleSizes {
    pub const DEFAULT: BallRuleSizes = BallRuleSizes {
        m_r: 48,
        m_theta: 48,
        m_phi: 96,
    };

    pub fn new(m_r: usize, m_theta: usize, m_phi: usize) -> Self {
        Self {
            m_r,
            m_theta,
            m_phi,
        }
    }

    pub fn doubled(&self) -> Self {
        Self {
            m_r: 2 * self.m_r,
            m_theta: 2 * self.m_theta,
            m_phi: 2 * self.m_phi,
        }
    }

    pub fn node_count(&self) -> usize {
        self.m_r * self.m_theta * self.m_phi
    }
}

/// Tensor rule for ∫_B f(x)(1-|x|²)^α dx.
///
/// Points are stored radius-major, then polar, then azimuth, so that the
/// `m_phi` points of one (radius, polar) ring are contiguous.
#[derive(Debug, Clone)]
pub struct BallQuadratureRule {
    pub alpha: f64,
    pub sizes: BallRuleSizes,
    pub points: Vec<Vec3>,
    pub weights: Vec<f64>,
    /// Radial nodes r_i and weights (including the r² dr Jacobian and the weight).
    pub radial: Vec<(f64, f64)>,
    /// Polar nodes cos θ_j and Gauss–Legendre weights.
    pub polar: Vec<(f64, f64)>,
}

pub fn ball_rule(
    alpha: f64,
    m_r: usize,
    m_theta: usize,
    m_phi: usize,
) -> Result<BallQuadratureRule> {
    if m_r == 0 || m_theta == 0 || m_phi == 0 {
        return Err(Error::Parameter("ball rule counts must be >= 1".into()));
    }
    // r² dr (1-r²)^α = 2^{-α-1/2}/4 · (1-η)^α (1+η)^{1/2} dη with η = 2r² − 1.
    let radial_rule = gauss_jacobi(m_r, JacobiParams::new(alpha, 0.5)?)?;
    let scale = 2f64.powf(-alpha - 0.5) / 4.0;
    let radial: Vec<(f64, f64)> = radial_rule
        .nodes
        .iter()
        .zip(&radial_rule.weights)
        .map(|(eta, w)| (((1.0 + eta) / 2.0).sqrt(), w * scale))
        .collect();
    let polar_rule = gauss_legendre(m_theta)?;
    let polar: Vec<(f64, f64)> = polar_rule
        .nodes
        .iter()
        .copied()
        .zip(polar_rule.weights.iter().copied())
        .collect();
    let dphi = 2.0 * PI / m_phi as f64;
    let azimuth: Vec<(f64, f64)> = (0..m_phi).map(|q| (q as f64 * dphi).sin_cos()).collect();

    let sizes = BallRuleSizes::new(m_r, m_theta, m_phi);
    let mut points = Vec::with_capacity(sizes.node_count());
    let mut weights = Vec::with_capacity(sizes.node_count());
    for (r, wr) in &radial {
        for (u, wu) in &polar {
            let s = (1.0 - u * u).sqrt();
            for (sp, cp) in &azimuth {
                points.push(Vec3::new(r * s * cp, r * s * sp, r * u));
                weights.push(wr * wu * dphi);
            }
        }
    }
    Ok(BallQuadratureRule {
        alpha,
        sizes,
        points,
        weights,
        radial,
        polar,
    })
}

impl BallQuadratureRule {
    pub fn with_sizes(alpha: f64, sizes: BallRuleSizes) -> Result<Self> {
        ball_rule(alpha, sizes.m_r, sizes.m_theta, sizes.m_phi)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Σ w_i f(x_i), summed in node order.
    pub fn integrate(&self, f: impl Fn(&Vec3) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(x))
            .sum()
    }

    /// Componentwise Σ w_i F(x_i).
    pub fn integrate_vec(&self, f: impl Fn(&Vec3) -> Vec3) -> Vec3 {
        self.points
            .iter()
            .zip(&self.weights)
            .fold(Vec3::zeros(), |acc, (x, w)| acc + f(x) * *w)
    }

    /// Σ w_i v_i for values already sampled at the nodes.
    pub fn integrate_samples(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: values.len(),
            });
        }
        Ok(values.iter().zip(&self.weights).map(|(v, w)| v * w).sum())
    }
}
