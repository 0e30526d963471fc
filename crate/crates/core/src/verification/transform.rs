//! Finite Fourier transform F_c[f](x) = ∫_B e^{∓ic⟨x,τ⟩} f(τ) (1−|τ|²)^α dτ by
//! ball quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::quadrature::BallQuadratureRule;
use crate::{Error, Result, Vec3};

/// Three complex components.
pub type CVec3 = [Complex64; 3];

/// Kernel orientation: `Forward` is e^{−ic⟨x,τ⟩}, `Adjoint` its conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Forward,
    Adjoint,
}

impl Sign {
    /// −1 → forward, +1 → adjoint.
    pub fn from_i32(s: i32) -> Result<Self> {
        match s {
            -1 => Ok(Sign::Forward),
            1 => Ok(Sign::Adjoint),
            _ => Err(Error::Parameter(format!("kernel sign must be ±1, got {s}"))),
        }
    }

    fn exponent(self) -> f64 {
        match self {
            Sign::Forward => -1.0,
            Sign::Adjoint => 1.0,
        }
    }
}

pub(crate) fn check_alpha(rule: &BallQuadratureRule, alpha: f64) -> Result<()> {
    if rule.alpha != alpha {
        return Err(Error::Config(format!(
            "quadrature weight exponent {} does not match operator alpha {alpha}",
            rule.alpha
        )));
    }
    Ok(())
}

fn real_to_complex(v: &Vec3) -> CVec3 {
    [
        Complex64::from(v.x),
        Complex64::from(v.y),
        Complex64::from(v.z),
    ]
}

/// Transform of values already sampled at the rule nodes, evaluated at `x`.
pub fn transform_samples(
    samples: &[CVec3],
    rule: &BallQuadratureRule,
    c: f64,
    sign: Sign,
    x: &Vec3,
) -> Result<CVec3> {
    if samples.len() != rule.len() {
        return Err(Error::Dimension {
            expected: rule.len(),
            got: samples.len(),
        });
    }
    let s = sign.exponent() * c;
    let mut acc = [Complex64::default(); 3];
    for ((tau, w), f) in rule.points.iter().zip(&rule.weights).zip(samples) {
        let k = Complex64::from_polar(*w, s * x.dot(tau));
        for (a, fi) in acc.iter_mut().zip(f) {
            *a += k * fi;
        }
    }
    Ok(acc)
}

/// F_c of a vector field at `x`; the rule's exponent must equal `alpha`.
pub fn finite_fourier_transform<F>(
    field: F,
    x: &Vec3,
    rule: &BallQuadratureRule,
    alpha: f64,
    c: f64,
    sign: Sign,
) -> Result<CVec3>
where
    F: Fn(&Vec3) -> Result<Vec3>,
{
    check_alpha(rule, alpha)?;
    let samples = rule
        .points
        .iter()
        .map(|p| field(p).map(|v| real_to_complex(&v)))
        .collect::<Result<Vec<_>>>()?;
    transform_samples(&samples, rule, c, sign, x)
}

/// F_c of a scalar field at `x`.
pub fn finite_fourier_transform_scalar<F>(
    field: F,
    x: &Vec3,
    rule: &BallQuadratureRule,
    alpha: f64,
    c: f64,
    sign: Sign,
) -> Result<Complex64>
where
    F: Fn(&Vec3) -> Result<f64>,
{
    let out = finite_fourier_transform(
        |p| field(p).map(|v| Vec3::new(v, 0.0, 0.0)),
        x,
        rule,
        alpha,
        c,
        sign,
    )?;
    Ok(out[0])
}

/// Transform of node samples evaluated at every node of the same rule.
///
/// For two rings at fixed (r, θ) the kernel depends on the azimuths only
/// through φ_y − φ_τ, so each ring pair is a circular convolution carried
/// out with FFTs. Cost is O(rings² · m_φ log m_φ) instead of O(nodes²).
pub fn transform_on_rule(
    samples: &[CVec3],
    rule: &BallQuadratureRule,
    c: f64,
    sign: Sign,
) -> Result<Vec<CVec3>> {
    if samples.len() != rule.len() {
        return Err(Error::Dimension {
            expected: rule.len(),
            got: samples.len(),
        });
    }
    let m = rule.sizes.m_phi;
    let rings: Vec<(f64, f64)> = rule
        .radial
        .iter()
        .flat_map(|(r, _)| {
            rule.polar
                .iter()
                .map(move |(u, _)| (r * (1.0 - u * u).sqrt(), r * u))
        })
        .collect();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);

    // Weighted ring spectra, component-major within each ring.
    let mut spectra = vec![Complex64::default(); 3 * samples.len()];
    for (t, ring) in samples.chunks(m).enumerate() {
        let wts = &rule.weights[t * m..(t + 1) * m];
        for comp in 0..3 {
            let buf = &mut spectra[(3 * t + comp) * m..(3 * t + comp + 1) * m];
            for (q, b) in buf.iter_mut().enumerate() {
                *b = ring[q][comp] * wts[q];
            }
            fwd.process(buf);
        }
    }

    let cos_table: Vec<f64> = (0..m)
        .map(|d| (2.0 * PI * d as f64 / m as f64).cos())
        .collect();
    let s = sign.exponent() * c;
    // The kernel of ring pair (y, t) equals that of (t, y), so each unordered
    // pair is transformed once and feeds both accumulators.
    let mut acc = vec![Complex64::default(); spectra.len()];
    let mut kernel = vec![Complex64::default(); m];
    for (sy, (rho_y, z_y)) in rings.iter().enumerate() {
        for (t, (rho_t, z_t)) in rings.iter().enumerate().skip(sy) {
            let a = s * rho_y * rho_t;
            let b = s * z_y * z_t;
            // cos is even in d, so only half the exponentials are needed.
            for d in 0..=m / 2 {
                let k = Complex64::from_polar(1.0, a * cos_table[d] + b);
                kernel[d] = k;
                kernel[(m - d) % m] = k;
            }
            fwd.process(&mut kernel);
            for comp in 0..3 {
                let (ys, ts) = ((3 * sy + comp) * m, (3 * t + comp) * m);
                for (i, k) in kernel.iter().enumerate() {
                    acc[ys + i] += k * spectra[ts + i];
                }
                if t != sy {
                    for (i, k) in kernel.iter().enumerate() {
                        acc[ts + i] += k * spectra[ys + i];
                    }
                }
            }
        }
    }
    let mut out = vec![[Complex64::default(); 3]; samples.len()];
    for sy in 0..rings.len() {
        for comp in 0..3 {
            let buf = &mut acc[(3 * sy + comp) * m..(3 * sy + comp + 1) * m];
            inv.process(buf);
            for (p, v) in buf.iter().enumerate() {
                out[sy * m + p][comp] = v / m as f64;
            }
        }
    }
    Ok(out)
}
