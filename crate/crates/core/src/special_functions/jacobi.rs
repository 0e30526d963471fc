//! Normalized Jacobi polynomials J_k^{(α,β)}.
//!
//! The normalization is fixed by
//!
//! ```text
//! ∫_{-1}^{1} J_k J_l (1-η)^α (1+η)^β dη = 2^{α+β+2} δ_{kl}
//! ```
//!
//! so that J_k = P_k / h_k, where P_k is the classical Jacobi polynomial and
//! h_k the constant returned by [`norm_constant`]. All evaluation goes through
//! the symmetric three-term recurrence
//! `η J_k = a_k J_{k+1} + b_k J_k + a_{k-1} J_{k-1}`.

use statrs::function::gamma::ln_gamma;

use crate::{Error, Result};

/// Exponents (α, β) of the Jacobi weight (1-η)^α (1+η)^β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(Error::Parameter(format!(
                "jacobi alpha must be > -1, got {alpha}"
            )));
        }
        if !(beta.is_finite() && beta > -1.0) {
            return Err(Error::Parameter(format!(
                "jacobi beta must be > -1, got {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Legendre case α = β = 0.
    pub fn legendre() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// ω_{α,β}(η) = (1-η)^α (1+η)^β.
    pub fn weight(&self, eta: f64) -> f64 {
        (1.0 - eta).powf(self.alpha) * (1.0 + eta).powf(self.beta)
    }

    /// ∫_{-1}^{1} ω_{α,β}(η) dη = 2^{α+β+1} Γ(α+1)Γ(β+1)/Γ(α+β+2).
    pub fn weight_integral(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        ((a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
            - ln_gamma(a + b + 2.0))
        .exp()
    }
}

/// Recurrence coefficients (a_k, b_k) of the normalized polynomials.
///
/// The k = 0 entries are evaluated in cancelled form so that α + β = 0 and
/// α + β + 1 = 0 do not produce 0/0.
pub fn recurrence_coeffs(k: usize, p: JacobiParams) -> (f64, f64) {
    let (a, b) = (p.alpha, p.beta);
    let kf = k as f64;
    let s = 2.0 * kf + a + b;
    if k == 0 {
        let ak = (4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0))).sqrt();
        let bk = (b - a) / (a + b + 2.0);
        return (ak, bk);
    }
    let num = 4.0 * (kf + 1.0) * (kf + a + 1.0) * (kf + b + 1.0) * (kf + a + b + 1.0);
    let den = (s + 1.0) * (s + 2.0) * (s + 2.0) * (s + 3.0);
    let ak = (num / den).sqrt();
    let bk = (b - a) * (b + a) / (s * (s + 2.0));
    (ak, bk)
}

/// The constant h_k with J_k = P_k / h_k, from its Gamma-function closed form.
pub fn norm_constant(k: usize, p: JacobiParams) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    let kf = k as f64;
    // (2k+α+β+1) Γ(k+α+β+1) written as a ratio times Γ(k+α+β+2); the ratio is 1 at k = 0.
    let ratio = if k == 0 {
        1.0
    } else {
        (2.0 * kf + a + b + 1.0) / (kf + a + b + 1.0)
    };
    let log_h2 = ln_gamma(kf + a + 1.0) + ln_gamma(kf + b + 1.0)
        - ln_gamma(kf + 1.0)
        - ln_gamma(kf + a + b + 2.0)
        - (2.0 * ratio).ln();
    (0.5 * log_h2).exp()
}

fn check_eta(eta: f64) -> Result<()> {
    if eta.is_nan() || eta.abs() > 1.0 {
        return Err(Error::Domain(format!(
            "jacobi argument must satisfy |eta| <= 1, got {eta}"
        )));
    }
    Ok(())
}

/// Values and first two derivatives of J_0 … J_kmax at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiTable {
    pub value: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

/// Precomputed recurrence data for repeated evaluation with fixed (α, β).
#[derive(Debug, Clone)]
pub struct JacobiBasis {
    params: JacobiParams,
    a: Vec<f64>,
    b: Vec<f64>,
    j0: f64,
    j1_scale: f64,
}

impl JacobiBasis {
    /// Basis able to evaluate degrees 0 ..= kmax.
    pub fn new(kmax: usize, params: JacobiParams) -> Self {
        let (a, b): (Vec<f64>, Vec<f64>) = (0..=kmax).map(|k| recurrence_coeffs(k, params)).unzip();
        let j0 = 1.0 / norm_constant(0, params);
        let j1_scale = 1.0 / (2.0 * norm_constant(1, params));
        Self {
            params,
            a,
            b,
            j0,
            j1_scale,
        }
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    pub fn max_degree(&self) -> usize {
        self.a.len() - 1
    }

    fn j1(&self, eta: f64) -> f64 {
        let (al, be) = (self.params.alpha, self.params.beta);
        self.j1_scale * ((al + be + 2.0) * eta + (al - be))
    }

    fn j1_prime(&self) -> f64 {
        self.j1_scale * (self.params.alpha + self.params.beta + 2.0)
    }

    /// Values J_0(η) … J_len-1(η), written into `out`. No domain check.
    pub fn values_into(&self, eta: f64, out: &mut [f64]) {
        let len = out.len();
        assert!(len <= self.a.len() + 1, "degree exceeds basis");
        if len == 0 {
            return;
        }
        out[0] = self.j0;
        if len == 1 {
            return;
        }
        out[1] = self.j1(eta);
        for k in 1..len - 1 {
            out[k + 1] = ((eta - self.b[k]) * out[k] - self.a[k - 1] * out[k - 1]) / self.a[k];
        }
    }

    /// Σ_j coeffs[j] J_j(η) together with its first and second η-derivatives.
    pub fn sum_with_derivatives(&self, coeffs: &[f64], eta: f64) -> (f64, f64, f64) {
        let len = coeffs.len();
        assert!(len <= self.a.len() + 1, "degree exceeds basis");
        if len == 0 {
            return (0.0, 0.0, 0.0);
        }
        let (mut v0, mut d0, mut s0) = (self.j0, 0.0, 0.0);
        let mut acc = (coeffs[0] * v0, 0.0, 0.0);
        if len == 1 {
            return acc;
        }
        let (mut v1, mut d1, mut s1) = (self.j1(eta), self.j1_prime(), 0.0);
        acc.0 += coeffs[1] * v1;
        acc.1 += coeffs[1] * d1;
        for k in 1..len - 1 {
            let (ak, bk, akm) = (self.a[k], self.b[k], self.a[k - 1]);
            let v2 = ((eta - bk) * v1 - akm * v0) / ak;
            let d2 = (v1 + (eta - bk) * d1 - akm * d0) / ak;
            let s2 = (2.0 * d1 + (eta - bk) * s1 - akm * s0) / ak;
            acc.0 += coeffs[k + 1] * v2;
            acc.1 += coeffs[k + 1] * d2;
            acc.2 += coeffs[k + 1] * s2;
            (v0, d0, s0) = (v1, d1, s1);
            (v1, d1, s1) = (v2, d2, s2);
        }
        acc
    }

    /// Values, first and second derivatives for every degree up to `kmax`.
    pub fn table(&self, kmax: usize, eta: f64) -> JacobiTable {
        assert!(kmax <= self.a.len(), "degree exceeds basis");
        let n = kmax + 1;
        let mut value = vec![0.0; n];
        let mut d1 = vec![0.0; n];
        let mut d2 = vec![0.0; n];
        value[0] = self.j0;
        if n > 1 {
            value[1] = self.j1(eta);
            d1[1] = self.j1_prime();
        }
        for k in 1..n.saturating_sub(1) {
            let (ak, bk, akm) = (self.a[k], self.b[k], self.a[k - 1]);
            value[k + 1] = ((eta - bk) * value[k] - akm * value[k - 1]) / ak;
            d1[k + 1] = (value[k] + (eta - bk) * d1[k] - akm * d1[k - 1]) / ak;
            d2[k + 1] = (2.0 * d1[k] + (eta - bk) * d2[k] - akm * d2[k - 1]) / ak;
        }
        JacobiTable { value, d1, d2 }
    }
}

/// Values and the first two derivatives of J_0 … J_kmax at η.
pub fn jacobi_table(kmax: usize, p: JacobiParams, eta: f64) -> Result<JacobiTable> {
    check_eta(eta)?;
    Ok(JacobiBasis::new(kmax, p).table(kmax, eta))
}

/// J_k^{(α,β)}(η) by forward recurrence.
pub fn jacobi_eval(k: usize, p: JacobiParams, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    let basis = JacobiBasis::new(k, p);
    let mut out = vec![0.0; k + 1];
    basis.values_into(eta, &mut out);
    Ok(out[k])
}

/// d/dη J_k^{(α,β)}(η), from the differentiated recurrence.
pub fn jacobi_derivative(k: usize, p: JacobiParams, eta: f64) -> Result<f64> {
    Ok(jacobi_table(k, p, eta)?.d1[k])
}

/// d²/dη² J_k^{(α,β)}(η).
pub fn jacobi_second_derivative(k: usize, p: JacobiParams, eta: f64) -> Result<f64> {
    Ok(jacobi_table(k, p, eta)?.d2[k])
}
