//! Spectral (Bouwkamp-type) solver for the radial part of ball PSWFs.
//!
//! The radial profile of ψ^{α,n}_{k,ℓ} is expanded as
//! `f(η) = Σ_j β_j J_j^{(α, n+1/2)}(η)` with η = 2r² − 1. Because every ball
//! polynomial is an eigenfunction of the c = 0 operator with eigenvalue
//! γ_{n+2j} = (n+2j)(n+2j+2α+3), and multiplication by r² = (1+η)/2 acts
//! through the Jacobi recurrence, the coefficients solve a symmetric
//! tridiagonal eigenproblem
//!
//! ```text
//! A_{j,j}   = γ_{n+2j} + (b_j + 1) c²/2
//! A_{j,j+1} = a_j c²/2
//! ```
//!
//! whose k-th smallest eigenvalue is χ_{n,k}(c).

mod tridiagonal;

use std::collections::BTreeMap;

use serde::Serialize;

pub use tridiagonal::{
    eigen_tridiagonal, eigenvalues_bisection, normalize_sign, residual, EigenPair,
    TridiagonalMatrix,
};

use crate::special_functions::{recurrence_coeffs, JacobiBasis, JacobiParams};
use crate::{Error, Result};

/// Whether degree n = 0 is admissible.
///
/// Divergence-free fields (x×∇)ψ vanish for n = 0, so the vector family
/// starts at n = 1; scalar PSWFs include n = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Scalar,
    Vector,
}

/// Ball-polynomial eigenvalue γ_m = m(m + 2α + 3).
pub fn gamma_ball(m: usize, alpha: f64) -> f64 {
    let mf = m as f64;
    mf * (mf + 2.0 * alpha + 3.0)
}

/// Jacobi parameters (α, n + 1/2) of the radial expansion for degree n.
pub fn radial_params(n: usize, alpha: f64) -> Result<JacobiParams> {
    JacobiParams::new(alpha, n as f64 + 0.5)
}

fn check_alpha_c(alpha: f64, c: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::Parameter(format!("alpha must be > -1, got {alpha}")));
    }
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::Parameter(format!(
            "bandwidth c must be >= 0, got {c}"
        )));
    }
    Ok(())
}

/// Truncation index K = ⌈(M − n)/2⌉ with M = 2N + ⌈2α⌉ + 30.
pub fn truncation_order(max_degree: usize, n: usize, alpha: f64) -> usize {
    let m = 2 * max_degree as i64 + (2.0 * alpha).ceil() as i64 + 30;
    let k = (m - n as i64 + 1).div_euclid(2);
    k.max(0) as usize
}

/// Assembles the (K+1)×(K+1) Bouwkamp matrix for degree `n`.
pub fn build_matrix(
    n: usize,
    alpha: f64,
    c: f64,
    truncation: usize,
    family: Family,
) -> Result<TridiagonalMatrix> {
    check_alpha_c(alpha, c)?;
    if family == Family::Vector && n == 0 {
        return Err(Error::Parameter(
            "divergence-free modes require n >= 1".into(),
        ));
    }
    let p = radial_params(n, alpha)?;
    let half_c2 = 0.5 * c * c;
    let size = truncation + 1;
    let mut diag = Vec::with_capacity(size);
    let mut off = Vec::with_capacity(truncation);
    for j in 0..size {
        let (a, b) = recurrence_coeffs(j, p);
        diag.push(gamma_ball(n + 2 * j, alpha) + (b + 1.0) * half_c2);
        if j < truncation {
            off.push(a * half_c2);
        }
    }
    TridiagonalMatrix::new(diag, off)
}

/// Jacobi coefficients and eigenvalue of one radial mode (α, c, n, k).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialExpansion {
    pub alpha: f64,
    pub c: f64,
    pub n: usize,
    pub k: usize,
    pub chi: f64,
    /// β_0 … β_K, unit 2-norm, first significant entry positive.
    pub beta: Vec<f64>,
}

impl RadialExpansion {
    pub fn truncation(&self) -> usize {
        self.beta.len() - 1
    }

    /// Recurrence basis able to evaluate the profile.
    pub fn basis(&self) -> JacobiBasis {
        JacobiBasis::new(
            self.beta.len(),
            radial_params(self.n, self.alpha).expect("validated"),
        )
    }

    /// f(η) = Σ β_j J_j(η) and its first two derivatives.
    pub fn profile_with_derivatives(&self, basis: &JacobiBasis, eta: f64) -> (f64, f64, f64) {
        basis.sum_with_derivatives(&self.beta, eta)
    }

    /// |β_K| / ‖β‖.
    pub fn tail(&self) -> f64 {
        self.beta.last().map_or(0.0, |b| b.abs())
    }
}

/// All K+1 eigenpairs of the degree-n matrix, ascending in χ.
pub fn solve_degree(
    n: usize,
    alpha: f64,
    c: f64,
    truncation: usize,
    family: Family,
) -> Result<Vec<RadialExpansion>> {
    let t = build_matrix(n, alpha, c, truncation, family)?;
    Ok(eigen_tridiagonal(&t)
        .into_iter()
        .enumerate()
        .map(|(k, p)| RadialExpansion {
            alpha,
            c,
            n,
            k,
            chi: p.value,
            beta: p.vector,
        })
        .collect())
}

/// Solves one mode (n, k) with the truncation rule for N = n + 2k.
pub fn solve_mode(
    n: usize,
    k: usize,
    alpha: f64,
    c: f64,
    family: Family,
) -> Result<RadialExpansion> {
    let trunc = truncation_order(n + 2 * k, n, alpha).max(k);
    let mut modes = solve_degree(n, alpha, c, trunc, family)?;
    Ok(modes.swap_remove(k))
}

/// Eigenpairs for all (n, k) with 2k + n ≤ N.
#[derive(Debug, Clone, Serialize)]
pub struct ModeTable {
    pub alpha: f64,
    pub c: f64,
    pub max_degree: usize,
    #[serde(skip)]
    pub entries: BTreeMap<(usize, usize), RadialExpansion>,
}

impl ModeTable {
    pub fn get(&self, n: usize, k: usize) -> Option<&RadialExpansion> {
        self.entries.get(&(n, k))
    }

    /// Entries in (n, k) order.
    pub fn iter(&self) -> impl Iterator<Item = &RadialExpansion> {
        self.entries.values()
    }
}

/// Agreement required between QL and bisection eigenvalues, relative to max(1, |χ|).
pub const BISECTION_AGREEMENT: f64 = 1e-11;

/// Solves every vector mode with 1 ≤ n, 2k + n ≤ N.
pub fn solve_modes(max_degree: usize, alpha: f64, c: f64) -> Result<ModeTable> {
    solve_modes_for(max_degree, alpha, c, Family::Vector)
}

/// As [`solve_modes`], including n = 0 for the scalar family.
///
/// The lowest eigenvalues of every matrix are cross-checked against Sturm
/// bisection; a disagreement above [`BISECTION_AGREEMENT`] is an error.
pub fn solve_modes_for(max_degree: usize, alpha: f64, c: f64, family: Family) -> Result<ModeTable> {
    check_alpha_c(alpha, c)?;
    if max_degree < 1 && family == Family::Vector {
        return Err(Error::Parameter("N must be >= 1".into()));
    }
    let first = match family {
        Family::Scalar => 0,
        Family::Vector => 1,
    };
    let mut entries = BTreeMap::new();
    for n in first..=max_degree {
        let trunc = truncation_order(max_degree, n, alpha);
        let t = build_matrix(n, alpha, c, trunc, family)?;
        let wanted = (max_degree - n) / 2 + 1;
        let pairs = eigen_tridiagonal(&t);
        let bisect = eigenvalues_bisection(&t, wanted);
        for (k, (pair, b)) in pairs.into_iter().zip(bisect).enumerate() {
            if (pair.value - b).abs() > BISECTION_AGREEMENT * pair.value.abs().max(1.0) {
                return Err(Error::Convergence(format!(
                    "n = {n}, k = {k}: QL gives {}, bisection {b}",
                    pair.value
                )));
            }
            entries.insert(
                (n, k),
                RadialExpansion {
                    alpha,
                    c,
                    n,
                    k,
                    chi: pair.value,
                    beta: pair.vector,
                },
            );
        }
    }
    Ok(ModeTable {
        alpha,
        c,
        max_degree,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn c_zero_matrix_is_gamma() {
        let t = build_matrix(1, 0.0, 0.0, 2, Family::Vector).unwrap();
        assert_eq!(t.diag(), &[4.0, 18.0, 40.0]);
        assert_eq!(t.off(), &[0.0, 0.0]);
    }

    #[test]
    fn c_two_matrix_entries() {
        let t = build_matrix(1, 0.0, 2.0, 2, Family::Vector).unwrap();
        let p = JacobiParams::new(0.0, 1.5).unwrap();
        for j in 0..3 {
            let (a, b) = recurrence_coeffs(j, p);
            assert_relative_eq!(t.diag()[j], gamma_ball(1 + 2 * j, 0.0) + 2.0 * (b + 1.0));
            if j < 2 {
                assert_relative_eq!(t.off()[j], 2.0 * a);
                assert!(t.off()[j] > 0.0);
            }
        }
        assert_eq!(t.get(0, 2), 0.0);
        assert_eq!(t.get(2, 1), t.get(1, 2));
    }

    #[test]
    fn vector_family_rejects_n0() {
        assert!(matches!(
            build_matrix(0, 0.0, 1.0, 3, Family::Vector),
            Err(Error::Parameter(_))
        ));
        assert!(build_matrix(0, 0.0, 1.0, 3, Family::Scalar).is_ok());
        assert!(build_matrix(1, -1.0, 1.0, 3, Family::Vector).is_err());
        assert!(build_matrix(1, 0.0, -1.0, 3, Family::Vector).is_err());
    }

    #[test]
    fn truncation_rule() {
        // M = 2N + 30 for α = 0
        assert_eq!(truncation_order(3, 1, 0.0), 18); // ⌈35/2⌉
        assert_eq!(truncation_order(3, 2, 0.0), 17);
        // ⌈2·0.25⌉ = 1 → M = 37, K = ⌈36/2⌉
        assert_eq!(truncation_order(3, 1, 0.25), 18);
        // ⌈2·(−0.5)⌉ = −1 → M = 35
        assert_eq!(truncation_order(3, 1, -0.5), 17);
    }

    #[test]
    fn c_zero_table_equals_gamma() {
        let table = solve_modes(3, 0.0, 0.0).unwrap();
        let chi = |n, k| table.get(n, k).unwrap().chi;
        assert_eq!(chi(1, 0), 4.0);
        assert_eq!(chi(1, 1), 18.0);
        assert_eq!(chi(2, 0), 10.0);
        assert_eq!(chi(3, 0), 18.0);
        assert!(table.get(2, 1).is_none());
        assert_eq!(table.entries.len(), 4);
        let b = &table.get(1, 1).unwrap().beta;
        assert_eq!(b[1], 1.0);
        assert_eq!(b.iter().map(|x| x.abs()).sum::<f64>(), 1.0);
    }

    #[test]
    fn scalar_family_includes_n0() {
        let table = solve_modes_for(2, 0.0, 1.0, Family::Scalar).unwrap();
        assert!(table.get(0, 0).is_some() && table.get(0, 1).is_some());
        assert!(table.get(0, 0).unwrap().chi > 0.0);
    }

    #[test]
    fn single_mode_matches_table() {
        let table = solve_modes(5, 1.0, 3.0).unwrap();
        let m = solve_mode(1, 2, 1.0, 3.0, Family::Vector).unwrap();
        assert_relative_eq!(m.chi, table.get(1, 2).unwrap().chi, max_relative = 1e-13);
    }
}
