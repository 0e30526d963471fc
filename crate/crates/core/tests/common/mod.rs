//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use ballpswf::Vec3;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

pub type Q = Ratio<i128>;

/// Exact a_k², b_k for rational (α, β).
pub fn exact_recurrence(k: i128, alpha: Q, beta: Q) -> (Q, Q) {
    let one = Q::from_integer(1);
    let two = Q::from_integer(2);
    let three = Q::from_integer(3);
    let four = Q::from_integer(4);
    let kq = Q::from_integer(k);
    let s = two * kq + alpha + beta;
    if k == 0 {
        let a2 = four * (alpha + one) * (beta + one) / ((s + two) * (s + two) * (s + three));
        return (a2, (beta - alpha) / (alpha + beta + two));
    }
    let num =
        four * (kq + one) * (kq + alpha + one) * (kq + beta + one) * (kq + alpha + beta + one);
    let den = (s + one) * (s + two) * (s + two) * (s + three);
    (num / den, (beta * beta - alpha * alpha) / (s * (s + two)))
}

pub fn q_to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Generalized binomial coefficient as a plain product.
fn binom(top: f64, j: usize) -> f64 {
    (1..=j)
        .map(|i| (top - j as f64 + i as f64) / i as f64)
        .product()
}

/// Classical P_k^{(α,β)}(x) from its explicit finite sum.
pub fn classical_jacobi(k: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let kf = k as f64;
    (0..=k)
        .map(|s| {
            binom(kf + alpha, k - s)
                * binom(kf + beta, s)
                * ((x - 1.0) / 2.0).powi(s as i32)
                * ((x + 1.0) / 2.0).powi((k - s) as i32)
        })
        .sum()
}

/// P_k scaled so that ∫ J_k² (1−x)^α (1+x)^β dx = 2^{α+β+2}.
pub fn explicit_jacobi(k: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let ab = alpha + beta;
    // ‖P_k‖² = 2^{α+β+1}/(2k+α+β+1) · Γ(k+α+1)Γ(k+β+1)/(Γ(k+α+β+1) k!)
    let base = gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 1.0);
    let growth: f64 = (1..=k)
        .map(|i| (alpha + i as f64) * (beta + i as f64) / ((ab + i as f64) * i as f64))
        .product();
    let norm2 = 2f64.powf(ab + 1.0) / (2.0 * k as f64 + ab + 1.0) * base * growth;
    classical_jacobi(k, alpha, beta, x) * (2f64.powf(ab + 2.0) / norm2).sqrt()
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn dense_jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |j| *j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let diag: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum();
        if off <= 1e-30 * diag.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (lo, hi) = a.split_at_mut(q);
                for (apk, aqk) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    (*apk, *aqk) = (c * *apk - s * *aqk, s * *apk + c * *aqk);
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Dense copy of a tridiagonal matrix.
pub fn dense(t: &ballpswf::bouwkamp::TridiagonalMatrix) -> Vec<Vec<f64>> {
    let n = t.order();
    (0..n)
        .map(|i| (0..n).map(|j| t.get(i, j)).collect())
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point with |x| ≤ radius and cylindrical radius ≥ min_rho.
pub fn ball_point(rng: &mut ChaCha8Rng, radius: f64, min_rho: f64) -> Vec3 {
    loop {
        let x = Vec3::new(
            rng.gen_range(-radius..radius),
            rng.gen_range(-radius..radius),
            rng.gen_range(-radius..radius),
        );
        if x.norm() <= radius && x.x.hypot(x.y) >= min_rho {
            return x;
        }
    }
}

/// (x × ∇) f by central differences.
pub fn fd_rotational(f: impl Fn(&Vec3) -> f64, x: &Vec3, h: f64) -> Vec3 {
    let mut g = Vec3::zeros();
    for i in 0..3 {
        let mut e = Vec3::zeros();
        e[i] = h;
        g[i] = (f(&(x + e)) - f(&(x - e))) / (2.0 * h);
    }
    x.cross(&g)
}
