//! Symmetric tridiagonal eigensolvers: implicit-shift QL with eigenvectors,
//! and Sturm-sequence bisection for selected eigenvalues.

use crate::{Error, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl TridiagonalMatrix {
    /// `off[j]` is the (j, j+1) entry; `off.len()` must be `diag.len() - 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Parameter(
                "tridiagonal matrix must have order >= 1".into(),
            ));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::Dimension {
                expected: diag.len() - 1,
                got: off.len(),
            });
        }
        Ok(Self { diag, off })
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Entry (i, j); zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diag[i],
            1 => self.off[i.min(j)],
            _ => 0.0,
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        let n = self.order();
        if v.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: v.len(),
            });
        }
        Ok((0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect())
    }

    /// Maximum absolute row sum; bounds the spectral norm from above.
    pub fn norm(&self) -> f64 {
        (0..self.order())
            .map(|i| self.gershgorin_radius(i) + self.diag[i].abs())
            .fold(0.0, f64::max)
    }

    fn gershgorin_radius(&self, i: usize) -> f64 {
        let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
        let right = self.off.get(i).map_or(0.0, |e| e.abs());
        left + right
    }

    /// Gershgorin disks as (center, radius) pairs.
    pub fn gershgorin_disks(&self) -> Vec<(f64, f64)> {
        (0..self.order())
            .map(|i| (self.diag[i], self.gershgorin_radius(i)))
            .collect()
    }

    /// Interval containing the whole spectrum.
    pub fn gershgorin_interval(&self) -> (f64, f64) {
        self.gershgorin_disks()
            .into_iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (c, r)| {
                (lo.min(c - r), hi.max(c + r))
            })
    }

    /// Number of eigenvalues strictly less than `x` (Sturm count via LDLᵀ).
    pub fn count_below(&self, x: f64) -> usize {
        let n = self.order();
        let tiny = f64::MIN_POSITIVE.sqrt() * (1.0 + self.norm());
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..n {
            if i > 0 {
                let e = self.off[i - 1];
                q = self.diag[i] - x - e * e / q;
            }
            if q.abs() < tiny {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }
}

/// One eigenvalue with its unit eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// Flips `v` so that its first significant component is positive.
///
/// Components below 1e-10 · ‖v‖∞ are skipped so that roundoff-sized entries
/// never decide the sign.
pub fn normalize_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-10 * max) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

const MAX_QL_SWEEPS: usize = 60;

/// Full eigendecomposition by implicit-shift QL, ascending eigenvalues.
///
/// Eigenvectors are unit length with [`normalize_sign`] applied.
pub fn eigen_tridiagonal(t: &TridiagonalMatrix) -> Vec<EigenPair> {
    let n = t.order();
    let mut d = t.diag.clone();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&t.off);
    // z[k] holds eigenvector k (column-major storage of the rotation product).
    let mut z = vec![vec![0.0; n]; n];
    for (i, zi) in z.iter_mut().enumerate() {
        zi[i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= MAX_QL_SWEEPS, "QL iteration failed to converge");

            // Wilkinson-type shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for zk in z.iter_mut() {
                    let f = zk[i + 1];
                    zk[i + 1] = s * zk[i] + c * f;
                    zk[i] = c * zk[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // z[row][col]: column `col` is the eigenvector for d[col].
    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|k| {
            let mut v: Vec<f64> = z.iter().map(|row| row[k]).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            normalize_sign(&mut v);
            EigenPair {
                value: d[k],
                vector: v,
            }
        })
        .collect();
    pairs.sort_by(|a, b| a.value.total_cmp(&b.value));
    pairs
}

/// The `count` smallest eigenvalues by Sturm-sequence bisection.
pub fn eigenvalues_bisection(t: &TridiagonalMatrix, count: usize) -> Vec<f64> {
    let count = count.min(t.order());
    let (lo, hi) = t.gershgorin_interval();
    let tol = 2.0 * f64::EPSILON * t.norm().max(f64::MIN_POSITIVE);
    (0..count)
        .map(|k| {
            // smallest x with count_below(x) > k
            let (mut a, mut b) = (lo, hi);
            while b - a > tol {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if t.count_below(mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// ‖T·v − χ·v‖₂.
pub fn residual(t: &TridiagonalMatrix, chi: f64, v: &[f64]) -> Result<f64> {
    let tv = t.mul_vec(v)?;
    Ok(tv
        .iter()
        .zip(v)
        .map(|(a, b)| (a - chi * b).powi(2))
        .sum::<f64>()
        .sqrt())
}
