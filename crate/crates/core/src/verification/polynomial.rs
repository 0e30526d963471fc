//! Sparse polynomials in (x₁, x₂, x₃) with exact differentiation, used to
//! check vector-calculus identities without finite-difference noise.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::Vec3;

/// Σ c_e x^e keyed by exponent triples.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly {
    terms: BTreeMap<[u32; 3], f64>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(exp: [u32; 3], coeff: f64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0.0 {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// The coordinate x_i.
    pub fn coord(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(e, 1.0)
    }

    /// Random polynomial of total degree ≤ `degree`, coefficients in [−1, 1].
    pub fn random<R: Rng>(rng: &mut R, degree: u32) -> Self {
        let mut terms = BTreeMap::new();
        for a in 0..=degree {
            for b in 0..=(degree - a) {
                for c in 0..=(degree - a - b) {
                    terms.insert([a, b, c], rng.gen_range(-1.0..=1.0));
                }
            }
        }
        Self { terms }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &Vec3) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * x.x.powi(e[0] as i32) * x.y.powi(e[1] as i32) * x.z.powi(e[2] as i32))
            .sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// ∂/∂x_i.
    pub fn diff(&self, i: usize) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                *out.entry(f).or_insert(0.0) += c * e[i] as f64;
            }
        }
        Self { terms: out }
    }

    pub fn grad(&self) -> PolyVec {
        PolyVec([self.diff(0), self.diff(1), self.diff(2)])
    }

    pub fn laplacian(&self) -> Self {
        (0..3).fold(Self::zero(), |acc, i| acc + self.diff(i).diff(i))
    }

    /// x·∇u.
    pub fn euler(&self) -> Self {
        PolyVec::position().dot(&self.grad())
    }

    /// Δ₀u = |x|²Δu − (x·∇)²u − (x·∇)u.
    pub fn laplace_beltrami(&self) -> Self {
        let e = self.euler();
        r2() * self.laplacian() - e.euler() - e
    }

    /// (x × ∇)u.
    pub fn rotational(&self) -> PolyVec {
        PolyVec::position().cross(&self.grad())
    }

    /// 𝓛u = −Δu + Σ x_i x_j ∂_i∂_j u + (2α+4) x·∇u + c²|x|²u.
    pub fn sturm_liouville(&self, alpha: f64, c: f64) -> Self {
        let e = self.euler();
        // Σ x_i x_j ∂_i∂_j = (x·∇)² − x·∇
        let radial2 = e.euler() - e.clone();
        -self.laplacian()
            + radial2
            + e.scale(2.0 * alpha + 4.0)
            + (r2() * self.clone()).scale(c * c)
    }
}

fn r2() -> Poly {
    (0..3).fold(Poly::zero(), |acc, i| acc + Poly::coord(i) * Poly::coord(i))
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (e, c) in rhs.terms {
            *self.terms.entry(e).or_insert(0.0) += c;
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let g = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
                *out.entry(g).or_insert(0.0) += c * d;
            }
        }
        Poly { terms: out }
    }
}

/// Three polynomial components.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PolyVec(pub [Poly; 3]);

impl PolyVec {
    pub fn position() -> Self {
        PolyVec([Poly::coord(0), Poly::coord(1), Poly::coord(2)])
    }

    pub fn eval(&self, x: &Vec3) -> Vec3 {
        Vec3::new(self.0[0].eval(x), self.0[1].eval(x), self.0[2].eval(x))
    }

    pub fn dot(&self, other: &PolyVec) -> Poly {
        (0..3).fold(Poly::zero(), |acc, i| {
            acc + self.0[i].clone() * other.0[i].clone()
        })
    }

    pub fn cross(&self, other: &PolyVec) -> PolyVec {
        let (a, b) = (&self.0, &other.0);
        PolyVec([
            a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
            a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
            a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
        ])
    }

    pub fn scale_by(&self, p: &Poly) -> PolyVec {
        PolyVec(self.0.clone().map(|q| q * p.clone()))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyVec {
        PolyVec([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }

    pub fn divergence(&self) -> Poly {
        (0..3).fold(Poly::zero(), |acc, i| acc + self.0[i].diff(i))
    }

    pub fn curl(&self) -> PolyVec {
        let f = &self.0;
        PolyVec([
            f[2].diff(1) - f[1].diff(2),
            f[0].diff(2) - f[2].diff(0),
            f[1].diff(0) - f[0].diff(1),
        ])
    }

    /// (x × ∇)·F = Σ_i (x × ∇)_i F_i.
    pub fn rotational_dot(&self) -> Poly {
        (0..3).fold(Poly::zero(), |acc, i| {
            acc + self.0[i].rotational().0[i].clone()
        })
    }
}

impl Add for PolyVec {
    type Output = PolyVec;
    fn add(self, rhs: PolyVec) -> PolyVec {
        let [a, b, c] = self.0;
        let [d, e, f] = rhs.0;
        PolyVec([a + d, b + e, c + f])
    }
}

impl Sub for PolyVec {
    type Output = PolyVec;
    fn sub(self, rhs: PolyVec) -> PolyVec {
        let [a, b, c] = self.0;
        let [d, e, f] = rhs.0;
        PolyVec([a - d, b - e, c - f])
    }
}
