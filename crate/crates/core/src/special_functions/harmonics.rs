//! Real spherical harmonics Y^n_ℓ and vector spherical harmonics Y^{n,i}_ℓ.
//!
//! With m = ⌊ℓ/2⌋ and t = cos θ:
//!
//! ```text
//! Y^n_1      = J_n^{(0,0)}(t) / √(8π)
//! Y^n_{2m}   = (sin θ)^m J_{n-m}^{(m,m)}(t) cos(mφ) / (2^{m+1} √π)
//! Y^n_{2m+1} = (sin θ)^m J_{n-m}^{(m,m)}(t) sin(mφ) / (2^{m+1} √π)
//! ```
//!
//! which are orthonormal on S². The vector families are
//! Y^{n,1} = x̂ Y, Y^{n,2} = ∇₀Y and Y^{n,3} = x̂ × ∇₀Y.

use std::f64::consts::PI;

use super::jacobi::{JacobiBasis, JacobiParams};
use crate::{Error, Result, Vec3};

/// Degree n and mode index ℓ with 1 ≤ ℓ ≤ 2n+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphericalIndex {
    n: usize,
    ell: usize,
}

/// Azimuthal dependence of a real harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Azimuthal {
    Zonal,
    Cos(usize),
    Sin(usize),
}

impl SphericalIndex {
    pub fn new(n: usize, ell: usize) -> Result<Self> {
        if ell < 1 || ell > 2 * n + 1 {
            return Err(Error::Index(format!(
                "ell must lie in 1..={} for n = {n}, got {ell}",
                2 * n + 1
            )));
        }
        Ok(Self { n, ell })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn azimuthal(&self) -> Azimuthal {
        match self.ell {
            1 => Azimuthal::Zonal,
            l if l % 2 == 0 => Azimuthal::Cos(l / 2),
            l => Azimuthal::Sin(l / 2),
        }
    }

    /// All indices of degree n, ℓ = 1 ..= 2n+1.
    pub fn all_of_degree(n: usize) -> impl Iterator<Item = SphericalIndex> {
        (1..=2 * n + 1).map(move |ell| SphericalIndex { n, ell })
    }
}

/// Polar angle θ ∈ [0, π] and azimuth φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalDirection {
    theta: f64,
    phi: f64,
}

impl SphericalDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::Domain(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::Domain(format!("phi must be finite, got {phi}")));
        }
        Ok(Self {
            theta,
            phi: phi.rem_euclid(2.0 * PI),
        })
    }

    /// Direction of a nonzero Cartesian point. φ = 0 on the polar axis.
    pub fn from_point(x: &Vec3) -> Result<Self> {
        let rho = x.x.hypot(x.y);
        if rho == 0.0 && x.z == 0.0 {
            return Err(Error::Domain("direction of the origin is undefined".into()));
        }
        let theta = rho.atan2(x.z);
        let phi = x.y.atan2(x.x).rem_euclid(2.0 * PI);
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// x̂ = (sinθ cosφ, sinθ sinφ, cosθ).
    pub fn unit_vector(&self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vec3::new(st * cp, st * sp, ct)
    }

    pub fn theta_hat(&self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vec3::new(ct * cp, ct * sp, -st)
    }

    pub fn phi_hat(&self) -> Vec3 {
        let (sp, cp) = self.phi.sin_cos();
        Vec3::new(-sp, cp, 0.0)
    }

    fn on_axis(&self) -> bool {
        self.theta.sin().abs() < AXIS_TOLERANCE
    }
}

/// sin θ below this is treated as the polar axis.
const AXIS_TOLERANCE: f64 = 1e-12;

/// Y, ∂θY and (1/sinθ)∂φY at one direction. The last entry is evaluated
/// with the sin θ factor cancelled analytically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularParts {
    pub value: f64,
    pub d_theta: f64,
    pub d_phi: f64,
    pub d_phi_over_sin: f64,
}

/// Evaluates Y^n_ℓ and its angular derivatives.
pub fn angular_parts(idx: SphericalIndex, dir: &SphericalDirection) -> AngularParts {
    let n = idx.n;
    let (st, ct) = dir.theta.sin_cos();
    match idx.azimuthal() {
        Azimuthal::Zonal => {
            let basis = JacobiBasis::new(n, JacobiParams::legendre());
            let t = basis.table(n, ct);
            let norm = 1.0 / (8.0 * PI).sqrt();
            AngularParts {
                value: norm * t.value[n],
                d_theta: -norm * st * t.d1[n],
                d_phi: 0.0,
                d_phi_over_sin: 0.0,
            }
        }
        Azimuthal::Cos(m) | Azimuthal::Sin(m) => {
            let deg = n - m;
            let mf = m as f64;
            let p = JacobiParams::new(mf, mf).expect("m >= 0");
            let t = JacobiBasis::new(deg, p).table(deg, ct);
            let (j, dj) = (t.value[deg], t.d1[deg]);
            let norm = 1.0 / (2f64.powi(m as i32 + 1) * PI.sqrt());
            let s_m1 = st.powi(m as i32 - 1);
            let s_m = s_m1 * st;
            let (trig, dtrig) = {
                let (s, c) = (mf * dir.phi).sin_cos();
                match idx.azimuthal() {
                    Azimuthal::Cos(_) => (c, -mf * s),
                    _ => (s, mf * c),
                }
            };
            AngularParts {
                value: norm * s_m * j * trig,
                d_theta: norm * (mf * s_m1 * ct * j - s_m * st * dj) * trig,
                d_phi: norm * s_m * j * dtrig,
                d_phi_over_sin: norm * s_m1 * j * dtrig,
            }
        }
    }
}

/// Real spherical harmonic Y^n_ℓ(x̂).
pub fn spherical_harmonic(idx: SphericalIndex, dir: &SphericalDirection) -> f64 {
    angular_parts(idx, dir).value
}

/// (∂Y/∂θ, ∂Y/∂φ). Both partials are bounded on the whole sphere.
pub fn spherical_harmonic_grad(idx: SphericalIndex, dir: &SphericalDirection) -> (f64, f64) {
    let p = angular_parts(idx, dir);
    (p.d_theta, p.d_phi)
}

/// The three vector spherical harmonic families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VshFamily {
    /// Y^{n,1} = x̂ Y
    Radial,
    /// Y^{n,2} = ∇₀ Y
    Gradient,
    /// Y^{n,3} = x̂ × ∇₀ Y
    Toroidal,
}

impl VshFamily {
    pub fn from_number(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Self::Radial),
            2 => Ok(Self::Gradient),
            3 => Ok(Self::Toroidal),
            _ => Err(Error::Index(format!(
                "vector harmonic family must be 1, 2 or 3, got {i}"
            ))),
        }
    }
}

/// Cartesian components of Y^{n,i}_ℓ(x̂).
///
/// Families 2 and 3 need the angular unit vectors and are rejected on the
/// polar axis unless n = 0, where they vanish identically.
pub fn vector_spherical_harmonic(
    idx: SphericalIndex,
    family: VshFamily,
    dir: &SphericalDirection,
) -> Result<Vec3> {
    let parts = angular_parts(idx, dir);
    match family {
        VshFamily::Radial => Ok(dir.unit_vector() * parts.value),
        _ if idx.n == 0 => Ok(Vec3::zeros()),
        _ if dir.on_axis() => Err(Error::Pole(format!(
            "vector harmonic family {family:?} at theta = {}",
            dir.theta
        ))),
        VshFamily::Gradient => {
            Ok(dir.theta_hat() * parts.d_theta + dir.phi_hat() * parts.d_phi_over_sin)
        }
        VshFamily::Toroidal => {
            Ok(dir.phi_hat() * parts.d_theta - dir.theta_hat() * parts.d_phi_over_sin)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dir(theta: f64, phi: f64) -> SphericalDirection {
        SphericalDirection::new(theta, phi).unwrap()
    }

    #[test]
    fn index_range() {
        assert!(SphericalIndex::new(0, 1).is_ok());
        assert!(matches!(SphericalIndex::new(0, 2), Err(Error::Index(_))));
        assert!(matches!(SphericalIndex::new(3, 0), Err(Error::Index(_))));
        assert!(SphericalIndex::new(3, 7).is_ok());
        assert_eq!(SphericalIndex::all_of_degree(2).count(), 5);
    }

    #[test]
    fn constant_harmonic() {
        let idx = SphericalIndex::new(0, 1).unwrap();
        for (t, p) in [(0.1, 0.2), (2.0, 5.0), (0.0, 0.0)] {
            assert_relative_eq!(
                spherical_harmonic(idx, &dir(t, p)),
                0.5 / PI.sqrt(),
                max_relative = 1e-15
            );
            assert_eq!(spherical_harmonic_grad(idx, &dir(t, p)), (0.0, 0.0));
        }
    }

    #[test]
    fn zonal_degree_one() {
        let idx = SphericalIndex::new(1, 1).unwrap();
        assert!(spherical_harmonic(idx, &dir(PI / 2.0, 1.3)).abs() < 1e-16);
        // Y^1_1 = √(3/(4π)) cos θ
        let th = 0.7;
        let c = (3.0 / (4.0 * PI)).sqrt();
        assert_relative_eq!(
            spherical_harmonic(idx, &dir(th, 0.0)),
            c * th.cos(),
            max_relative = 1e-14
        );
        let (dt, dp) = spherical_harmonic_grad(idx, &dir(th, 0.4));
        assert_relative_eq!(dt, -c * th.sin(), max_relative = 1e-14);
        assert_eq!(dp, 0.0);
    }

    #[test]
    fn unit_vectors_orthonormal() {
        let d = dir(1.1, 4.0);
        let (r, t, p) = (d.unit_vector(), d.theta_hat(), d.phi_hat());
        assert_relative_eq!(r.norm(), 1.0, max_relative = 1e-15);
        assert!(r.dot(&t).abs() < 1e-15 && r.dot(&p).abs() < 1e-15 && t.dot(&p).abs() < 1e-15);
        assert_relative_eq!((r.cross(&t) - p).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn from_point_round_trip() {
        let x = Vec3::new(-0.3, 0.2, -0.5);
        let d = SphericalDirection::from_point(&x).unwrap();
        assert_relative_eq!(
            (d.unit_vector() * x.norm() - x).norm(),
            0.0,
            epsilon = 1e-15
        );
        assert!(SphericalDirection::from_point(&Vec3::zeros()).is_err());
    }

    #[test]
    fn vector_families_for_constant() {
        let idx = SphericalIndex::new(0, 1).unwrap();
        let d = dir(0.8, 2.0);
        let y1 = vector_spherical_harmonic(idx, VshFamily::Radial, &d).unwrap();
        assert_relative_eq!(
            (y1 - d.unit_vector() * (0.5 / PI.sqrt())).norm(),
            0.0,
            epsilon = 1e-15
        );
        assert_eq!(
            vector_spherical_harmonic(idx, VshFamily::Toroidal, &d).unwrap(),
            Vec3::zeros()
        );
    }

    #[test]
    fn pole_is_rejected_for_tangential_families() {
        let idx = SphericalIndex::new(2, 3).unwrap();
        let pole = dir(0.0, 0.0);
        assert!(matches!(
            vector_spherical_harmonic(idx, VshFamily::Toroidal, &pole),
            Err(Error::Pole(_))
        ));
        assert!(vector_spherical_harmonic(idx, VshFamily::Radial, &pole).is_ok());
    }

    #[test]
    fn pointwise_orthogonality() {
        for (n, ell, t, p) in [
            (1, 2, 0.4, 1.0),
            (3, 5, 2.2, 5.9),
            (4, 1, 1.3, 0.3),
            (6, 12, 0.9, 3.3),
        ] {
            let idx = SphericalIndex::new(n, ell).unwrap();
            let d = dir(t, p);
            let v: Vec<Vec3> = [VshFamily::Radial, VshFamily::Gradient, VshFamily::Toroidal]
                .iter()
                .map(|f| vector_spherical_harmonic(idx, *f, &d).unwrap())
                .collect();
            assert!(v[0].dot(&v[1]).abs() < 1e-14);
            assert!(v[0].dot(&v[2]).abs() < 1e-14);
            assert!(v[1].dot(&v[2]).abs() < 1e-14);
        }
    }

    #[test]
    fn grad_matches_finite_differences() {
        let h = 1e-6;
        for (n, ell, t, p) in [
            (2, 4, 0.5, 0.7),
            (5, 9, 1.9, 4.2),
            (7, 14, 2.8, 1.1),
            (4, 1, 0.3, 0.0),
        ] {
            let idx = SphericalIndex::new(n, ell).unwrap();
            let y =
                |t: f64, p: f64| spherical_harmonic(idx, &SphericalDirection { theta: t, phi: p });
            let fd_t = (y(t + h, p) - y(t - h, p)) / (2.0 * h);
            let fd_p = (y(t, p + h) - y(t, p - h)) / (2.0 * h);
            let (dt, dp) = spherical_harmonic_grad(idx, &dir(t, p));
            let scale = dt.abs().max(dp.abs()).max(1.0);
            assert!(
                (dt - fd_t).abs() <= 1e-7 * scale,
                "{n} {ell}: {dt} vs {fd_t}"
            );
            assert!(
                (dp - fd_p).abs() <= 1e-7 * scale,
                "{n} {ell}: {dp} vs {fd_p}"
            );
        }
    }
}
