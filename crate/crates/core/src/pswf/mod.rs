//! Scalar ball PSWFs ψ^{α,n}_{k,ℓ}(x; c) and divergence-free vector PSWFs
//! ψ⃗ = (x×∇)ψ.
//!
//! The scalar function factors as `ψ(x) = f(2r² − 1) · r^n Y^n_ℓ(x̂)`, where
//! f is the Jacobi series of a [`RadialExpansion`]. Since x×∇ annihilates
//! radial functions, `ψ⃗(x) = f(2r² − 1) · r^n Y^{n,3}_ℓ(x̂)`.

pub mod fd;
mod operators;

use serde::Serialize;

pub use operators::{
    apply_d_fd, apply_d_fd_field, apply_l_fd, apply_l_fd_field, apply_l_radial, divergence_fd,
    laplace_beltrami_fd,
};

use crate::bouwkamp::{solve_mode, Family, RadialExpansion};
use crate::special_functions::{
    angular_parts, JacobiBasis, SphericalDirection, SphericalIndex, VshFamily,
};
use crate::{Error, Result, Vec3};

/// Parameters and indices (α, c, n, k, ℓ) of one PSWF.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeIndex {
    pub alpha: f64,
    pub c: f64,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
}

impl ModeIndex {
    /// Validates α > −1, c ≥ 0 and 1 ≤ ℓ ≤ 2n+1.
    pub fn new(alpha: f64, c: f64, n: usize, k: usize, ell: usize) -> Result<Self> {
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(Error::Parameter(format!("alpha must be > -1, got {alpha}")));
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::Parameter(format!(
                "bandwidth c must be >= 0, got {c}"
            )));
        }
        SphericalIndex::new(n, ell)?;
        Ok(Self {
            alpha,
            c,
            n,
            k,
            ell,
        })
    }

    pub fn spherical_index(&self) -> SphericalIndex {
        SphericalIndex::new(self.n, self.ell).expect("validated on construction")
    }

    /// n + 2k mod 4, the power of −i in the Fourier eigenvalue.
    pub fn phase_index(&self) -> usize {
        (self.n + 2 * self.k) % 4
    }
}

/// Scalar ball PSWF.
#[derive(Debug, Clone)]
pub struct ScalarPswf {
    mode: ModeIndex,
    radial: RadialExpansion,
    basis: JacobiBasis,
}

impl ScalarPswf {
    /// Solves the radial problem for `mode` with the default truncation.
    pub fn new(mode: ModeIndex) -> Result<Self> {
        let radial = solve_mode(mode.n, mode.k, mode.alpha, mode.c, Family::Scalar)?;
        Self::from_expansion(radial, mode.ell)
    }

    /// Wraps an already computed radial expansion.
    pub fn from_expansion(radial: RadialExpansion, ell: usize) -> Result<Self> {
        let mode = ModeIndex::new(radial.alpha, radial.c, radial.n, radial.k, ell)?;
        let basis = radial.basis();
        Ok(Self {
            mode,
            radial,
            basis,
        })
    }

    pub fn mode(&self) -> &ModeIndex {
        &self.mode
    }

    pub fn radial(&self) -> &RadialExpansion {
        &self.radial
    }

    pub fn chi(&self) -> f64 {
        self.radial.chi
    }

    /// f(η), f′(η), f″(η) of the Jacobi series.
    pub fn profile(&self, eta: f64) -> (f64, f64, f64) {
        self.radial.profile_with_derivatives(&self.basis, eta)
    }

    /// Radial factor g(r) = f(2r² − 1) r^n.
    pub fn radial_profile(&self, r: f64) -> f64 {
        let eta = (2.0 * r * r - 1.0).clamp(-1.0, 1.0);
        self.profile(eta).0 * r.powi(self.mode.n as i32)
    }

    fn check_in_ball(x: &Vec3) -> Result<f64> {
        let r = x.norm();
        if r.is_nan() || r > 1.0 + 4.0 * f64::EPSILON {
            return Err(Error::Domain(format!(
                "point must lie in the closed unit ball, |x| = {r}"
            )));
        }
        Ok(r)
    }

    /// ψ(x) for |x| ≤ 1.
    pub fn eval(&self, x: &Vec3) -> Result<f64> {
        let r = Self::check_in_ball(x)?;
        let g = self.radial_profile(r);
        if r == 0.0 {
            // r^n Y vanishes at the origin unless n = 0, where Y is constant.
            return Ok(if self.mode.n == 0 {
                g * 0.5 / std::f64::consts::PI.sqrt()
            } else {
                0.0
            });
        }
        let dir = SphericalDirection::from_point(x)?;
        Ok(g * angular_parts(self.mode.spherical_index(), &dir).value)
    }
}

/// Divergence-free vector PSWF ψ⃗ = (x×∇)ψ.
#[derive(Debug, Clone)]
pub struct VectorPswf {
    scalar: ScalarPswf,
}

impl VectorPswf {
    /// Requires n ≥ 1.
    pub fn new(mode: ModeIndex) -> Result<Self> {
        if mode.n == 0 {
            return Err(Error::Index("divergence-free PSWFs need n >= 1".into()));
        }
        let radial = solve_mode(mode.n, mode.k, mode.alpha, mode.c, Family::Vector)?;
        Self::from_scalar(ScalarPswf::from_expansion(radial, mode.ell)?)
    }

    pub fn from_scalar(scalar: ScalarPswf) -> Result<Self> {
        if scalar.mode.n == 0 {
            return Err(Error::Index("divergence-free PSWFs need n >= 1".into()));
        }
        Ok(Self { scalar })
    }

    pub fn scalar(&self) -> &ScalarPswf {
        &self.scalar
    }

    pub fn mode(&self) -> &ModeIndex {
        &self.scalar.mode
    }

    pub fn chi(&self) -> f64 {
        self.scalar.chi()
    }

    /// ψ⃗(x) in Cartesian components.
    ///
    /// The origin returns zero; other points of the polar axis are rejected.
    pub fn eval(&self, x: &Vec3) -> Result<Vec3> {
        let r = ScalarPswf::check_in_ball(x)?;
        if r == 0.0 {
            return Ok(Vec3::zeros());
        }
        let dir = SphericalDirection::from_point(x)?;
        let y3 = crate::special_functions::vector_spherical_harmonic(
            self.mode().spherical_index(),
            VshFamily::Toroidal,
            &dir,
        )?;
        Ok(y3 * self.scalar.radial_profile(r))
    }
}
