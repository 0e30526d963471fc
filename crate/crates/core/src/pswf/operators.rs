//! Sturm–Liouville operators applied to PSWFs.
//!
//! ```text
//! 𝓛 = −Δ + xᵀ(∇∇)x + (2α+4) x·∇ + c²|x|²                     (componentwise)
//! 𝓓 = (1−|x|²)^{−α} ∇×(1−|x|²)^{α+1}∇× − Δ₀ + c²|x|²
//! ```
//!
//! The radial form of 𝓛 is applied analytically; everything else uses
//! central differences.

use super::fd::{self, Stencil};
use super::{ScalarPswf, VectorPswf};
use crate::{Error, Result, Vec3};

/// 𝓛 applied to the radial factor g(r) = f(2r²−1) rⁿ of `s`.
///
/// Expected to return χ·g(r).
pub fn apply_l_radial(s: &ScalarPswf, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("radius must lie in (0, 1), got {r}")));
    }
    let mode = s.mode();
    let n = mode.n as i32;
    let nf = mode.n as f64;
    let eta = 2.0 * r * r - 1.0;
    let (f, f1, f2) = s.profile(eta);
    // d/dr f(2r²−1) = 4r f′,  d²/dr² = 16r² f″ + 4 f′
    let rn = r.powi(n);
    let g = f * rn;
    let g1 = 4.0 * r * f1 * rn + nf * f * r.powi(n - 1);
    let g2 = 16.0 * r * r * f2 * rn
        + 4.0 * f1 * rn
        + 8.0 * nf * f1 * rn
        + nf * (nf - 1.0) * f * r.powi(n - 2);
    let alpha = mode.alpha;
    let c2 = mode.c * mode.c;
    Ok(-(1.0 - r * r) * g2 - 2.0 / r * g1
        + (2.0 * alpha + 4.0) * r * g1
        + nf * (nf + 1.0) / (r * r) * g
        + c2 * r * r * g)
}

/// Rejects stencils that leave the ball or touch the polar axis.
fn check_stencil(x: &Vec3, h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Parameter(format!(
            "FD step must be positive, got {h}"
        )));
    }
    if x.norm() + 2.0 * h >= 1.0 {
        return Err(Error::Domain(format!(
            "stencil of width {h} around |x| = {} leaves the ball",
            x.norm()
        )));
    }
    if x.x.hypot(x.y) <= 2.0 * h {
        return Err(Error::Pole("stencil touches the polar axis".into()));
    }
    Ok(())
}

/// Componentwise Δ₀ of a vector field.
pub fn laplace_beltrami_fd<F>(f: &F, x: &Vec3, h: f64) -> Result<Vec3>
where
    F: Fn(&Vec3) -> Result<Vec3>,
{
    Ok(Stencil::new(f, x, h)?.laplace_beltrami(x))
}

/// Componentwise 𝓛 of an arbitrary vector field.
pub fn apply_l_fd_field<F>(f: &F, alpha: f64, c: f64, x: &Vec3, h: f64) -> Result<Vec3>
where
    F: Fn(&Vec3) -> Result<Vec3>,
{
    let s = Stencil::new(f, x, h)?;
    Ok(-s.laplacian()
        + s.radial_second(x)
        + s.radial_first(x) * (2.0 * alpha + 4.0)
        + s.value * (c * c * x.norm_squared()))
}

/// 𝓛ψ⃗ at x; expected to equal χψ⃗.
pub fn apply_l_fd(v: &VectorPswf, x: &Vec3, h: f64) -> Result<Vec3> {
    check_stencil(x, h)?;
    let m = v.mode();
    apply_l_fd_field(&|y: &Vec3| v.eval(y), m.alpha, m.c, x, h)
}

/// 𝓓 of an arbitrary vector field, with the two curls nested literally.
pub fn apply_d_fd_field<F>(f: &F, alpha: f64, c: f64, x: &Vec3, h: f64) -> Result<Vec3>
where
    F: Fn(&Vec3) -> Result<Vec3>,
{
    let weighted_curl = |y: &Vec3| -> Result<Vec3> {
        Ok(fd::curl(f, y, h)? * (1.0 - y.norm_squared()).powf(alpha + 1.0))
    };
    let w = 1.0 - x.norm_squared();
    let outer = fd::curl(&weighted_curl, x, h)? / w.powf(alpha);
    let s = Stencil::new(f, x, h)?;
    Ok(outer - s.laplace_beltrami(x) + s.value * (c * c * x.norm_squared()))
}

/// 𝓓ψ⃗ at x; expected to equal (χ + 2α + 2)ψ⃗.
pub fn apply_d_fd(v: &VectorPswf, x: &Vec3, h: f64) -> Result<Vec3> {
    check_stencil(x, h)?;
    let m = v.mode();
    apply_d_fd_field(&|y: &Vec3| v.eval(y), m.alpha, m.c, x, h)
}

/// ∇·ψ⃗ at x by central differences.
pub fn divergence_fd(v: &VectorPswf, x: &Vec3, h: f64) -> Result<f64> {
    check_stencil(x, h)?;
    fd::divergence(&|y: &Vec3| v.eval(y), x, h)
}
