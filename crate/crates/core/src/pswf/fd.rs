//! Second-order central differences for scalar and vector fields on R³.

use nalgebra::Matrix3;

use crate::{Result, Vec3};

fn unit(i: usize) -> Vec3 {
    let mut e = Vec3::zeros();
    e[i] = 1.0;
    e
}

/// J[(i, j)] = ∂_j F_i.
pub fn jacobian<F>(f: &F, x: &Vec3, h: f64) -> Result<Matrix3<f64>>
where
    F: Fn(&Vec3) -> Result<Vec3>,
{
    let mut j = Matrix3::zeros();
    for col in 0..3 {
        let e = unit(col) * h;
        let d = (f(&(x + e))? - f(&(x - e))?) / (2.0 * h);
        j.set_column(col, &d);
    }
    Ok(j)
}

pub fn gradient<F>(f: &F, x: &Vec3, h: f64) -> Result<Vec3>
where
    F: Fn(&Vec3) -> Result<f64>,
{
    let mut g = Vec3::zeros();
    for i in 0..3 {
        let e = unit(i) * h;
        g[i] = (f(&(x + e))? - f(&(x - e))?) / (2.0 * h);
    }
    Ok(g)
}

pub fn divergence<F>(f: &F, x: &Vec3, h: f64) -> Result<f64>
where
    F: Fn(&Vec3) -> Result<Vec3>,
{
    Ok(jacobian(f, x, h)?.trace())
}

pub fn curl<F>(f: &F, x: &Vec3, h: f64) -> Result<Vec3>
where
    F: Fn(&Vec3) -> Result<Vec3>,
{
    let j = jacobian(f, x, h)?;
    Ok(curl_from_jacobian(&j))
}

pub fn curl_from_jacobian(j: &Matrix3<f64>) -> Vec3 {
    Vec3::new(
        j[(2, 1)] - j[(1, 2)],
        j[(0, 2)] - j[(2, 0)],
        j[(1, 0)] - j[(0, 1)],
    )
}

/// (x × ∇) f for a scalar field.
pub fn rotational<F>(f: &F, x: &Vec3, h: f64) -> Result<Vec3>
where
    F: Fn(&Vec3) -> Result<f64>,
{
    Ok(x.cross(&gradient(f, x, h)?))
}

/// Value, Jacobian and per-component Hessians of a vector field, all from
/// one 19-point stencil.
#[derive(Debug, Clone)]
pub struct Stencil {
    pub value: Vec3,
    pub jacobian: Matrix3<f64>,
    pub hessians: [Matrix3<f64>; 3],
}

impl Stencil {
    pub fn new<F>(f: &F, x: &Vec3, h: f64) -> Result<Self>
    where
        F: Fn(&Vec3) -> Result<Vec3>,
    {
        let f0 = f(x)?;
        let mut plus = [Vec3::zeros(); 3];
        let mut minus = [Vec3::zeros(); 3];
        for i in 0..3 {
            plus[i] = f(&(x + unit(i) * h))?;
            minus[i] = f(&(x - unit(i) * h))?;
        }
        let mut jacobian = Matrix3::zeros();
        let mut hessians = [Matrix3::zeros(); 3];
        for i in 0..3 {
            jacobian.set_column(i, &((plus[i] - minus[i]) / (2.0 * h)));
            let d2 = (plus[i] - f0 * 2.0 + minus[i]) / (h * h);
            for c in 0..3 {
                hessians[c][(i, i)] = d2[c];
            }
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                let (ei, ej) = (unit(i) * h, unit(j) * h);
                let pp = f(&(x + ei + ej))?;
                let pm = f(&(x + ei - ej))?;
                let mp = f(&(x - ei + ej))?;
                let mm = f(&(x - ei - ej))?;
                let d = (pp - pm - mp + mm) / (4.0 * h * h);
                for c in 0..3 {
                    hessians[c][(i, j)] = d[c];
                    hessians[c][(j, i)] = d[c];
                }
            }
        }
        Ok(Self {
            value: f0,
            jacobian,
            hessians,
        })
    }

    /// Componentwise Laplacian.
    pub fn laplacian(&self) -> Vec3 {
        Vec3::from_fn(|c, _| self.hessians[c].trace())
    }

    /// Componentwise xᵀ H x, the second radial derivative times r².
    pub fn radial_second(&self, x: &Vec3) -> Vec3 {
        Vec3::from_fn(|c, _| x.dot(&(self.hessians[c] * x)))
    }

    /// Componentwise x·∇.
    pub fn radial_first(&self, x: &Vec3) -> Vec3 {
        self.jacobian * x
    }

    /// Componentwise Laplace–Beltrami Δ₀ = r²Δ − xᵀHx − 2x·∇.
    pub fn laplace_beltrami(&self, x: &Vec3) -> Vec3 {
        self.laplacian() * x.norm_squared() - self.radial_second(x) - self.radial_first(x) * 2.0
    }
}
