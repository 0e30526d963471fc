//! Sampling grids for field export.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Plane z = level, square grid in (x, y).
    SliceZ,
    /// Plane y = level, square grid in (x, z).
    SliceY,
    /// Cube grid clipped to the ball.
    Ball3d,
    /// Sphere |x| = level, (θ, φ) grid with θ at cell midpoints.
    SphereShell,
}

impl FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "slice-z" => Ok(GridKind::SliceZ),
            "slice-y" => Ok(GridKind::SliceY),
            "ball3d" => Ok(GridKind::Ball3d),
            "sphere-shell" => Ok(GridKind::SphereShell),
            _ => Err(Error::Parameter(format!(
                "unknown grid kind {s:?}; expected slice-z, slice-y, ball3d or sphere-shell"
            ))),
        }
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridKind::SliceZ => "slice-z",
            GridKind::SliceY => "slice-y",
            GridKind::Ball3d => "ball3d",
            GridKind::SphereShell => "sphere-shell",
        })
    }
}

/// Grid description parsed from `KIND:RES`.
///
/// `extent` bounds the square/cube coordinates to [−extent, extent];
/// `level` is the plane offset of slices or the radius of the shell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldGridSpec {
    pub kind: GridKind,
    pub resolution: usize,
    pub extent: f64,
    pub level: f64,
}

impl FromStr for FieldGridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, res) = s.split_once(':').unwrap_or((s, "64"));
        let resolution: usize = res
            .parse()
            .map_err(|_| Error::Parameter(format!("bad grid resolution {res:?}")))?;
        let kind: GridKind = kind.parse()?;
        let (extent, level) = match kind {
            GridKind::SliceZ | GridKind::SliceY => (std::f64::consts::FRAC_1_SQRT_2, 0.0),
            GridKind::Ball3d => (1.0 / 3f64.sqrt(), 0.0),
            GridKind::SphereShell => (1.0, 0.9),
        };
        FieldGridSpec::new(kind, resolution, extent, level)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

impl FieldGridSpec {
    pub fn new(kind: GridKind, resolution: usize, extent: f64, level: f64) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::Parameter("grid resolution must be >= 1".into()));
        }
        if !(extent > 0.0 && extent <= 1.0) {
            return Err(Error::Parameter(format!(
                "grid extent must lie in (0, 1], got {extent}"
            )));
        }
        if level.is_nan() || level.abs() > 1.0 || (kind == GridKind::SphereShell && level <= 0.0) {
            return Err(Error::Parameter(format!(
                "grid level {level} is outside the ball"
            )));
        }
        Ok(Self {
            kind,
            resolution,
            extent,
            level,
        })
    }

    /// Points in row order; points outside the closed ball are skipped.
    pub fn points(&self) -> Vec<Vec3> {
        let n = self.resolution;
        let axis = linspace(-self.extent, self.extent, n);
        let raw: Vec<Vec3> = match self.kind {
            GridKind::SliceZ => axis
                .iter()
                .flat_map(|x| axis.iter().map(move |y| Vec3::new(*x, *y, self.level)))
                .collect(),
            GridKind::SliceY => axis
                .iter()
                .flat_map(|x| axis.iter().map(move |z| Vec3::new(*x, self.level, *z)))
                .collect(),
            GridKind::Ball3d => axis
                .iter()
                .flat_map(|x| {
                    let axis = &axis;
                    axis.iter()
                        .flat_map(move |y| axis.iter().map(move |z| Vec3::new(*x, *y, *z)))
                })
                .collect(),
            GridKind::SphereShell => {
                let r = self.level;
                (0..n)
                    .flat_map(|i| {
                        let theta = (i as f64 + 0.5) * PI / n as f64;
                        (0..2 * n).map(move |j| {
                            let phi = j as f64 * PI / n as f64;
                            Vec3::new(
                                theta.sin() * phi.cos(),
                                theta.sin() * phi.sin(),
                                theta.cos(),
                            ) * r
                        })
                    })
                    .collect()
            }
        };
        raw.into_iter()
            .filter(|p| p.norm() <= 1.0 + 4.0 * f64::EPSILON)
            .collect()
    }
}

/// One exported row: point and field value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorFieldSample {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub vx: f64,
    pub vy: f64,
    pub vz: f64,
}

impl VectorFieldSample {
    pub fn new(p: &Vec3, v: &Vec3) -> Self {
        Self {
            x: p.x,
            y: p.y,
            z: p.z,
            vx: v.x,
            vy: v.y,
            vz: v.z,
        }
    }
}
