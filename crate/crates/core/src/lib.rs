//! Prolate spheroidal wave functions on the unit ball of R³.
//!
//! The crate computes scalar ball PSWFs ψ(x; c) and their divergence-free
//! vectorial counterparts ψ⃗ = (x×∇)ψ with a Jacobi-polynomial spectral
//! (Bouwkamp-type) method, and ships independent numerical checks of every
//! eigen-relation they satisfy:
//!
//! * [`special_functions`]: normalized Jacobi polynomials, real spherical
//!   harmonics and the three vector spherical harmonic families.
//! * [`quadrature`]: Gauss rules built by Golub–Welsch, sphere and weighted
//!   ball tensor rules.
//! * [`bouwkamp`]: the symmetric tridiagonal eigenproblem for the radial
//!   Jacobi coefficients and the eigenvalues χ.
//! * [`pswf`]: evaluation of scalar and vector PSWFs and the Sturm–Liouville
//!   operators applied to them.
//! * [`verification`]: finite Fourier transform eigen-relations, Gram
//!   matrices and an exact polynomial identity suite.
//! * [`cli`]: the command-line front end.

pub mod bouwkamp;
pub mod cli;
mod error;
pub mod pswf;
pub mod quadrature;
pub mod special_functions;
pub mod verification;

pub use error::{Error, Result};

/// Cartesian 3-vector used for points and field values.
pub type Vec3 = nalgebra::Vector3<f64>;
