//! Jacobi polynomials, real spherical harmonics and vector spherical harmonics.

pub mod harmonics;
pub mod jacobi;

pub use harmonics::{
    angular_parts, spherical_harmonic, spherical_harmonic_grad, vector_spherical_harmonic,
    AngularParts, Azimuthal, SphericalDirection, SphericalIndex, VshFamily,
};
pub use jacobi::{
    jacobi_derivative, jacobi_eval, jacobi_second_derivative, jacobi_table, norm_constant,
    recurrence_coeffs, JacobiBasis, JacobiParams, JacobiTable,
};
