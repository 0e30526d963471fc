use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside its admissible domain (α ≤ −1, zero counts, …).
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An evaluation point lies outside the domain of the function.
    #[error("argument outside domain: {0}")]
    Domain(String),
    /// A (n, ℓ) or family index outside its index set.
    #[error("index out of range: {0}")]
    Index(String),
    /// Evaluation on the polar axis where angular unit vectors are undefined.
    #[error("evaluation on the polar axis: {0}")]
    Pole(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    /// Inconsistent inputs, e.g. a quadrature rule built for another weight.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("sampling error: {0}")]
    Sampling(String),
    /// Two independent eigenvalue routes disagree.
    #[error("eigensolver disagreement: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
