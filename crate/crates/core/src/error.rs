use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameters outside the region where an object is defined.
    #[error("parameter domain: {0}")]
    Domain(String),
    /// A Pochhammer or Gamma denominator vanishes.
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("Gamma pole at {0}")]
    Pole(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("series did not converge within {terms} terms")]
    SlowConvergence { terms: usize },
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    #[error("parse error: {0}")]
    Parse(String),
}
