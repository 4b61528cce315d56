use thiserror::Error;

/// Errors raised by state construction, channel validation, and the
/// closed-form measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (anti-Hermitian residual {0:.3e})")]
    NonHermitian(f64),
    #[error("Bloch vector norm {0} exceeds 1")]
    BlochNormExceeded(f64),
    #[error("state determinant {0:.3e} is negative beyond tolerance")]
    NegativeDeterminant(f64),
    #[error("channel violates complete positivity (slack A {slack_a:.3e}, slack B {slack_b:.3e})")]
    InvalidChannel { slack_a: f64, slack_b: f64 },
    #[error("lambda3 = 1 leaves every sigma3-axis state invariant")]
    DegenerateFixedPoint,
    #[error(
        "maximally non-unital endpoint violates complete positivity (condition B slack {0:.3e})"
    )]
    EndpointNotCp(f64),
    #[error("Schatten exponent must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),
    #[error("Bloch vector is not unit length (norm {0})")]
    NotPure(f64),
    #[error("matrix violates the X sparsity pattern (residual {0:.3e})")]
    NotXState(f64),
    #[error("value {0} lies outside the valid range")]
    OutOfRange(f64),
    #[error("fixed-point iteration does not contract: |lambda3| >= 1 - 1e-12")]
    NoConvergence,
}

pub type Result<T> = std::result::Result<T, Error>;
