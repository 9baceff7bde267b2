use thiserror::Error;

/// Errors raised by the walk, entropy and limit computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitudes not normalized: |x|^2 + |y|^2 = {0}")]
    NotNormalized(f64),

    #[error("coin determinant must have modulus 1, got |delta| = {0}")]
    BadDeterminant(f64),

    #[error("unknown coin name `{0}`")]
    UnknownName(String),

    #[error("could not parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("hypergeometric series has a pole: c = {0} is a nonpositive integer")]
    PoleInC(f64),

    #[error("index out of domain: {0}")]
    DomainError(String),

    #[error("scaled exponent left the representable range ({0})")]
    DivergentScale(String),

    #[error("closed forms need abcd != 0; use amplitude evolution for this coin")]
    CoinDegenerate,

    #[error("bad entropy order {0}: finite orders must satisfy alpha >= 0 and alpha != 1")]
    BadOrder(f64),

    #[error("variant {variant} is undefined at alpha = {alpha}")]
    VariantDomain { variant: &'static str, alpha: f64 },

    #[error("integral of f^alpha diverges for alpha = {0} >= 2")]
    DivergentIntegral(f64),

    #[error("quadrature did not converge: error estimate {estimate:e} exceeds {limit:e}")]
    NonConvergedQuadrature { estimate: f64, limit: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
