use thiserror::Error;

/// Errors produced by the algebra engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("homogenizing variable `{0}` must have weight 1 and must not occur in the polynomial")]
    BadHomogenizer(String),

    #[error("ideal is not principal (reduced basis has {0} elements)")]
    NotPrincipal(usize),

    #[error("projection along `{0}` is dominant; no vanishing polynomial exists")]
    NoGenerator(String),

    #[error(
        "target generator {index} has no pure {variable}^{degree} monomial; \
         apply a generic linear change of coordinates first"
    )]
    MissingPurePower {
        index: usize,
        variable: String,
        degree: u64,
    },

    #[error("genericity failure: no admissible random choice within {0} attempts (re-seed and retry)")]
    GenericityFailure(u32),

    #[error("group law violated: {0}")]
    GroupLawViolation(String),

    #[error("image recursion exceeded the round limit of {limit} (dimension failed to drop from {dimension})")]
    RoundLimitExceeded { limit: usize, dimension: i64 },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
