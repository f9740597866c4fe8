use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// Usage errors (shape, rank and label mismatches) are separated from domain
/// errors (non-invertible elements, ineligible configurations) so that callers
/// reporting on batch checks can tell a bad invocation from a failed premise.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("operation requires a field, but {0} is not one")]
    NotAField(&'static str),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("matrix is not a signed permutation matrix")]
    NotSignedPermutation,
    #[error("unknown generator label `{0}`")]
    BadLabel(String),
    #[error("element is not parity-homogeneous")]
    MixedParity,
    #[error("element is not even")]
    NotEven,
    #[error("representative does not satisfy l + tau(l) = 1")]
    NotASemiTraceRepresentative,
    #[error("matrix does not preserve the hyperbolic form")]
    NotOrthogonal,
    #[error("requires characteristic 2, ring has characteristic {0}")]
    WrongCharacteristic(u64),
    #[error("rank n = {n} outside supported range {min}..={max}")]
    UnsupportedRank { n: usize, min: usize, max: usize },
    #[error("not eligible: {0}")]
    Ineligible(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
