use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("gluing matrix has determinant {det}, expected +1 or -1")]
    InvalidMatrix { det: i64 },

    #[error("{p} is not a prime")]
    InvalidPrime { p: i64 },

    #[error("no index-set table row matches (m1, n1, m2, n2) = {0:?}")]
    NoMatchingRow((i64, i64, i64, i64)),

    #[error("element E fails the boundary identity for d3: {0}")]
    EVerificationFailure(String),

    #[error("lattice label integration is inconsistent: {0}")]
    UnsolvableSystem(String),

    #[error("chain complex identity violated: {0}")]
    ChainComplexViolation(String),

    #[error("expected an integral value: {0}")]
    NonIntegralCoefficient(String),

    #[error("inconsistent rank/determinant classification: {0}")]
    DegenerateClassification(String),

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("cochains live over different coefficient rings")]
    RingMismatch,

    #[error("cup product of degrees {0} and {1} is not supported")]
    DegreeOutOfRange(usize, usize),

    #[error("cup product structure constants disagree: {0}")]
    DiagonalMismatch(String),

    #[error("presentation relation does not hold: {0}")]
    PresentationMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
