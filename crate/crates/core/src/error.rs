use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative power of eps in: {0}")]
    NegativeEpsPower(String),

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("width {width} exceeds the cap of {cap}")]
    WidthTooLarge { width: usize, cap: usize },

    #[error("product has negative eps-order {0}; no limit exists")]
    NegativeLimit(i64),

    #[error("not a member: entry ({row},{col}) has offending term {term}")]
    NotMember { row: usize, col: usize, term: String },

    #[error("certificate order {have} is below the required order {need}")]
    OrderTooLow { have: i64, need: i64 },

    #[error("substitution eps = {0} hits a pole")]
    SubstitutionPole(String),

    #[error("degree bound {given} is below the measured error degree {measured}")]
    InsufficientDegree { given: i64, measured: i64 },

    #[error("needs {needed} (cap is {cap})")]
    CapExceeded { needed: usize, cap: usize },

    #[error("label {0} is not allowed here")]
    BadLabel(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
