use thiserror::Error;

/// Every rejected precondition in the crate surfaces as one of these.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid root system {series}{rank}: allowed are A(r>=1), B(r>=2), C(r>=2), D(r>=3), E(r=6,7,8), F(r=4), G(r=2)")]
    InvalidRootSystem { series: char, rank: usize },

    #[error("weight has {got} coordinates but the root system has rank {expected}")]
    WeightRankMismatch { expected: usize, got: usize },

    #[error("census budget exceeded: more than {budget} entries below the cap {cap}")]
    BudgetExceeded { budget: u64, cap: u128 },

    #[error("group order {predicted} exceeds the element budget {budget}")]
    GroupTooLarge { predicted: u64, budget: u64 },

    #[error("{0}")]
    InvalidParameter(String),

    #[error("q = {0} is even; the SL2 local factor formula needs odd residue characteristic")]
    EvenResidueField(u64),

    #[error("q = {0} is not an odd prime power")]
    NotPrimePower(u64),

    #[error("s = {s} is outside the admissible range {range}")]
    ExponentOutOfRange { s: f64, range: &'static str },

    #[error("not enough data: {0}")]
    InsufficientData(String),

    #[error("census is not from a perfect group: r_1 = {0}, expected 1")]
    NotPerfect(u64),

    #[error("lower-bound audit failed for {label}: bound {bound} is below 1/15")]
    AuditFailure { label: String, bound: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
