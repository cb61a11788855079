use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} is out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle notation at byte {pos}: {msg}")]
    Malformed { pos: usize, msg: String },
    #[error("point {point} appears twice in one cycle")]
    RepeatedPoint { point: usize },
    #[error("not a permutation: {0}")]
    NotBijective(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {0} is not supported (must be 1..=255)")]
    UnsupportedDegree(usize),
    #[error("generator list is empty")]
    NoGenerators,
    #[error("group order exceeds the hard maximum of {max}")]
    OrderTooLarge { max: u64 },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: u64, bound: u64 },
    #[error("{0} is not an element of the group")]
    NotMember(String),
    #[error("unknown conjugacy class label {0:?}")]
    UnknownClass(String),
    #[error("class {0:?} is the identity class")]
    TrivialClass(String),
    #[error("a class vector needs at least two entries, got {0}")]
    ShortClassVector(usize),
    #[error("search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("braid generator index {index} is out of range 1..={max}")]
    BraidIndex { index: usize, max: usize },
    #[error("group order {order} exceeds the cohomology bound {bound}")]
    CohomologyBound { order: usize, bound: usize },
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("invalid ramification datum: {0}")]
    InvalidDatum(String),
    #[error("degree {degree} of the cyclotomic polynomial exceeds the bound {bound}")]
    CyclotomicDegree { degree: usize, bound: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    /// Bound or budget exhaustion, as opposed to bad input.
    pub fn is_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::OrderTooLarge { .. }
                | Error::EnumerationBound { .. }
                | Error::BudgetExceeded { .. }
                | Error::CohomologyBound { .. }
                | Error::CyclotomicDegree { .. }
        )
    }
}
