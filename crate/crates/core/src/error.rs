use thiserror::Error;

/// Errors raised by the checker-surface library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("carrier is not invariant under the permutation (point {0} escapes)")]
    NotInvariant(usize),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a component of the surface: {0:?}")]
    NotAComponent(Vec<usize>),

    #[error("Euler characteristic {0} is not of the form 2 - 2g")]
    InvalidEulerCharacteristic(i64),

    #[error("malformed cell complex: {0}")]
    MalformedComplex(String),

    #[error("label counts do not compose: left surface has {left} white labels, right surface has {right} black labels")]
    LabelMismatch { left: usize, right: usize },

    #[error("label count {labels} exceeds degree {degree}")]
    TooManyLabels { labels: usize, degree: usize },

    #[error("degree {requested} is too small to embed a surface with {needed} triangle pairs")]
    DegreeTooSmall { requested: usize, needed: usize },

    #[error("enumeration needs {needed} operations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("shift product did not stabilize between shifts {j} and {next}")]
    Unstable { j: usize, next: usize },

    #[error("invalid tensor: {0}")]
    InvalidTensor(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
