use thiserror::Error;

/// Errors raised while building or certifying the algebraic objects.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("enumeration budget of {budget} elements exceeded")]
    BudgetExceeded { budget: usize },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("subgroup is not contained in the group")]
    NotASubgroup,
    #[error("group is not transitive")]
    Intransitive,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("vector dimension {0} exceeds the supported 64 coordinates")]
    DimensionTooLarge(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("submodule scan needs an order-5 generator or dimension at most 5 (dim {0})")]
    ScanInapplicable(usize),
    #[error("no order-4 generator supplied")]
    NoOrderFour,
    #[error("relation {relation} fails for the {group} generators")]
    Relation { group: &'static str, relation: String },
    #[error("check `{check}` failed: {witness}")]
    Check { check: String, witness: String },
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("inconsistent coset data: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn check(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Check {
            check: check.into(),
            witness: witness.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
