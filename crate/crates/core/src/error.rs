use std::fmt;

use thiserror::Error;

/// Which kind of table line a diagnostic points at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Line::Row => "row",
            Line::Column => "column",
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("element 0 is not an identity: {line} {index} breaks the identity law")]
    NoIdentity { line: Line, index: usize },
    #[error("not a latin square: {line} {index} repeats an element")]
    NotLatinSquare { line: Line, index: usize },
    #[error("not associative: ({a} {b}) {c} != {a} ({b} {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator is not a bijection")]
    NotAPermutation,
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    #[error("exponent {s} is not coprime to conductor {conductor}")]
    NotCoprime { s: i64, conductor: u32 },
    #[error("value is not an algebraic integer")]
    NotAlgebraicInteger,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("character table verification failed: {0}")]
    VerificationFailed(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CliffordError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{cells} equivalence cells but {classes} G-classes in N")]
    CellCountMismatch { cells: usize, classes: usize },
    #[error("X D X^t has a nonzero off-diagonal entry at ({0}, {1})")]
    LambdaNotDiagonal(usize, usize),
    #[error("diagonal entry {0} of X D X^t is not a positive integer")]
    LambdaNotPositiveInteger(usize),
    #[error("the G-character table is singular")]
    SingularX,
    #[error("relation {relation} for row {row} is not integral")]
    NonIntegral { relation: char, row: usize },
    #[error("conjugation by G does not permute Irr(N)")]
    ActionMismatch,
    #[error("table path and oracle path disagree on {0}")]
    PathDisagreement(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TheoremError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("determinant value is not a root of unity")]
    NotRootOfUnity,
    #[error("congruence check failed: {0}")]
    CongruenceFailed(String),
    #[error("table path and oracle path disagree on {0}")]
    PathDisagreement(String),
}

impl TheoremError {
    /// True for errors that can only come from an implementation bug.
    pub fn is_internal(&self) -> bool {
        match self {
            TheoremError::Group(_) => false,
            TheoremError::Table(TableError::Group(_)) => false,
            TheoremError::Clifford(CliffordError::Group(_)) => false,
            TheoremError::Clifford(CliffordError::Table(TableError::Group(_))) => false,
            _ => true,
        }
    }
}
