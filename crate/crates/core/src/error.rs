use thiserror::Error;

use crate::matrix::ValidationReport;

/// Malformed input: wrong shape, unparsable text, labels outside `1..=n`.
///
/// Positions (`row`, `col`, `line`) are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("expected {n} rows, found {found}")]
    RowCount { n: usize, found: usize },
    #[error("entry at row {row}, column {col} is {value}, outside 1..={n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        n: usize,
    },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("bad permutation syntax: {0}")]
    Syntax(String),
    #[error("image {value} at position {position} is outside 1..={n}")]
    OutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },
    #[error("label {value} appears more than once")]
    Repeated { value: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("not a cycle matrix: {0}")]
    Invalid(ValidationReport),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("group has more than {limit} elements")]
    GroupOverflow { limit: usize },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Precondition failures of the block constructions.
///
/// Factor, block and row indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("factor {factor} is not a trivial solution")]
    NotTrivial { factor: usize },
    #[error("permutation for factor {factor} is not an automorphism (fails at label {witness})")]
    NotAutomorphism { factor: usize, witness: usize },
    #[error("cumulative automorphism for stage {stage} fails at label {witness}")]
    NotCumulativeAutomorphism { stage: usize, witness: usize },
    #[error("block permutations {i} and {j} on the second factor do not commute")]
    NonCommuting { i: usize, j: usize },
    #[error("partition blocks {blocks:?} do not cover 1..={size} contiguously")]
    BadPartition { blocks: Vec<usize>, size: usize },
    #[error(
        "permutation for row {row}, block {block} acts on {found} labels, block has {expected}"
    )]
    LabelOutOfBlock {
        row: usize,
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row} lies in block {block}; the diagonal block is given by its factor")]
    DiagonalBlock { row: usize, block: usize },
    #[error("expected {expected} {what}, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Spec(String),
    #[error("constructed matrix failed validation: {0}")]
    Internal(ValidationReport),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
