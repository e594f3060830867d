use thiserror::Error;

use crate::magma::{Elem, Op, Window};

/// Failure to evaluate `x op y`.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{op}({x}, {y}): argument outside the carrier")]
    OutOfCarrier { op: Op, x: Elem, y: Elem },
    #[error("{op}({x}, {y}): no clause matches")]
    NoClauseMatches { op: Op, x: Elem, y: Elem },
    #[error("{op}({x}, {y}) = {value} lies outside the carrier")]
    ResultOutsideCarrier { op: Op, x: Elem, y: Elem, value: Elem },
    #[error("{op}({x}, {y}): division by 2 of odd value {dividend}")]
    InexactHalving { op: Op, x: Elem, y: Elem, dividend: Elem },
    #[error("{op}({x}, {y}): integer overflow")]
    Overflow { op: Op, x: Elem, y: Elem },
    #[error("mul({x}, {y}): left argument outside the construction window {window}")]
    OutsideConstruction { x: Elem, y: Elem, window: Window },
    #[error("generator `{0}` is not assigned")]
    UnboundGenerator(String),
    #[error("constant {0} is not an element of the carrier")]
    ConstantOutsideCarrier(Elem),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("empty window [{lo}, {hi}]")]
    EmptyWindow { lo: Elem, hi: Elem },
    #[error("`{name}` has an infinite carrier; a window is required")]
    InfiniteCarrier { name: String },
    #[error("window {window} does not meet the carrier of `{name}`")]
    DisjointWindow { window: Window, name: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table has no rows")]
    Empty,
    #[error("unit {unit} out of range for size {size}")]
    UnitOutOfRange { unit: usize, size: usize },
    #[error("{op} table has {rows} rows, expected {size}")]
    RowCount { op: Op, rows: usize, size: usize },
    #[error("{op} row {row} has {len} entries, expected {size}")]
    RowLength { op: Op, row: usize, len: usize, size: usize },
    #[error("{op}[{row}][{col}] = {value} out of range for size {size}")]
    EntryOutOfRange { op: Op, row: usize, col: usize, value: usize, size: usize },
}

/// Syntax or semantic error in one of the text formats, with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown builtin `{name}`; available: {available}")]
    UnknownBuiltin { name: String, available: String },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
