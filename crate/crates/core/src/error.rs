use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: {1}")]
    InvalidModulus(u32, &'static str),
    #[error("ring setup: {0}")]
    Ring(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("entry ({row},{col}) is not a linear form")]
    NonLinear { row: usize, col: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("generator {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("{0} is not in the ideal")]
    NotMember(&'static str),
    #[error("linking forms share a common factor")]
    CommonFactor,
    #[error("expected codimension {expected}, Hilbert data gives {found}")]
    CodimMismatch { expected: usize, found: usize },
    #[error("input does not define a curve: {0}")]
    NotCurve(String),
    #[error("cohomology support touches the window boundary at {0}; widen the window")]
    WindowBoundary(i64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("certification failed: {0}")]
    Certification(String),
}
