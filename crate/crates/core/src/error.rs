use thiserror::Error;

/// Everything that can go wrong while validating input or building coverings.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("abscissas must be strictly increasing: x[{index}] = {prev} is not below x[{next_index}] = {next}", next_index = index + 1)]
    NonIncreasingAbscissas { index: usize, prev: f64, next: f64 },

    #[error("length mismatch: `{field}` has {got} entries, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("scaling factor d[{index}] = {value} is outside [0, 1)")]
    ScalingOutOfRange { index: usize, value: f64 },

    #[error("need at least 3 interpolation points (n >= 2 maps), got {points}")]
    TooFewPoints { points: usize },

    #[error("non-finite value in `{field}` at index {index}")]
    NonFiniteValue { field: &'static str, index: usize },

    #[error("map is not a contraction in x or y (a = {a}, d = {d})")]
    DegenerateMap { a: f64, d: f64 },

    #[error("letter {letter} is out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("words must contain at least one letter")]
    EmptyWord,

    #[error("{n}^{depth} composed maps exceed the cap of {cap}")]
    DepthCapExceeded { n: usize, depth: usize, cap: usize },

    #[error("malformed document (line {line}, column {column}): {message}")]
    MalformedDocument {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn malformed(message: impl Into<String>) -> Self {
        Error::MalformedDocument {
            line: 0,
            column: 0,
            message: message.into(),
        }
    }

    /// True for errors raised by input validation (as opposed to parsing or capacity).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NonIncreasingAbscissas { .. }
                | Error::LengthMismatch { .. }
                | Error::ScalingOutOfRange { .. }
                | Error::TooFewPoints { .. }
                | Error::NonFiniteValue { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
