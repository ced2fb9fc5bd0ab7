use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("ambient space mismatch: S_{left_k} in {left_n} vs S_{right_k} in {right_n}")]
    AmbientMismatch {
        left_n: usize,
        left_k: u32,
        right_n: usize,
        right_k: u32,
    },

    #[error("variable index {index} out of range for {vars} variables")]
    IndexOutOfRange { index: usize, vars: usize },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} = {value} outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("partial derivatives are linearly dependent (polynomial is a cone)")]
    DependentPartials,

    #[error("generators are linearly dependent: span has dimension {rank}, expected {expected}")]
    DependentGenerators { rank: usize, expected: usize },

    #[error("generators do not form a complete intersection")]
    NotCompleteIntersection,

    #[error("polynomial is not smooth")]
    NotSmooth,

    #[error("polynomial is of Sebastiani-Thom type (s = {s})")]
    SebastianiThom { s: usize },

    #[error("graded piece has dimension {found}, expected {expected}")]
    PieceDimension { expected: usize, found: usize },

    #[error("orthogonal complement in the socle degree has dimension {0}, expected 1")]
    ComplementNotLine(usize),

    #[error("subspace is not the graded piece of the ideal it determines")]
    NotAnIdealPiece,

    #[error("no admissible instance after {attempts} attempts")]
    AttemptsExhausted { attempts: usize },
}

impl Error {
    /// True when the input was well formed but violates a mathematical precondition
    /// (as opposed to a parse or shape error).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::DependentPartials
                | Error::DependentGenerators { .. }
                | Error::NotCompleteIntersection
                | Error::NotSmooth
                | Error::SebastianiThom { .. }
                | Error::PieceDimension { .. }
                | Error::ComplementNotLine(_)
                | Error::NotAnIdealPiece
                | Error::AttemptsExhausted { .. }
        )
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
