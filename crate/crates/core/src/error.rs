use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure classes, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The symbols (or a requested operation) violate a structural hypothesis.
    Hypothesis,
    /// A numerical procedure failed to deliver its contract.
    Numerical,
    /// Reading, writing or matching persisted artifacts failed.
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol has no coefficients")]
    EmptySymbol,
    #[error("non-finite symbol coefficient c_{index} = {value}")]
    NonFiniteCoefficient { index: usize, value: f64 },
    #[error("preconditioner symbol g is not positive at theta = {theta}")]
    NonPositivePreconditioner { theta: f64 },
    #[error("f = l/g is not strictly increasing on [0, pi]: {reason}")]
    NotMonotone { reason: String },
    #[error("symbol pair has not been certified monotone")]
    NotCertified,
    #[error("|g(theta)| = {value:e} below floor at theta = {theta}")]
    DivisionByZero { theta: f64, value: f64 },
    #[error("value {value} lies outside the range ({lower}, {upper}) of f")]
    NoBracket { value: f64, lower: f64, upper: f64 },
    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },
    #[error("matrix order {n} must exceed the symbol degree {degree}")]
    OrderTooSmall { n: usize, degree: usize },
    #[error("eigenvalue index {j} out of range 1..={n}")]
    IndexOutOfRange { j: usize, n: usize },
    #[error("pivot breakdown at row {row} for lambda = {lambda}")]
    PivotBreakdown { row: usize, lambda: f64 },
    #[error("invalid grid (n1 = {n1}, K = {levels}): {reason}")]
    InvalidGrid { n1: usize, levels: usize, reason: String },
    #[error("non-finite {what}")]
    NonFinite { what: &'static str },
    #[error("singular extrapolation system")]
    SingularSystem,
    #[error("level {k} out of range 1..={levels}")]
    LevelOutOfRange { k: usize, levels: usize },
    #[error("theta = {theta} lies outside [0, pi]")]
    OutOfRange { theta: f64 },
    #[error("expansion table endpoints have not been filled")]
    EndpointsMissing,
    #[error("at node j1 = {j1}, level k = {k}: {source}")]
    AtNode {
        j1: usize,
        k: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("extended precision needs at least 20 digits, got {digits}")]
    InvalidPrecision { digits: u32 },
    #[error("table was built for symbols with digest {table}, but the symbols given hash to {symbols}")]
    DigestMismatch { table: String, symbols: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed table: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::EmptySymbol
            | Error::NonFiniteCoefficient { .. }
            | Error::NonPositivePreconditioner { .. }
            | Error::NotMonotone { .. }
            | Error::NotCertified
            | Error::DivisionByZero { .. }
            | Error::NoBracket { .. }
            | Error::OrderTooSmall { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidGrid { .. }
            | Error::LevelOutOfRange { .. }
            | Error::OutOfRange { .. }
            | Error::InvalidPrecision { .. } => ErrorKind::Hypothesis,
            Error::NonConvergence { .. }
            | Error::PivotBreakdown { .. }
            | Error::SingularSystem
            | Error::NonFinite { .. }
            | Error::EndpointsMissing
            | Error::LengthMismatch { .. } => ErrorKind::Numerical,
            Error::AtNode { source, .. } => source.kind(),
            Error::DigestMismatch { .. } | Error::Parse(_) | Error::Format(_) | Error::Io(_) => {
                ErrorKind::Io
            }
        }
    }

    pub(crate) fn at_node(self, j1: usize, k: usize) -> Error {
        Error::AtNode { j1, k, source: Box::new(self) }
    }
}
