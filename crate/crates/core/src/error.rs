use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    /// `I - Atil` is singular, so the auxiliary equations cannot be solved.
    #[error("auxiliary equations are not uniquely solvable (I - Atil is singular)")]
    IndexNotZero,

    #[error("auxiliary variable w{0} depends on itself")]
    AuxSelfLoop(usize),

    #[error("output map has rank zero; no manifest outputs to build a signal structure from")]
    NoManifestOutputs,

    #[error("hidden variable {variable} crosses the component boundary at {vertex}")]
    InconsistentComponent { vertex: String, variable: String },

    #[error("algebraic loop: I - S K is singular")]
    AlgebraicLoop,

    #[error("singular loop: I - Q is singular")]
    SingularLoop,

    #[error("node {node} is not in 1..={n}")]
    BadNode { node: usize, n: usize },

    #[error("subsystem transfer functions have not been computed")]
    MissingTransferFunctions,

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(e.to_string())
    }
}

pub(crate) fn dims(op: &str, a: (usize, usize), b: (usize, usize)) -> Error {
    Error::DimensionMismatch(format!("{op}: {}x{} vs {}x{}", a.0, a.1, b.0, b.1))
}
