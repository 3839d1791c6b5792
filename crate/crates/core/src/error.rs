use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WenoError {
    /// A stencil window does not cover the points a formula reads.
    #[error("window of length {len} does not cover offsets {lo}..={hi} needed by {what}")]
    WindowTooShort {
        what: &'static str,
        len: usize,
        lo: i32,
        hi: i32,
    },

    #[error("invalid window length {0}: expected 3, 4 or 5 points")]
    BadWindowLength(usize),

    #[error("non-finite value in stencil window at position {0}")]
    NonFiniteInput(usize),

    #[error("parameter {name} = {value} outside its admissible range {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Overflow or 0/0 inside β, τ or α; reported rather than clamped.
    #[error("non-finite {what} produced by scheme {scheme}")]
    NonFiniteOutput { scheme: String, what: &'static str },

    #[error("unknown scheme `{name}`; valid schemes: {valid}")]
    UnknownScheme { name: String, valid: String },

    #[error("invalid scheme option `{0}`")]
    BadSchemeOption(String),

    #[error("invalid problem setup: {0}")]
    InvalidProblem(String),

    /// Nonpositive density/pressure or NaN during time integration.
    #[error("inadmissible state at {location} (t = {time:.6e}): {reason}")]
    Inadmissible {
        time: f64,
        location: String,
        reason: String,
    },

    #[error(transparent)]
    Io(#[from] IoError),
}

/// `std::io::Error` is neither `Clone` nor `PartialEq`; keep the message.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{0}")]
pub struct IoError(pub String);

impl From<std::io::Error> for WenoError {
    fn from(e: std::io::Error) -> Self {
        WenoError::Io(IoError(e.to_string()))
    }
}

pub type Result<T> = std::result::Result<T, WenoError>;
