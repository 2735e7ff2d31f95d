use thiserror::Error;

/// Errors raised by the sequence, matrix and verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter `{0}` must be nonzero")]
    ZeroParameter(&'static str),

    #[error("degenerate parameters: discriminant a^2 b^2 + 4abc is zero")]
    DegenerateDiscriminant,

    #[error("singular geometric series: det(I - K^m) is zero for m = {m}")]
    SingularSeries { m: u64 },

    #[error("invalid rational literal `{0}`: expected an integer or `p/q`")]
    ParseRational(String),

    #[error("unknown sequence `{name}`; valid keys: {valid}")]
    UnknownSequence { name: String, valid: String },

    #[error("sequence `{name}` expects {expected} argument(s), got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
