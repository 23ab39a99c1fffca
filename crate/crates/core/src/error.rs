use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("level budget exceeded: level {needed} requested, maximum is {max}")]
    LevelBudgetExceeded { needed: u32, max: u32 },

    #[error("element {0} is not a member of the selected field")]
    NotAMember(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported polynomial shape: {0}")]
    UnsupportedShape(String),

    #[error("algebra elements belong to different algebras")]
    SpecMismatch,

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
