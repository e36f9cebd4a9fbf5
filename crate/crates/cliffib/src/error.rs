use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("gram matrix is not symmetric: entry ({i},{j}) = `{a}` but ({j},{i}) = `{b}`")]
    AsymmetricGram {
        i: usize,
        j: usize,
        a: String,
        b: String,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("the form vanishes identically at this point; sigma must be an embedding")]
    SigmaZero,

    #[error("corank mismatch: expected {expected}, found {found}")]
    CorankMismatch { expected: usize, found: usize },

    #[error("point is not on the quadric (q(point) = {value})")]
    NotOnQuadric { value: String },

    #[error("sample point {index} has corank {corank} >= 2")]
    Corank2Point { index: usize, corank: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceLimit {
        what: String,
        needed: usize,
        cap: usize,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 2,
            Error::ResourceLimit { .. } => 3,
            _ => 1,
        }
    }
}
