use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("stepsize schedule error: {0}")]
    Schedule(String),

    #[error("missing constant `{0}`: theorem constants are never filled in automatically")]
    MissingConstant(&'static str),

    #[error("chain is not ergodic: {0}")]
    NotErgodic(String),

    #[error("mixing time exceeds the cap of {cap} steps")]
    MixingCapExceeded { cap: u64 },

    #[error("runtime invariant violated: {0}")]
    Invariant(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line driver: 2 for validation
    /// problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotErgodic(_)
            | Error::MixingCapExceeded { .. }
            | Error::Invariant(_)
            | Error::Numerical(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
