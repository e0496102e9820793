use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The CLI maps these onto process exit codes: parse and precondition
/// failures are caller errors, exhausted searches can be retried with a
/// larger bound, and invariant violations indicate a bug.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    SearchExhausted(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("[{stage}] {source}")]
    Stage { stage: &'static str, source: Box<Error> },
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn exhausted(msg: impl Into<String>) -> Self {
        Error::SearchExhausted(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Innermost error, with all stage tags stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::Parse(_) | Error::Precondition(_) => 2,
            Error::SearchExhausted(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Attach a pipeline stage name to an error.
pub trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| Error::Stage {
            stage,
            source: Box::new(e),
        })
    }
}
