use thiserror::Error;

use crate::dfa::State;

#[derive(Debug, Error)]
pub enum Error {
    /// Input document could not be turned into a valid automaton or instance.
    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    /// The automaton is outside the class an algorithm is defined for.
    #[error("class mismatch: {0}")]
    ClassMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search hit its configured cap before reaching a decision.
    #[error("inconclusive: {what} exceeded cap of {cap}")]
    Inconclusive { what: &'static str, cap: usize },

    #[error("state {state} is not covered by any of the given words")]
    Uncovered { state: State },

    /// A produced decomposition failed its own validity check.
    #[error("decomposition failed verification: {0}")]
    VerificationFailed(String),

    #[error("contradictory generator flags: {0}")]
    ContradictoryFlags(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
