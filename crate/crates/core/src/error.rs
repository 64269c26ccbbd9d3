use thiserror::Error;

/// Errors produced by the engine.
///
/// `Input` variants are caller mistakes; `Invariant` signals that an internal
/// consistency check failed, which always indicates a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed crossing {index}: {reason}")]
    MalformedCrossing { index: usize, reason: String },

    #[error("inconsistent PD data: {0}")]
    InconsistentPd(String),

    #[error("non-planar PD data: {0}")]
    NonPlanar(String),

    #[error("invalid braid word: {0}")]
    InvalidBraid(String),

    #[error("band index out of range: {0}")]
    InvalidBand(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("no such crossing {0}")]
    NoSuchCrossing(usize),

    #[error("no such edge {0}")]
    NoSuchEdge(usize),

    #[error("no such component {0}")]
    NoSuchComponent(usize),

    #[error("bounds require connected diagram")]
    SplitDiagram,

    #[error("not an almost positive diagram (it has {0} negative crossings)")]
    NotAlmostPositive(usize),

    #[error("closure is split; strongly quasipositive certificate refused")]
    SplitClosure,

    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    CapExceeded { crossings: usize, cap: usize },

    #[error("cycle expected: the chain has nonzero differential")]
    NotACycle,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
