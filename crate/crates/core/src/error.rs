use thiserror::Error;

/// Errors raised by the engine.
///
/// `Usage` covers invalid caller input, `Consistency` means two computation
/// paths disagreed or an exactness assertion failed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),

    #[error(
        "enumeration for n = {n} exceeds the limit of {limit}; pass --force (hard cap {hard_cap})"
    )]
    LimitExceeded {
        n: usize,
        limit: usize,
        hard_cap: usize,
    },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("tally overflow while counting n = {0}")]
    Overflow(usize),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
