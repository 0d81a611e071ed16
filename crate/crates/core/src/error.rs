use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke a documented precondition (bad edge id, degree
    /// violation, mismatched universe, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// No aligned removal candidate kept `(k-1)/k` of the value. This cannot
    /// happen for a monotone submodular oracle.
    #[error("oracle is not monotone submodular: no removal candidate among {k} retained {threshold} (best {best})")]
    NotSubmodular { k: usize, threshold: f64, best: f64 },

    #[error("instance too large for exhaustive search: n = {n}, cap = {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("configuration error: {0}")]
    Config(String),

    /// A batch run failed on one instance.
    #[error("instance with seed {seed} failed: {source}")]
    Instance { seed: u64, source: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
