use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("label {0} is not present in the tree")]
    UnknownLabel(usize),

    #[error("invalid Prüfer code: {0}")]
    InvalidCode(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid record decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("expected a tree rooted at the auxiliary node 0, found root {0}")]
    NotAuxRooted(usize),

    /// An exact formula produced a non-integral value; always a bug.
    #[error("{what} evaluated to the non-integer {value}")]
    NotIntegral { what: String, value: String },

    #[error("series precondition violated: {0}")]
    Series(String),

    #[error("{what} = {value} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
