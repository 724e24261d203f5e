use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what}: value {value} is out of range")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid generator: {0}")]
    InvalidGenerator(&'static str),

    #[error("t-norm `{0}` is not strict (requires g(0) = +inf, equivalently h(0) = 0)")]
    NotStrict(String),

    #[error("operation requires an Archimedean t-norm with a generator, got `{0}`")]
    NotArchimedean(String),

    #[error("invalid alpha grid: {0}")]
    InvalidGrid(&'static str),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("profiles are defined on different alpha grids")]
    GridMismatch,

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("profile slopes are not concave; pass the concave envelope to get an upper bound")]
    NotConcave,

    #[error("degenerate fuzzy set: {0}")]
    Degenerate(&'static str),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0} is empty")]
    Empty(&'static str),

    #[error("cannot parse `{0}`")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }
}
