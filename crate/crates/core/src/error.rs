use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Lebedev rule with {requested} points (supported: {supported:?})")]
    UnsupportedRule {
        requested: usize,
        supported: Vec<usize>,
    },

    #[error("fields are sampled on different quadrature grids")]
    GridMismatch,

    #[error("indicator fields are defined on different sampling meshes")]
    MeshMismatch,

    #[error("invalid harmonic index n = {n}, m = {m}")]
    InvalidIndex { n: i64, m: i64 },

    #[error(
        "Mie series did not converge within {terms} terms (last increment {last_increment:.3e})"
    )]
    MieNotConverged { terms: usize, last_increment: f64 },

    #[error("{0} has zero norm")]
    ZeroField(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
