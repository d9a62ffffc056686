use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: String, right: String },

    #[error("infeasible request: {what} (limit {limit}, got {got})")]
    Feasibility {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("no sign change on bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("no formula for H_{0}; formulas exist for l = 0..=5")]
    UnsupportedL(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    pub(crate) fn feasibility(what: &'static str, limit: usize, got: usize) -> Self {
        Error::Feasibility { what, limit, got }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
