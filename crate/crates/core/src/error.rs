use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates the domain of the function or type it was passed to.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error("quadrature did not converge in {context}: estimate {estimate:e}, error estimate {error:e} after {subdivisions} subdivisions")]
    NonConvergence {
        context: String,
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("empty input: {0}")]
    Empty(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Prefix the context of a non-convergence error, leaving other variants untouched.
    pub fn within(self, outer: &str) -> Self {
        match self {
            Error::NonConvergence {
                context,
                estimate,
                error,
                subdivisions,
            } => Error::NonConvergence {
                context: format!("{outer}: {context}"),
                estimate,
                error,
                subdivisions,
            },
            other => other,
        }
    }

    /// True for failures caused by numerics rather than by bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}
