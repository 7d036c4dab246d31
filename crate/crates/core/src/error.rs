use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain where the computation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature did not reach its tolerance.
    #[error(
        "quadrature did not converge after {levels} levels \
         ({nodes} nodes per axis, last relative change {last_change:e})"
    )]
    NonConvergence {
        levels: usize,
        nodes: usize,
        last_change: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for numerical (as opposed to input-validation) failures.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
