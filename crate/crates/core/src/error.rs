use thiserror::Error;

/// Failure modes shared by every numeric and symbolic routine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument outside domain: {detail}")]
    Domain { op: &'static str, detail: String },
    #[error("{op}: series did not converge within {terms} terms (last partial sum {partial})")]
    Convergence {
        op: &'static str,
        terms: usize,
        partial: String,
    },
    #[error("{op}: result out of representable range: {detail}")]
    Range { op: &'static str, detail: String },
    #[error("{op}: quadrature stopped at error estimate {estimate:e} (target {target:e})")]
    Quadrature {
        op: &'static str,
        estimate: f64,
        target: f64,
    },
    #[error("{op}: integration failed at tau = {at}: {detail}")]
    Integration {
        op: &'static str,
        at: f64,
        detail: String,
    },
    #[error("{op}: internal inconsistency: {detail}")]
    Inconsistent { op: &'static str, detail: String },
}

impl Error {
    /// Name of the operation that failed.
    pub fn op(&self) -> &'static str {
        match self {
            Error::Domain { op, .. }
            | Error::Convergence { op, .. }
            | Error::Range { op, .. }
            | Error::Quadrature { op, .. }
            | Error::Integration { op, .. }
            | Error::Inconsistent { op, .. } => op,
        }
    }

    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn inconsistent(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Inconsistent {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
