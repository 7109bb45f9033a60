use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at argument {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("evaluation budget of {budget} integrand calls exceeded")]
    BudgetExceeded { budget: usize },

    #[error("tail bound is unbounded for a conditionally convergent integrand")]
    UnboundedTail,

    #[error("extrapolation did not contract: {0}")]
    NonConvergentExtrapolation(String),

    #[error("invalid integrand: {0}")]
    InvalidIntegrand(String),

    #[error("phase is not submersive at {0:?}")]
    NotSubmersive(Vec<f64>),

    #[error("chart is inconsistent with phase: residual {residual:e} at {point:?}")]
    ChartInconsistent { residual: f64, point: Vec<f64> },

    #[error("infeasible parameter domain: {0}")]
    InfeasibleDomain(String),

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
