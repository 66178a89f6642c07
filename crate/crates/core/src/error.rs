use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameters violate a family's convergence or domain precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The series converges but this evaluation route would need a divergent
    /// intermediate (for example `zeta(1)` or `sum H_n / n`).
    #[error("not reducible by this route: {0}")]
    NotReducibleByThisRoute(String),

    #[error("series does not converge: {0}")]
    NonConvergent(String),

    #[error("tail bound {bound} still above target {target} after {terms} terms")]
    BudgetExceeded {
        bound: String,
        target: String,
        terms: u64,
    },

    #[error("formula audit failed for {formula}: {detail}")]
    FormulaAudit { formula: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn not_reducible(msg: impl Into<String>) -> Error {
    Error::NotReducibleByThisRoute(msg.into())
}
