use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("graph has {n} vertices; this operation supports at most {max}")]
    TooLarge { n: usize, max: usize },

    #[error("graph class violation: {0}")]
    Class(String),

    #[error("invalid two-factor: {0}")]
    InvalidTwoFactor(String),

    #[error("no perfect matching complement satisfies the small-cut condition")]
    NoQualifyingTwoFactor,

    #[error("template: {0}")]
    Template(String),

    #[error("explosion guard: {what} estimate {estimate} exceeds limit {limit}")]
    ExplosionGuard { what: &'static str, estimate: u128, limit: u128 },

    #[error("precondition failed at vertex {vertex}: {msg}")]
    Precondition { vertex: usize, msg: String },

    #[error("phase-5 bias infeasible at vertex {vertex}: {msg}")]
    BiasInfeasible { vertex: usize, msg: String },

    #[error("vertex {vertex} has marginal {marginal}, below 1/k = {bound}")]
    MarginalBelowBound { vertex: usize, marginal: String, bound: String },

    #[error("certificate: {0}")]
    Certificate(String),

    #[error("linear program: {0}")]
    Lp(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Internal invariant violations (as opposed to bad input or guards).
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::BiasInfeasible { .. }
                | Error::Precondition { .. }
                | Error::MarginalBelowBound { .. }
                | Error::Certificate(_)
                | Error::Lp(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
