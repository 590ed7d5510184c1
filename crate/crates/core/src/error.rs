use thiserror::Error;

/// Errors raised anywhere in the operator and norm machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or integral diverges for the requested parameters.
    #[error("divergence: {0}")]
    Divergence(String),

    /// The requested tolerance could not be met within the work cap.
    #[error("precision not reached: best value {value} with bound {bound} after {terms} terms")]
    Precision { value: f64, bound: f64, terms: usize },

    /// A rule or query was configured inconsistently.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// The integrand produced a non-finite value at a quadrature node.
    #[error("non-finite integrand at node w = {re} + {im}i")]
    Evaluation { re: f64, im: f64 },

    /// The singularity exponent makes the integral non-integrable.
    #[error("non-integrable singularity |w - b|^-{0} (exponent must be < 2)")]
    NonIntegrable(f64),

    /// A computed value breaks an a-priori inequality it must satisfy.
    #[error("bound violated: {value} exceeds {bound}")]
    BoundViolated { value: f64, bound: f64 },

    /// The query is not covered by the norm catalog.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
