use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size exceeded: {what} is {got}, supported maximum is {limit}")]
    SizeExceeded { what: &'static str, got: usize, limit: usize },

    #[error("graph6 format error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("refused: {0}")]
    Refused(String),

    #[error("distinct-eigenvalue check failed: {0}")]
    DistinctnessViolation(String),

    #[error("complex eigenvalue pair: discriminant {discriminant} for {edges} edges")]
    ComplexEigenvalues { edges: usize, discriminant: f64 },

    #[error("no induced embedding of the {pattern}-vertex pattern into the {host}-vertex host")]
    EmbeddingFailure { pattern: usize, host: usize },

    #[error("trivial regular two-graph (σ = {sigma}, τ = {tau})")]
    TrivialTwoGraph { sigma: f64, tau: f64 },

    #[error("unknown census cell {0}")]
    UnknownCell(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
