use thiserror::Error;

use crate::vecops::dot;

/// A hyperplane `normal · x <= offset` that holds on every point of a cloud
/// while `normal · target > offset`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Separator {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Separator {
    /// Signed amount by which `x` violates the hyperplane.
    pub fn excess(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} did not converge within {cap} iterations")]
    NoConvergence {
        what: &'static str,
        cap: usize,
        /// Best iterate reached before giving up, when one exists.
        best: Option<Vec<f64>>,
    },

    #[error("affinely dependent support set of {0} points")]
    DegenerateSupport(usize),

    #[error("point lies outside the convex hull")]
    NotInHull { certificate: Option<Separator> },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
