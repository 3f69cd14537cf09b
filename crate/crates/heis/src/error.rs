//! Error types shared across the crate.

use crate::hgroup::Point;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HeisError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("field evaluation produced a non-finite value at {point:?}")]
    Evaluation { point: Point },

    #[error("root solve did not converge after {iterations} iterations (s={s}, t={t}, residual={residual:e})")]
    NoConvergence {
        iterations: usize,
        s: f64,
        t: f64,
        residual: f64,
    },

    #[error("point lies on the center axis (s = 0); analytic t-derivatives are only defined off-axis")]
    OnAxis,

    #[error("positivity violated: {name} = {value} at {point:?}")]
    NotPositive {
        name: String,
        value: f64,
        point: Point,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("geodesic optimization did not reach endpoint tolerance: best error {best_error:e} after {restarts} restarts")]
    GeodesicConvergence { best_error: f64, restarts: usize },

    #[error("invalid field spec: {0}")]
    FieldSpec(String),
}

pub type Result<T> = std::result::Result<T, HeisError>;
