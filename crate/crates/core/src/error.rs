use thiserror::Error;

pub type Result<T, E = GinvError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GinvError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("{len} entries supplied for a {rows}x{cols} matrix")]
    BadLength {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("p is not idempotent: ||p^2 - p||_F = {residual:e}")]
    NotIdempotent { residual: f64 },

    #[error("Pierce block pxp^pi is not negligible: ||pxp^pi||_F = {residual:e}")]
    ShapeViolation { residual: f64 },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("group-inverse axioms fail for {0}")]
    AxiomsFailed(String),

    #[error("could not generate a {case} instance after {attempts} attempts")]
    GenerationFailed { case: String, attempts: usize },

    #[error("`{violate}` cannot be violated for case {case}")]
    UnsupportedViolation { case: String, violate: String },

    #[error("invalid generator request: {0}")]
    InvalidSpec(String),

    #[error("unknown tag `{0}`")]
    UnknownTag(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}
