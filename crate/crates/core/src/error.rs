use alloc::string::String;

/// Failures reported by the cost model, parameter strategies and engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// Strassen's parameter rule needs n >= 16; smaller orders must go
    /// through the naive or explicit strategies.
    #[error(
        "Strassen's parameter rule requires n >= 16 (got {n}); use the naive or explicit strategy"
    )]
    BelowStrassenRange { n: u64 },

    #[error("dimension mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal {0:?}")]
    ParseRatio(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Error {
    Error::Domain {
        op,
        reason: reason.into(),
    }
}
