use thiserror::Error;

/// Errors raised by ring arithmetic and the algorithms built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("gcd(0, 0) has no generator")]
    BothZero,
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("operation requires a non-unit element")]
    UnitInput,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("polynomial could not be certified irreducible")]
    NotCertifiedIrreducible,
    #[error("no quotient with smaller remainder found")]
    EuclideanFailure,
}

/// Errors raised by matrix-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("size {size} exceeds the limit {limit} for {what}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Errors raised while parsing textual or JSON inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{field}: {message}")]
pub struct ParseError {
    pub field: String,
    pub message: String,
}

impl ParseError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Prefix the offending field with its parent path.
    pub fn within(mut self, parent: &str) -> Self {
        self.field = if self.field.is_empty() {
            parent.to_string()
        } else {
            format!("{parent}.{}", self.field)
        };
        self
    }
}
