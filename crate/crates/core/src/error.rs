use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `TheoremViolation` is special: it means an exact computation contradicted
/// a proven statement, which can only be caused by a bug (or corrupt input
/// that slipped past validation). It is never swallowed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive part")]
    ZeroVector,

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("points span an affine space of dimension {rank}, ambient dimension is {dim}")]
    NotFullDimensional { rank: usize, dim: usize },

    #[error("the origin is not an interior point")]
    OriginNotInterior,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("basis does not generate the full sublattice of its span")]
    BasisNotSaturated,

    #[error("polytope is not reflexive")]
    NotReflexive,

    #[error("ray generators do not positively span the ambient space")]
    RaysNotSpanning,

    #[error("{0} is not a root")]
    NotARoot(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid root basis selection: {0}")]
    InvalidSelection(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("{0} is not a boundary lattice point")]
    InputNotOnBoundary(String),

    #[error("polytope is not centrally symmetric")]
    NotCentrallySymmetric,

    #[error("theorem violation in {check}: {detail}")]
    TheoremViolation { check: String, detail: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("ragged matrix at line {line}: expected {expected} entries, found {found}")]
    RaggedMatrix {
        line: usize,
        expected: usize,
        found: usize,
    },
}

impl Error {
    pub fn violation(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            check: check.into(),
            detail: detail.into(),
        }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation { .. })
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::RaggedMatrix { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Returns a `TheoremViolation` unless `cond` holds.
pub(crate) fn ensure(cond: bool, check: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::violation(check, detail()))
    }
}
