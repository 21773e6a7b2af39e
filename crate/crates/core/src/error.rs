use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero vector has no primitive normal")]
    ZeroVector,
    #[error("vector is not primitive (gcd of entries is {0})")]
    NotPrimitive(String),
    #[error("search box holds {count} candidates, above the cap of {cap}")]
    BoxTooLarge { count: String, cap: u64 },
    #[error("lattice coordinate does not fit into 64 bits")]
    CoordinateOverflow,
    #[error("points are affinely dependent")]
    Degenerate,
    #[error("facet incidence is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("facet does not support the polytope: {0}")]
    NotSupporting(String),
    #[error("facet list does not bound the polytope: {0}")]
    Unbounded(String),
    #[error("point f is not in the interior of the polytope")]
    FNotInterior,
    #[error("point f lies outside the polytope")]
    FOutside,
    #[error("point does not lie on facet {0}")]
    NotOnFacet(usize),
    #[error("translation enumeration for facet {facet} needs {count} candidates, above the cap of {cap}")]
    EnumerationCap { facet: usize, count: String, cap: u64 },
    #[error("the body does not have a unique minimal lifting")]
    MultipleLiftings,
    #[error("no lattice translate of the point meets the lifting region")]
    LiftNotFound,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("hyperplane slice is not a simplex: {0}")]
    SliceNotSimplex(String),
    #[error("invalid delta parameters: {0}")]
    InvalidDelta(String),
    #[error("triangle is not of Type 3: {0}")]
    NotType3(String),
    #[error("constructed body failed validation: {0}")]
    ValidationFailed(String),
    #[error("search needs {count} candidates, above the cap of {cap}")]
    CapExceeded { count: String, cap: u64 },
    #[error("operation supports only dimension {expected}, got {got}")]
    DimensionUnsupported { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Singular => "SINGULAR",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::ZeroVector => "ZERO_VECTOR",
            Error::NotPrimitive(_) => "NOT_PRIMITIVE",
            Error::BoxTooLarge { .. } => "BOX_TOO_LARGE",
            Error::CoordinateOverflow => "COORDINATE_OVERFLOW",
            Error::Degenerate => "DEGENERATE",
            Error::NotSimplicial(_) => "NOT_SIMPLICIAL",
            Error::NotSupporting(_) => "NOT_SUPPORTING",
            Error::Unbounded(_) => "UNBOUNDED",
            Error::FNotInterior => "F_NOT_INTERIOR",
            Error::FOutside => "F_OUTSIDE",
            Error::NotOnFacet(_) => "NOT_ON_FACET",
            Error::EnumerationCap { .. } => "ENUMERATION_CAP",
            Error::MultipleLiftings => "MULTIPLE_LIFTINGS",
            Error::LiftNotFound => "NOT_FOUND",
            Error::HypothesisViolated(_) => "HYPOTHESIS_VIOLATED",
            Error::SliceNotSimplex(_) => "SLICE_NOT_SIMPLEX",
            Error::InvalidDelta(_) => "INVALID_DELTA",
            Error::NotType3(_) => "NOT_TYPE3",
            Error::ValidationFailed(_) => "VALIDATION_FAILED",
            Error::CapExceeded { .. } => "CAP_EXCEEDED",
            Error::DimensionUnsupported { .. } => "DIMENSION_UNSUPPORTED",
            Error::Parse(_) => "PARSE",
        }
    }

    /// True for the errors raised when an enumeration cap is hit.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::BoxTooLarge { .. } | Error::EnumerationCap { .. } | Error::CapExceeded { .. }
        )
    }
}
