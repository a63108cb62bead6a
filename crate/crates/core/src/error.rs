use thiserror::Error;

/// Errors raised by the library. Check failures inside verification
/// batteries are never reported through this type; they land in reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not a unit modulo {n}")]
    NotAUnit { a: String, n: String },

    #[error("vectors of mixed rank: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: matrix is {matrix}x{matrix}, cone lives in rank {cone}")]
    DimMismatch { matrix: usize, cone: usize },

    #[error("index arity mismatch: family `{family}` takes {expected} indices, got {found}")]
    ArityMismatch {
        family: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("malformed graph morphism: {0}")]
    MalformedMorphism(String),

    #[error("invalid bicoloured graph: {0}")]
    InvalidGraph(String),

    #[error("gluing matrix ({a}, {b}, {c}, {d}) has determinant {det}, not 1")]
    NotSL2 {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        det: i64,
    },

    #[error("inconsistent data: {0}")]
    InconsistentData(String),

    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: u64, divisor: u64 },

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAUnit { .. } => "NotAUnit",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::DimMismatch { .. } => "DimMismatch",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::MalformedMorphism(_) => "MalformedMorphism",
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::NotSL2 { .. } => "NotSL2",
            Error::InconsistentData(_) => "InconsistentData",
            Error::NotDivisible { .. } => "NotDivisible",
            Error::InvalidDatum(_) => "InvalidDatum",
            Error::InvalidCone(_) => "InvalidCone",
            Error::Unknown { .. } => "Unknown",
        }
    }
}
