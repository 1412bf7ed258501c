use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative mass {value} at entry {index}")]
    NegativeMass { index: usize, value: f64 },
    #[error("mass sums to {sum}, expected 1")]
    MassSumMismatch { sum: f64 },
    #[error("zero probability at {0:?}")]
    ZeroProbability(Vec<usize>),
    #[error("{0}")]
    DimensionMismatch(String),
    #[error("{0}")]
    ShapeMismatch(String),
    #[error("{0}")]
    NumericalBreakdown(String),
    #[error("{size} variables exceed the cap of {cap}")]
    InstanceTooLarge { size: usize, cap: usize },
    #[error("{size} encoders exceed the cap of {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("input point violates {count} dual constraints, first {first}")]
    InfeasibleInput { count: usize, first: String },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Stable variant name, used in CLI diagnostics and FFI status mapping.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NegativeMass { .. } => "NegativeMass",
            Error::MassSumMismatch { .. } => "MassSumMismatch",
            Error::ZeroProbability(_) => "ZeroProbability",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NumericalBreakdown(_) => "NumericalBreakdown",
            Error::InstanceTooLarge { .. } => "InstanceTooLarge",
            Error::EnumerationTooLarge { .. } => "EnumerationTooLarge",
            Error::InfeasibleInput { .. } => "InfeasibleInput",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse { .. } => "ParseError",
        }
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::InstanceTooLarge { .. } | Error::EnumerationTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
