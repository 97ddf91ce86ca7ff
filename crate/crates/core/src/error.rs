use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("every amplitude is zero; the vector does not represent a state")]
    AllZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is outside the supported range 2..={max}", max = crate::MAX_DIM)]
    UnsupportedDimension(usize),
    #[error("linear combination cancels to the zero vector")]
    ZeroResult,
    #[error("amplitude {index} is zero; the point lies outside chart {index}")]
    ZeroPivot { index: usize },
    #[error("chart index {index} out of range for dimension {dim}")]
    ChartOutOfRange { index: usize, dim: usize },
    #[error("basis is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error(
        "matrix is not special unitary (unitarity deviation {unitarity:e}, |det - 1| = {det:e})"
    )]
    NotSpecialUnitary { unitarity: f64, det: f64 },
    #[error("state lies in the kernel of the operator")]
    KernelState,
    #[error("vector is not of unit length (norm {norm})")]
    NotUnit { norm: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
