use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported qubit count {0}: fields are supported for 2 <= n <= 6")]
    UnsupportedSize(usize),
    #[error("polynomial {poly:#b} has degree {actual}, expected {expected}")]
    RejectsDegreeMismatch {
        poly: u32,
        expected: usize,
        actual: usize,
    },
    #[error("polynomial {0:#b} is reducible over GF(2)")]
    RejectsReduciblePolynomial(u32),
    #[error("no default irreducible polynomial for n = {0}; supply one explicitly")]
    NoDefaultPolynomial(usize),
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("no self-dual basis found")]
    NoSelfDualBasisFound,
    #[error("invalid self-dual basis: {0}")]
    InvalidSelfDualBasis(String),
    #[error("element {value} is outside the field of size {size}")]
    ElementOutOfRange { value: u32, size: usize },
    #[error("coefficient list has length {actual}, expected {expected}")]
    CoefficientLength { expected: usize, actual: usize },
    #[error("value table has length {actual}, expected {expected}")]
    TableLength { expected: usize, actual: usize },
    #[error("table is not additive, so it is not a linearized map")]
    NotAdditive,
    #[error("recurrence is inconsistent: the curve function violates the abelian condition")]
    InconsistentRecurrence,
    #[error("curves do not form a bundle: {0}")]
    NotABundle(String),
    #[error("curve is not a stabilizer curve: {0}")]
    NotAStabilizerCurve(String),
    #[error("no commuting qubit partition exists")]
    NoCommutingPartition,
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("preset {preset} is defined only for n = 3 (got n = {n})")]
    PresetUnavailable { preset: String, n: usize },
    #[error("unknown figure {0:?}")]
    UnknownFigure(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("kernel construction is capped at n <= {max} (got n = {n})")]
    KernelTooLarge { n: usize, max: usize },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
