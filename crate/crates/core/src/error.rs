use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot erase {erase} characters from a fingerprint of length {len}")]
    LengthUnderflow { len: u64, erase: u64 },

    #[error("invalid hash parameters: {0}")]
    InvalidParams(String),

    #[error("landmark configuration needs at least one level")]
    EmptyLevels,

    #[error("range start {start} exceeds range end {end}")]
    InvertedRange { start: u64, end: u64 },

    #[error("period must be positive")]
    ZeroPeriod,

    #[error("additive error {error} outside [1, {n}]")]
    AdditiveOutOfRange { error: u64, n: u64 },

    #[error("relative error {eps} below the minimum {min} for n = {n}")]
    EpsTooSmall { eps: f64, min: f64, n: u64 },

    #[error("sparse landmark layout requires eps >= 1 (got {0})")]
    SparseEpsTooSmall(f64),

    #[error("stream overflow: declared capacity is {capacity} characters")]
    StreamOverflow { capacity: u64 },

    #[error("densify needs at least 5 centers, got {0}")]
    TooFewCenters(usize),

    #[error("segments [{0}, {1}] and [{2}, {3}] cannot be merged")]
    NotMergeable(u64, u64, u64, u64),

    #[error("extension precondition failed: {0}")]
    ExtensionPrecondition(&'static str),

    #[error("input of length {len} exceeds the oracle guard {guard}")]
    OracleGuard { len: usize, guard: usize },

    #[error("symbol {symbol} outside alphabet 1..={sigma}")]
    SymbolOutOfRange { symbol: u32, sigma: u32 },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("engine configuration: {0}")]
    InvalidEngine(String),
}

pub type Result<T> = std::result::Result<T, Error>;
