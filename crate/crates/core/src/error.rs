use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("spreading factor {0} outside 7..=12")]
    InvalidSpreadingFactor(u8),
    #[error("coding rate {0} outside 1..=4")]
    InvalidCodingRate(u8),
    #[error("symbol value {value} outside [0, {n})")]
    SymbolOutOfRange { value: u32, n: u32 },
    #[error("expected {expected} samples, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("expected a {rows}x{cols} bit matrix")]
    DimensionMismatch { rows: usize, cols: usize },
    #[error("waveform length {len} is not a whole number of {window}-sample windows")]
    PartialWindow { len: usize, window: usize },
    #[error("jamming symbol count {n_s} outside [0, {max}]")]
    JamSymbolCount { n_s: usize, max: usize },
    #[error("synchronized jamming requires a zero offset, got {0} chips")]
    SyncNonzeroOffset(f64),
    #[error("offset rejection sampling exceeded {0} redraws")]
    RejectionOverflow(usize),
    #[error("brute-force enumeration of 2^{0} patterns is intractable")]
    Intractable(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("consistency check failed: {0}")]
    ConsistencyCheck(String),
}
