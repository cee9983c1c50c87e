use thiserror::Error;

/// Errors raised by the hashing, simulation and performance-model APIs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("message length overflows the 64-bit length field")]
    LengthOverflow,

    #[error("bit length {bit_len} exceeds the {available} bits supplied")]
    BitLengthTooLong { bit_len: u64, available: u64 },

    #[error("{what} index {index} out of range (max {max})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("schedule word {index} needs {needed} prior words, got {got}")]
    MissingHistory {
        index: usize,
        needed: usize,
        got: usize,
    },

    #[error("invalid digest: {0}")]
    InvalidDigest(String),

    #[error("tick issued after the message completed")]
    TickAfterDone,

    #[error("simulator job is not in a runnable state")]
    NotRunnable,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("keyspace of {size} candidates exceeds the limit of {limit}")]
    KeyspaceTooLarge { size: u128, limit: u128 },

    #[error("candidates of {bytes} bytes do not fit in a single 512-bit block (max 55)")]
    CandidateTooLong { bytes: usize },

    #[error("test vector line {line}: {msg}")]
    Vector { line: usize, msg: String },

    #[error("malformed trace record: {0}")]
    Trace(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
