use std::io;

use thiserror::Error;

/// Errors produced by the library and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown transform `{0}`")]
    UnknownTransform(String),

    #[error("block shape mismatch: transform has {expected} rows, block is {found}x{found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("energy compaction is undefined for an all-zero block")]
    ZeroEnergy,

    #[error("empty image")]
    EmptyImage,

    #[error("unsupported bit depth: maxval {0} (8-bit images need maxval 255)")]
    UnsupportedDepth(u16),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("invalid dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },

    #[error("invalid PGM at byte {offset}: {kind}")]
    Pgm { offset: usize, kind: PgmErrorKind },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

/// What went wrong while parsing a PGM file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgmErrorKind {
    #[error("bad magic number (expected P5)")]
    BadMagic,
    #[error("malformed header field")]
    BadHeader,
    #[error("unexpected end of header")]
    TruncatedHeader,
    #[error("maxval {0} outside 1..=255")]
    BadMaxval(u32),
    #[error("zero width or height")]
    ZeroDimension,
    #[error("payload truncated: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("sample {value} exceeds maxval {maxval}")]
    SampleOutOfRange { value: u8, maxval: u8 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
