use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree {0} is outside the supported range 2..=20")]
    UnsupportedDegree(u32),
    #[error("polynomial {poly:#x} does not have degree {m}")]
    BadDegree { m: u32, poly: u32 },
    #[error("polynomial {poly:#x}: x has order {order}, not {expected}")]
    NotPrimitive { poly: u32, order: usize, expected: usize },

    #[error("vector length {0} is not a power of two")]
    LengthNotPowerOfTwo(usize),
    #[error("operation requires a different Walsh arithmetic mode")]
    WrongMode,
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("received set is empty")]
    EmptyReceivedSet,
    #[error("transform stack was built for a different field")]
    StackFieldMismatch,
    #[error("point {0} is a received position")]
    PointInReceivedSet(usize),

    #[error("duplicate position {0}")]
    DuplicatePosition(usize),
    #[error("position {position} is out of range (limit {limit})")]
    PositionOutOfRange { position: usize, limit: usize },
    #[error("symbol {symbol:#x} does not fit in the field")]
    SymbolOutOfRange { symbol: u32 },
    #[error("expected {expected} symbols, got {actual}")]
    BadLength { expected: usize, actual: usize },
    #[error("need at least {needed} distinct symbols, got {actual}")]
    NotEnoughSymbols { needed: usize, actual: usize },
    #[error("invalid code parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
