use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("corrupt shard header: {0}")]
    CorruptHeader(String),
    #[error("{}: payload is {actual} bytes, header implies {expected}", path.display())]
    CorruptPayload { path: PathBuf, expected: usize, actual: usize },
    #[error("{} does not belong to the same encoding as {}", path.display(), first.display())]
    HeaderMismatch { path: PathBuf, first: PathBuf },
    #[error("shard index {0} supplied more than once")]
    DuplicateShard(u32),
    #[error("need {needed} shards, got {actual}")]
    NotEnoughShards { needed: usize, actual: usize },
    #[error("decoded data does not match the generated codeword")]
    BenchMismatch,
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Codec(#[from] rswe_core::Error),
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
