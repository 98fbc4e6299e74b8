//! File sharding and benchmarking on top of `rswe-core`.

pub mod bench;
mod error;
pub mod files;
pub mod shard;

pub use bench::{run_bench, BenchOptions, BenchReport};
pub use error::{CliError, Result};
pub use files::{decode_bytes, decode_files, encode_bytes, encode_file, shard_file_name};
pub use shard::ShardHeader;
