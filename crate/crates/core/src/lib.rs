//! Reed-Solomon erasure coding over GF(2^m) with a Walsh-transform decoder.
//!
//! Erasure decoding costs `O(q log q)` for the Lagrange coefficients and
//! `O(q log² q)` to evaluate the recovered polynomial at every point of the
//! field, independent of `k` and `n`.
//!
//! ```
//! use rswe_core::{Codec, CodecParams};
//!
//! let codec = Codec::new(CodecParams::new(8, 4, 7)?)?;
//! let word = codec.encode_systematic(&[1, 2, 3, 4])?;
//! let survivors: Vec<_> = [1, 4, 5, 6].iter().map(|&x| (x, word.symbols()[x])).collect();
//! assert_eq!(codec.decode(&survivors)?, vec![1, 2, 3, 4]);
//! # Ok::<(), rswe_core::Error>(())
//! ```

pub mod codec;
pub mod erasure;
mod error;
pub mod field;
pub mod oracle;
pub mod walsh;

pub use codec::{Codec, CodecParams, Codeword, DecodePlan, EvalPath};
pub use error::{Error, Result};
pub use field::{Elem, Field};
