//! On-disk shard format.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "RSWE"
//!      4     1  version (1)
//!      5     1  m (8 or 16)
//!      6     4  k             u32 LE
//!     10     4  n             u32 LE
//!     14     4  index         u32 LE
//!     18     8  file_len      u64 LE
//!     26     4  stripe_count  u32 LE
//!     30     …  payload: stripe_count symbols of m/8 bytes, LE
//! ```

use crate::error::{CliError, Result};

pub const MAGIC: [u8; 4] = *b"RSWE";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShardHeader {
    pub m: u8,
    pub k: u32,
    pub n: u32,
    pub index: u32,
    pub file_len: u64,
    pub stripe_count: u32,
}

impl ShardHeader {
    /// Bytes per symbol.
    pub fn symbol_bytes(&self) -> usize {
        self.m as usize / 8
    }

    /// Bytes of file data carried by one stripe.
    pub fn stripe_bytes(&self) -> u64 {
        self.k as u64 * self.symbol_bytes() as u64
    }

    pub fn payload_len(&self) -> usize {
        self.stripe_count as usize * self.symbol_bytes()
    }

    pub fn stripes_for(file_len: u64, k: u32, m: u8) -> u64 {
        file_len.div_ceil(k as u64 * (m as u64 / 8))
    }

    /// All fields except `index` agree.
    pub fn same_stripe_set(&self, other: &ShardHeader) -> bool {
        ShardHeader { index: 0, ..*self } == ShardHeader { index: 0, ..*other }
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.m;
        out[6..10].copy_from_slice(&self.k.to_le_bytes());
        out[10..14].copy_from_slice(&self.n.to_le_bytes());
        out[14..18].copy_from_slice(&self.index.to_le_bytes());
        out[18..26].copy_from_slice(&self.file_len.to_le_bytes());
        out[26..30].copy_from_slice(&self.stripe_count.to_le_bytes());
        out
    }

    /// Parses and validates the header at the start of `bytes`.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let corrupt = |why: &str| CliError::CorruptHeader(why.to_string());
        if bytes.len() < HEADER_LEN {
            return Err(corrupt("file shorter than header"));
        }
        if bytes[0..4] != MAGIC {
            return Err(corrupt("bad magic"));
        }
        if bytes[4] != VERSION {
            return Err(corrupt(&format!("unsupported version {}", bytes[4])));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let header = ShardHeader {
            m: bytes[5],
            k: u32_at(6),
            n: u32_at(10),
            index: u32_at(14),
            file_len: u64::from_le_bytes(bytes[18..26].try_into().unwrap()),
            stripe_count: u32_at(26),
        };
        header.validate().map_err(|e| corrupt(&e))?;
        Ok(header)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.m != 8 && self.m != 16 {
            return Err(format!("m = {} is not 8 or 16", self.m));
        }
        let q = 1u64 << self.m;
        let (k, n, index) = (self.k as u64, self.n as u64, self.index as u64);
        if k == 0 || k > n || n > q {
            return Err(format!("bad code parameters k={k} n={n}"));
        }
        if index >= n {
            return Err(format!("index {index} out of range for n={n}"));
        }
        if Self::stripes_for(self.file_len, self.k, self.m) != self.stripe_count as u64 {
            return Err(format!(
                "stripe_count {} inconsistent with file_len {}",
                self.stripe_count, self.file_len
            ));
        }
        Ok(())
    }
}
