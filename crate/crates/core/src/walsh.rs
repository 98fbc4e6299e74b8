//! Fast Walsh transform and dyadic (XOR) convolution.
//!
//! `ŵ(x) = Σ_y w(y)·(−1)^popcount(x & y)` for vectors of length `q = 2^m`.
//! Three arithmetics are supported:
//!
//! * [`WalshMode::Exact`]: plain integers. Applying the transform twice
//!   multiplies by `q`. Overflow-free as long as every input satisfies
//!   `|v| ≤ 2^(63 − m)`.
//! * [`WalshMode::ModQMinus1`]: residues modulo `q − 1` in `[0, q − 2]`.
//!   Since `q ≡ 1`, the transform is an involution.
//! * [`WalshMode::ModPow2`]: residues modulo `2^(m + 1)`. After a double
//!   transform the value is `q·v`, so bit `m` holds the parity of `v`.
//!
//! Butterflies run with strides `1, 2, …, q/2`. The transform matrix is
//! symmetric and the stages commute, so the stride order does not change the
//! result.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalshMode {
    Exact,
    ModQMinus1,
    ModPow2,
}

/// An image vector `[F]` of length `2^order` together with the arithmetic
/// its transforms are carried out in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshVector {
    mode: WalshMode,
    order: u32,
    data: Vec<i64>,
}

impl WalshVector {
    /// Wraps `data`, reducing entries into the canonical range of `mode`.
    pub fn new(mode: WalshMode, mut data: Vec<i64>) -> Result<Self> {
        let order = log2_len(data.len())?;
        if mode != WalshMode::Exact {
            if order == 0 {
                return Err(Error::LengthNotPowerOfTwo(data.len()));
            }
            let modulus = modulus(mode, order);
            for v in &mut data {
                *v = v.rem_euclid(modulus);
            }
        }
        Ok(Self { mode, order, data })
    }

    pub fn mode(&self) -> WalshMode {
        self.mode
    }

    /// `m` such that the length is `2^m`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<i64> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Transforms in place.
    pub fn fwht_in_place(&mut self) {
        match self.mode {
            WalshMode::Exact => fwht_by(&mut self.data, 1, |a, b| (a + b, a - b)),
            WalshMode::ModQMinus1 => {
                let n = modulus(self.mode, self.order);
                fwht_by(&mut self.data, 1, |a, b| {
                    let s = a + b;
                    let d = a + n - b;
                    (if s >= n { s - n } else { s }, if d >= n { d - n } else { d })
                });
            }
            WalshMode::ModPow2 => {
                let mask = modulus(self.mode, self.order) - 1;
                fwht_by(&mut self.data, 1, |a, b| ((a + b) & mask, (a - b) & mask));
            }
        }
    }

    pub fn fwht(&self) -> WalshVector {
        let mut out = self.clone();
        out.fwht_in_place();
        out
    }

    /// Transforms twice; in `ModQMinus1` this gives back the input.
    pub fn involution_check(&self) -> Result<WalshVector> {
        if self.mode != WalshMode::ModQMinus1 {
            return Err(Error::WrongMode);
        }
        let mut out = self.fwht();
        out.fwht_in_place();
        Ok(out)
    }
}

/// `(a ∗ b)(x) = Σ_y a(y)·b(x ⊕ y) mod (q − 1)`, computed with three
/// transforms and no division by `q`.
pub fn dyadic_convolution_modq1(a: &WalshVector, b: &WalshVector) -> Result<WalshVector> {
    if a.mode != WalshMode::ModQMinus1 || b.mode != WalshMode::ModQMinus1 {
        return Err(Error::WrongMode);
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let n = modulus(a.mode, a.order);
    let mut out = a.fwht();
    let bh = b.fwht();
    for (x, y) in out.data.iter_mut().zip(&bh.data) {
        *x = (*x * *y) % n;
    }
    out.fwht_in_place();
    Ok(out)
}

fn modulus(mode: WalshMode, order: u32) -> i64 {
    match mode {
        WalshMode::Exact => 0,
        WalshMode::ModQMinus1 => (1i64 << order) - 1,
        WalshMode::ModPow2 => 1i64 << (order + 1),
    }
}

pub(crate) fn log2_len(len: usize) -> Result<u32> {
    if len.is_power_of_two() {
        Ok(len.trailing_zeros())
    } else {
        Err(Error::LengthNotPowerOfTwo(len))
    }
}

// ----------------------------------------------------------------------------
// Kernels

/// Walsh transform along the rows of a row-major `rows × width` matrix, i.e.
/// `width` interleaved transforms of length `rows` at once. `rows` must be a
/// power of two.
#[inline]
pub fn fwht_by<T: Copy>(data: &mut [T], width: usize, butterfly: impl Fn(T, T) -> (T, T)) {
    debug_assert!(width > 0 && data.len() % width == 0);
    debug_assert!((data.len() / width).is_power_of_two());
    // Two passes over memory: first the stages whose butterflies stay inside
    // a cache-sized block, then the wider ones. A wide butterfly pairs equal
    // offsets of two blocks, so those stages run one offset slice at a time
    // across all blocks.
    let size = std::mem::size_of::<T>().max(1);
    let fit = (CACHE_BLOCK_BYTES / (width * size)).max(1);
    let rows_per_block = (1usize << fit.ilog2()).min(data.len() / width);
    let block = rows_per_block * width;
    for chunk in data.chunks_exact_mut(block) {
        stages(chunk, width, block, &butterfly);
    }

    let blocks = data.len() / block;
    if blocks == 1 {
        return;
    }
    let slice = (CACHE_BLOCK_BYTES / (blocks * size)).clamp(MIN_SLICE, block);
    let mut offset = 0;
    while offset < block {
        let len = slice.min(block - offset);
        let mut half = 1;
        while half < blocks {
            for base in (0..blocks).step_by(2 * half) {
                for b in base..base + half {
                    let lo_start = b * block + offset;
                    let hi_start = (b + half) * block + offset;
                    let (head, tail) = data.split_at_mut(hi_start);
                    let lo = &mut head[lo_start..lo_start + len];
                    let hi = &mut tail[..len];
                    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                        let (s, d) = butterfly(*a, *b);
                        *a = s;
                        *b = d;
                    }
                }
            }
            half <<= 1;
        }
        offset += len;
    }
}

const CACHE_BLOCK_BYTES: usize = 128 * 1024;
const MIN_SLICE: usize = 16;

/// Butterfly stages with half-widths `first_half, 2·first_half, …` below `end`.
#[inline(always)]
fn stages<T: Copy>(data: &mut [T], first_half: usize, end: usize, butterfly: &impl Fn(T, T) -> (T, T)) {
    let mut half = first_half;
    while half < end {
        for pair in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = pair.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = butterfly(*a, *b);
                *a = s;
                *b = d;
            }
        }
        half <<= 1;
    }
}

/// Transform modulo `modulus` on residues already in `[0, modulus)`.
pub fn fwht_mod(data: &mut [u32], width: usize, modulus: u32) {
    fwht_by(data, width, |a, b| {
        let s = a + b;
        let d = a + modulus - b;
        (
            if s >= modulus { s - modulus } else { s },
            if d >= modulus { d - modulus } else { d },
        )
    });
}

/// Transform modulo 2^32. Callers only read the low `m + 1` bits, which
/// wrapping arithmetic keeps exact.
pub fn fwht_wrapping(data: &mut [u32], width: usize) {
    fwht_by(data, width, |a, b| (a.wrapping_add(b), a.wrapping_sub(b)));
}
