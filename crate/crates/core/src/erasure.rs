//! Erasure decoding by Lagrange coefficients and Walsh transforms.
//!
//! Given the values of a polynomial `P` of degree `< k` on a set `R` of at
//! least `k` points, the decoder recovers `P` at every point of GF(2^m) in
//! two stages:
//!
//! 1. Lagrange coefficients. With `Π(x) = ∏_{y∈R, y≠x} (x ⊕ y)`, the
//!    coefficient at `x ∈ R` is `c_x = P(x) / Π(x)`. Taking discrete logs,
//!    `L(Π(x)) = Σ_y R(y)·L(x ⊕ y)` is an XOR convolution of the indicator
//!    of `R` with the log table (`L(0) = 0` makes the `y = x` term vanish),
//!    so all of `[L(Π)]` comes out of three transforms modulo `q − 1`.
//!
//! 2. Evaluation. Off `R`, `P(x) = Π(x)·⊕_y C(y)·I(x ⊕ y)` where `C` holds
//!    the coefficients and `I` is inversion with `I(0) = 0`. Splitting `C`
//!    and `I` into bit planes on the basis `α^0, …, α^(m−1)` turns the inner
//!    sum into `m²` Boolean convolutions whose parities give the bits of the
//!    result. Grouping plane pairs by `s = i + j` (the product `α^i·α^j` only
//!    depends on `s`) leaves `2m − 1` inverse transforms. Parities only need
//!    `m + 1` low bits, so everything runs in wrapping `u32` arithmetic.
//!
//! The planes of `I` depend only on the field and are precomputed once in a
//! [`TransformStack`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::walsh::{fwht_mod, fwht_wrapping};

/// Received positions of a codeword and the symbols found there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedSet {
    indicator: Vec<bool>,
    positions: Vec<usize>,
    values: Vec<Elem>,
}

impl ReceivedSet {
    /// Builds the set from `(position, symbol)` pairs in any order.
    pub fn new(field: &Field, pairs: impl IntoIterator<Item = (usize, Elem)>) -> Result<Self> {
        let q = field.q();
        let mut pairs: Vec<(usize, Elem)> = pairs.into_iter().collect();
        pairs.sort_unstable_by_key(|&(p, _)| p);
        let mut indicator = vec![false; q];
        for &(p, v) in &pairs {
            if p >= q {
                return Err(Error::PositionOutOfRange { position: p, limit: q });
            }
            if indicator[p] {
                return Err(Error::DuplicatePosition(p));
            }
            if !field.contains(v) {
                return Err(Error::SymbolOutOfRange { symbol: v });
            }
            indicator[p] = true;
        }
        let (positions, values) = pairs.into_iter().unzip();
        Ok(Self { indicator, positions, values })
    }

    /// Replaces the symbols, given in ascending position order.
    pub fn set_values(&mut self, field: &Field, values: &[Elem]) -> Result<()> {
        if values.len() != self.positions.len() {
            return Err(Error::BadLength { expected: self.positions.len(), actual: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| !field.contains(v)) {
            return Err(Error::SymbolOutOfRange { symbol: v });
        }
        self.values.clear();
        self.values.extend_from_slice(values);
        Ok(())
    }

    pub fn contains(&self, x: usize) -> bool {
        self.indicator.get(x).copied().unwrap_or(false)
    }

    pub fn indicator(&self) -> &[bool] {
        &self.indicator
    }

    /// Positions in ascending order.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Size of the field the set was built for.
    pub fn q(&self) -> usize {
        self.indicator.len()
    }
}

/// `[L(Π(x))]` over all points, as residues modulo `q − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogPiVector {
    logpi: Vec<u32>,
}

impl LogPiVector {
    pub fn as_slice(&self) -> &[u32] {
        &self.logpi
    }

    /// `Π(x)`: the product over received `y ≠ x` of `x ⊕ y`.
    pub fn pi(&self, x: usize, field: &Field) -> Elem {
        field.exp(self.logpi[x])
    }
}

/// The coefficient function `C`: `c_x` on received points, zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffVector {
    coeffs: Vec<Elem>,
}

impl CoeffVector {
    pub fn as_slice(&self) -> &[Elem] {
        &self.coeffs
    }
}

/// Transform of the log table `[L]` modulo `q − 1`, reusable across
/// decodes over the same field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTransform {
    m: u32,
    poly: u32,
    hat: Vec<u32>,
}

impl LogTransform {
    pub fn new(field: &Field) -> Self {
        let mut hat = field.log_table().to_vec();
        fwht_mod(&mut hat, 1, field.order());
        Self { m: field.m(), poly: field.poly(), hat }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.hat
    }
}

/// `[L(Π)]` for the received set, transforming the log table on the fly.
pub fn compute_log_pi(received: &ReceivedSet, field: &Field) -> Result<LogPiVector> {
    compute_log_pi_with(received, field, &LogTransform::new(field))
}

/// `[L(Π)] = R ∗ L (mod q − 1)` using a precomputed transform of `[L]`.
pub fn compute_log_pi_with(received: &ReceivedSet, field: &Field, log_hat: &LogTransform) -> Result<LogPiVector> {
    if received.is_empty() {
        return Err(Error::EmptyReceivedSet);
    }
    if log_hat.m != field.m() || log_hat.poly != field.poly() {
        return Err(Error::StackFieldMismatch);
    }
    check_len(field.q(), received.q())?;

    let modulus = field.order();
    let mut logpi: Vec<u32> = received.indicator.iter().map(|&b| b as u32).collect();
    fwht_mod(&mut logpi, 1, modulus);
    for (a, &b) in logpi.iter_mut().zip(&log_hat.hat) {
        *a = ((*a as u64 * b as u64) % modulus as u64) as u32;
    }
    // No division by q: q ≡ 1 (mod q − 1).
    fwht_mod(&mut logpi, 1, modulus);
    Ok(LogPiVector { logpi })
}

/// `c_x = P(x) / Π(x)` on received points.
pub fn lagrange_coefficients(received: &ReceivedSet, logpi: &LogPiVector, field: &Field) -> Result<CoeffVector> {
    check_len(field.q(), received.q())?;
    check_len(field.q(), logpi.logpi.len())?;
    let mut coeffs = vec![0; field.q()];
    for (&x, &v) in received.positions.iter().zip(&received.values) {
        let inv_pi = field.exp(field.order() - logpi.logpi[x]);
        coeffs[x] = field.mul(v, inv_pi);
    }
    Ok(CoeffVector { coeffs })
}

/// Precomputed transforms of the bit planes of `[I]`, plus the scratch space
/// one evaluation needs.
///
/// Cloning shares the precomputed planes; use [`TransformStack::fresh`] to
/// get an independent context for another thread.
#[derive(Debug, Clone)]
pub struct TransformStack {
    m: u32,
    poly: u32,
    /// Row-major `q × m`: `ihat[x·m + j] = Î_j(x) mod 2^(m+1)`.
    ihat: Arc<[u32]>,
    /// `e_i = α^i`.
    basis: Vec<Elem>,
    /// Row-major `q × m` scratch for the `Ĉ_i`.
    chat: Vec<u32>,
    /// Row-major `q × (2m − 1)` scratch for the grouped products.
    grouped: Vec<u32>,
}

/// Builds `[I]`, splits it into `m` bit planes and transforms each one.
pub fn precompute_inverse_stack(field: &Field) -> TransformStack {
    let m = field.m() as usize;
    let q = field.q();
    let mut ihat = vec![0u32; q * m];
    for (x, row) in ihat.chunks_exact_mut(m).enumerate() {
        let inv = field.inv(x as Elem);
        for (j, bit) in row.iter_mut().enumerate() {
            *bit = (inv >> j) & 1;
        }
    }
    fwht_wrapping(&mut ihat, m);
    let mask = (1u32 << (m + 1)) - 1;
    for v in &mut ihat {
        *v &= mask;
    }
    TransformStack {
        m: field.m(),
        poly: field.poly(),
        ihat: ihat.into(),
        basis: (0..field.m()).map(|i| field.exp(i)).collect(),
        chat: Vec::new(),
        grouped: Vec::new(),
    }
}

impl TransformStack {
    /// Context sharing the precomputed planes, with its own scratch.
    pub fn fresh(&self) -> Self {
        Self {
            m: self.m,
            poly: self.poly,
            ihat: Arc::clone(&self.ihat),
            basis: self.basis.clone(),
            chat: Vec::new(),
            grouped: Vec::new(),
        }
    }

    /// Number of bit planes, `m`.
    pub fn planes(&self) -> usize {
        self.m as usize
    }

    /// `Î_j(x)` reduced modulo `2^(m+1)`.
    pub fn ihat(&self, j: usize, x: usize) -> u32 {
        self.ihat[x * self.m as usize + j]
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    fn check_field(&self, field: &Field) -> Result<()> {
        if self.m == field.m() && self.poly == field.poly() {
            Ok(())
        } else {
            Err(Error::StackFieldMismatch)
        }
    }
}

/// Evaluates the Lagrange form at every point of the field.
///
/// Uses `3m − 1` transforms of length `q` and `O(q·m)` words of scratch kept
/// in `stack`. Received positions are copied from `received`.
pub fn evaluate_all(
    coeffs: &CoeffVector,
    logpi: &LogPiVector,
    received: &ReceivedSet,
    stack: &mut TransformStack,
    field: &Field,
) -> Result<Vec<Elem>> {
    stack.check_field(field)?;
    let q = field.q();
    check_inputs(q, coeffs, logpi, received)?;
    if received.len() == q {
        return Ok(received.values.clone());
    }

    let m = field.m() as usize;
    let width = 2 * m - 1;

    let chat = &mut stack.chat;
    chat.clear();
    chat.resize(q * m, 0);
    for &x in &received.positions {
        let c = coeffs.coeffs[x];
        for (i, bit) in chat[x * m..(x + 1) * m].iter_mut().enumerate() {
            *bit = (c >> i) & 1;
        }
    }
    fwht_wrapping(chat, m);

    // A_s = Σ_{i+j=s} Ĉ_i·Î_j, pointwise.
    let grouped = &mut stack.grouped;
    grouped.clear();
    grouped.resize(q * width, 0);
    for ((acc, c), ih) in grouped
        .chunks_exact_mut(width)
        .zip(chat.chunks_exact(m))
        .zip(stack.ihat.chunks_exact(m))
    {
        for (i, &ci) in c.iter().enumerate() {
            for (a, &ij) in acc[i..i + m].iter_mut().zip(ih) {
                *a = a.wrapping_add(ci.wrapping_mul(ij));
            }
        }
    }
    fwht_wrapping(grouped, width);

    let exp = field.exp_table();
    let mut out = vec![0; q];
    for (x, (o, acc)) in out.iter_mut().zip(grouped.chunks_exact(width)).enumerate() {
        if received.indicator[x] {
            continue;
        }
        // Bit m of q·v is the parity of v.
        let sum = acc
            .iter()
            .zip(exp)
            .fold(0, |s, (&a, &e)| if (a >> m) & 1 != 0 { s ^ e } else { s });
        *o = field.mul(field.exp(logpi.logpi[x]), sum);
    }
    for (&x, &v) in received.positions.iter().zip(&received.values) {
        out[x] = v;
    }
    Ok(out)
}

/// Same result as [`evaluate_all`], without the precomputed stack: every
/// plane pair `(i, j)` gets its own inverse transform. Three length-`q`
/// buffers beyond the output; `O(q·m²·log q)` time.
pub fn evaluate_all_low_memory(
    coeffs: &CoeffVector,
    logpi: &LogPiVector,
    received: &ReceivedSet,
    field: &Field,
) -> Result<Vec<Elem>> {
    let q = field.q();
    check_inputs(q, coeffs, logpi, received)?;
    if received.len() == q {
        return Ok(received.values.clone());
    }
    let m = field.m() as usize;

    let mut out = vec![0; q];
    let mut c_plane = vec![0u32; q];
    let mut i_plane = vec![0u32; q];
    let mut product = vec![0u32; q];
    for i in 0..m {
        for (x, v) in c_plane.iter_mut().enumerate() {
            *v = (coeffs.coeffs[x] >> i) & 1;
        }
        fwht_wrapping(&mut c_plane, 1);
        for j in 0..m {
            for (x, v) in i_plane.iter_mut().enumerate() {
                *v = (field.inv(x as Elem) >> j) & 1;
            }
            fwht_wrapping(&mut i_plane, 1);
            for ((p, &a), &b) in product.iter_mut().zip(&c_plane).zip(&i_plane) {
                *p = a.wrapping_mul(b);
            }
            fwht_wrapping(&mut product, 1);
            let e = field.exp((i + j) as u32);
            for (o, &p) in out.iter_mut().zip(&product) {
                if (p >> m) & 1 != 0 {
                    *o ^= e;
                }
            }
        }
    }

    for (x, o) in out.iter_mut().enumerate() {
        *o = field.mul(field.exp(logpi.logpi[x]), *o);
    }
    for (&x, &v) in received.positions.iter().zip(&received.values) {
        out[x] = v;
    }
    Ok(out)
}

/// Evaluates the Lagrange form directly at a few non-received points,
/// `O(|R|)` per point.
pub fn evaluate_at_points(
    coeffs: &CoeffVector,
    logpi: &LogPiVector,
    received: &ReceivedSet,
    points: &[usize],
    field: &Field,
) -> Result<Vec<Elem>> {
    let q = field.q();
    check_inputs(q, coeffs, logpi, received)?;
    // Work in the log domain: c_y / (x ⊕ y) = α^(log c_y − log(x ⊕ y)).
    let order = field.order();
    let terms: Vec<(usize, u32)> = received
        .positions
        .iter()
        .filter(|&&y| coeffs.coeffs[y] != 0)
        .map(|&y| (y, field.log(coeffs.coeffs[y]) + order))
        .collect();
    let exp = field.exp_table();
    let log = field.log_table();

    points
        .iter()
        .map(|&x| {
            if x >= q {
                return Err(Error::PositionOutOfRange { position: x, limit: q });
            }
            if received.indicator[x] {
                return Err(Error::PointInReceivedSet(x));
            }
            let sum = terms.iter().fold(0, |s, &(y, lc)| {
                let e = lc - log[x ^ y];
                s ^ exp[(if e >= order { e - order } else { e }) as usize]
            });
            Ok(field.mul(field.exp(logpi.logpi[x]), sum))
        })
        .collect()
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch(expected, actual))
    }
}

fn check_inputs(q: usize, coeffs: &CoeffVector, logpi: &LogPiVector, received: &ReceivedSet) -> Result<()> {
    check_len(q, coeffs.coeffs.len())?;
    check_len(q, logpi.logpi.len())?;
    check_len(q, received.q())
}
