//! Systematic Reed-Solomon erasure codec.
//!
//! A codeword is the image of a polynomial of degree `< k` at the points
//! `0, 1, …, n − 1` of GF(2^m). Encoding fixes the first `k` coordinates to
//! the message and recovers the rest with the erasure decoder; decoding
//! recovers the first `k` coordinates from any `k` received ones.

use std::sync::{Arc, Mutex};

use crate::erasure::{
    compute_log_pi_with, evaluate_all, evaluate_at_points, lagrange_coefficients, precompute_inverse_stack,
    LogPiVector, LogTransform, ReceivedSet, TransformStack,
};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// The direct path is used while `erased · |R| < DIRECT_PATH_FACTOR · q · m`.
pub const DIRECT_PATH_FACTOR: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodecParams {
    pub m: u32,
    pub k: usize,
    pub n: usize,
}

impl CodecParams {
    pub fn new(m: u32, k: usize, n: usize) -> Result<Self> {
        let params = Self { m, k, n };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        if !(crate::field::MIN_DEGREE..=crate::field::MAX_DEGREE).contains(&self.m) {
            return Err(Error::UnsupportedDegree(self.m));
        }
        let q = 1usize << self.m;
        if self.k == 0 || self.k > self.n || self.n > q {
            return Err(Error::BadParams(format!(
                "need 1 <= k <= n <= {q}, got k={} n={}",
                self.k, self.n
            )));
        }
        Ok(())
    }
}

/// `n` symbols; coordinate `x` holds `P(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    symbols: Vec<Elem>,
}

impl Codeword {
    pub fn symbols(&self) -> &[Elem] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Elem> {
        self.symbols
    }
}

/// How erased coordinates are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalPath {
    /// Pick by estimated cost.
    #[default]
    Auto,
    /// Evaluate the Lagrange form point by point.
    Direct,
    /// Evaluate at every point with the transform stack.
    Full,
}

pub struct Codec {
    params: CodecParams,
    field: Arc<Field>,
    log_hat: Arc<LogTransform>,
    stack: TransformStack,
    pool: Mutex<Vec<TransformStack>>,
}

impl Codec {
    /// Codec over the default field for `params.m`.
    pub fn new(params: CodecParams) -> Result<Self> {
        params.validate()?;
        Self::with_field(params, Arc::new(Field::with_degree(params.m)?))
    }

    pub fn with_field(params: CodecParams, field: Arc<Field>) -> Result<Self> {
        params.validate()?;
        if field.m() != params.m {
            return Err(Error::BadParams(format!("field has degree {}, params say {}", field.m(), params.m)));
        }
        let log_hat = Arc::new(LogTransform::new(&field));
        let stack = precompute_inverse_stack(&field);
        Ok(Self { params, field, log_hat, stack, pool: Mutex::new(Vec::new()) })
    }

    pub fn params(&self) -> CodecParams {
        self.params
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Plan for a fixed set of received positions, reusable across stripes
    /// that share the same erasure pattern.
    pub fn plan(&self, positions: &[usize]) -> Result<DecodePlan<'_>> {
        let CodecParams { k, n, .. } = self.params;
        let mut seen = vec![false; n];
        for &p in positions {
            if p >= n {
                return Err(Error::PositionOutOfRange { position: p, limit: n });
            }
            if seen[p] {
                return Err(Error::DuplicatePosition(p));
            }
            seen[p] = true;
        }
        if positions.len() < k {
            return Err(Error::NotEnoughSymbols { needed: k, actual: positions.len() });
        }
        let received = ReceivedSet::new(&self.field, positions.iter().map(|&p| (p, 0)))?;
        Ok(DecodePlan { codec: self, received, logpi: None, path: EvalPath::Auto })
    }

    /// Plan with the message positions `0..k` received.
    pub fn encoder(&self) -> DecodePlan<'_> {
        self.plan(&(0..self.params.k).collect::<Vec<_>>())
            .expect("message positions are always a valid plan")
    }

    /// Codeword whose first `k` symbols are `message`.
    pub fn encode_systematic(&self, message: &[Elem]) -> Result<Codeword> {
        self.encoder().encode(message)
    }

    /// Recovers the `k` message symbols from at least `k` received ones.
    pub fn decode(&self, received: &[(usize, Elem)]) -> Result<Vec<Elem>> {
        self.decode_via(received, EvalPath::Auto)
    }

    pub fn decode_via(&self, received: &[(usize, Elem)], path: EvalPath) -> Result<Vec<Elem>> {
        let (mut plan, values) = self.plan_for(received)?;
        plan.path = path;
        plan.decode(&values)
    }

    /// Recovers all `n` coordinates.
    pub fn reconstruct(&self, received: &[(usize, Elem)]) -> Result<Codeword> {
        self.reconstruct_via(received, EvalPath::Auto)
    }

    pub fn reconstruct_via(&self, received: &[(usize, Elem)], path: EvalPath) -> Result<Codeword> {
        let (mut plan, values) = self.plan_for(received)?;
        plan.path = path;
        plan.reconstruct(&values)
    }

    fn plan_for(&self, received: &[(usize, Elem)]) -> Result<(DecodePlan<'_>, Vec<Elem>)> {
        let mut pairs = received.to_vec();
        pairs.sort_unstable_by_key(|&(p, _)| p);
        let positions: Vec<usize> = pairs.iter().map(|&(p, _)| p).collect();
        let plan = self.plan(&positions)?;
        Ok((plan, pairs.into_iter().map(|(_, v)| v).collect()))
    }

    fn take_stack(&self) -> TransformStack {
        self.pool
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .pop()
            .unwrap_or_else(|| self.stack.fresh())
    }

    fn return_stack(&self, stack: TransformStack) {
        self.pool.lock().unwrap_or_else(|e| e.into_inner()).push(stack);
    }
}

/// A received-position pattern with its `[L(Π)]` computed once.
pub struct DecodePlan<'a> {
    codec: &'a Codec,
    received: ReceivedSet,
    logpi: Option<LogPiVector>,
    path: EvalPath,
}

impl<'a> DecodePlan<'a> {
    pub fn with_path(mut self, path: EvalPath) -> Self {
        self.path = path;
        self
    }

    /// Received positions, ascending.
    pub fn positions(&self) -> &[usize] {
        self.received.positions()
    }

    /// `values` in ascending position order; returns the message.
    pub fn decode(&mut self, values: &[Elem]) -> Result<Vec<Elem>> {
        self.recover(values, self.codec.params.k)
    }

    pub fn reconstruct(&mut self, values: &[Elem]) -> Result<Codeword> {
        let symbols = self.recover(values, self.codec.params.n)?;
        Ok(Codeword { symbols })
    }

    /// Encodes `message`; only meaningful on the plan from [`Codec::encoder`].
    pub fn encode(&mut self, message: &[Elem]) -> Result<Codeword> {
        let k = self.codec.params.k;
        if message.len() != k {
            return Err(Error::BadLength { expected: k, actual: message.len() });
        }
        self.reconstruct(message)
    }

    /// Coordinates `0..upto` of the codeword.
    fn recover(&mut self, values: &[Elem], upto: usize) -> Result<Vec<Elem>> {
        let field = &*self.codec.field;
        self.received.set_values(field, values)?;

        let erased: Vec<usize> = (0..upto).filter(|&x| !self.received.contains(x)).collect();
        let mut out = vec![0; upto];
        for (&x, &v) in self.received.positions().iter().zip(self.received.values()) {
            if x < upto {
                out[x] = v;
            }
        }
        if erased.is_empty() {
            return Ok(out);
        }

        let logpi = match &self.logpi {
            Some(l) => l,
            None => self.logpi.insert(compute_log_pi_with(&self.received, field, &self.codec.log_hat)?),
        };
        let coeffs = lagrange_coefficients(&self.received, logpi, field)?;

        let direct = match self.path {
            EvalPath::Direct => true,
            EvalPath::Full => false,
            EvalPath::Auto => {
                erased.len().saturating_mul(self.received.len())
                    < DIRECT_PATH_FACTOR * field.q() * field.m() as usize
            }
        };
        if direct {
            let vals = evaluate_at_points(&coeffs, logpi, &self.received, &erased, field)?;
            for (&x, v) in erased.iter().zip(vals) {
                out[x] = v;
            }
        } else {
            let mut stack = self.codec.take_stack();
            let all = evaluate_all(&coeffs, logpi, &self.received, &mut stack, field);
            self.codec.return_stack(stack);
            out.copy_from_slice(&all?[..upto]);
        }
        Ok(out)
    }
}
