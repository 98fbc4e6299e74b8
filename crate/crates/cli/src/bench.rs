//! Per-stage timing of a full-length decode.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rswe_core::erasure::{
    compute_log_pi_with, evaluate_all, lagrange_coefficients, precompute_inverse_stack, LogTransform, ReceivedSet,
};
use rswe_core::{Codec, CodecParams, Elem, Field};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchOptions {
    pub m: u32,
    pub erasures: usize,
    pub seed: u64,
    pub repeat: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageTimes {
    pub table_build: Duration,
    pub log_pi: Duration,
    pub coefficients: Duration,
    pub evaluation: Duration,
    pub total: Duration,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub options: BenchOptions,
    /// Median of each stage over the repeats.
    pub median: StageTimes,
    pub runs: Vec<StageTimes>,
    /// Erased coordinates, ascending.
    pub erased: Vec<usize>,
    pub decoded: Vec<Elem>,
}

impl BenchReport {
    /// FNV-1a over the decoded symbols.
    pub fn checksum(&self) -> u64 {
        self.decoded.iter().fold(0xcbf2_9ce4_8422_2325, |h, &s| {
            s.to_le_bytes()
                .iter()
                .fold(h, |h, &b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
        })
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = &self.options;
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        writeln!(
            f,
            "field: m={} q={} erasures={} seed={} repeat={}",
            o.m,
            1usize << o.m,
            o.erasures,
            o.seed,
            o.repeat
        )?;
        writeln!(f, "table_build_ms: {:.3}", ms(self.median.table_build))?;
        writeln!(f, "log_pi_ms: {:.3}", ms(self.median.log_pi))?;
        writeln!(f, "coefficients_ms: {:.3}", ms(self.median.coefficients))?;
        writeln!(f, "evaluation_ms: {:.3}", ms(self.median.evaluation))?;
        writeln!(f, "total_ms: {:.3}", ms(self.median.total))?;
        write!(f, "checksum: {:#018x}", self.checksum())
    }
}

/// Encodes a random full-length codeword, erases `erasures` coordinates and
/// times the decode `repeat` times, single-threaded.
pub fn run_bench(options: BenchOptions) -> Result<BenchReport> {
    let BenchOptions { m, erasures, seed, repeat } = options;
    if !(8..=20).contains(&m) {
        return Err(CliError::BadParams(format!("m must be in 8..=20, got {m}")));
    }
    let q = 1usize << m;
    if erasures >= q {
        return Err(CliError::BadParams(format!("erasures must be below {q}")));
    }
    if repeat == 0 {
        return Err(CliError::BadParams("repeat must be positive".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = q - erasures;
    let message: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..q as Elem)).collect();
    let codeword = if erasures == 0 {
        message
    } else {
        Codec::new(CodecParams::new(m, k, q)?)?.encode_systematic(&message)?.into_symbols()
    };
    let mut erased = sample(&mut rng, q, erasures).into_vec();
    erased.sort_unstable();
    let mut is_erased = vec![false; q];
    for &x in &erased {
        is_erased[x] = true;
    }

    let mut runs = Vec::with_capacity(repeat);
    let mut decoded = Vec::new();
    for _ in 0..repeat {
        let mut t = StageTimes::default();

        let start = Instant::now();
        let field = Field::with_degree(m)?;
        let log_hat = LogTransform::new(&field);
        let mut stack = precompute_inverse_stack(&field);
        t.table_build = start.elapsed();

        decoded = if erasures == 0 {
            codeword.clone()
        } else {
            let start = Instant::now();
            let received = ReceivedSet::new(
                &field,
                (0..q).filter(|&x| !is_erased[x]).map(|x| (x, codeword[x])),
            )?;
            let logpi = compute_log_pi_with(&received, &field, &log_hat)?;
            t.log_pi = start.elapsed();

            let start = Instant::now();
            let coeffs = lagrange_coefficients(&received, &logpi, &field)?;
            t.coefficients = start.elapsed();

            let start = Instant::now();
            let out = evaluate_all(&coeffs, &logpi, &received, &mut stack, &field)?;
            t.evaluation = start.elapsed();
            out
        };
        t.total = t.table_build + t.log_pi + t.coefficients + t.evaluation;
        if decoded != codeword {
            return Err(CliError::BenchMismatch);
        }
        runs.push(t);
    }

    let median = |f: fn(&StageTimes) -> Duration| {
        let mut v: Vec<Duration> = runs.iter().map(f).collect();
        v.sort_unstable();
        v[v.len() / 2]
    };
    let median = StageTimes {
        table_build: median(|t| t.table_build),
        log_pi: median(|t| t.log_pi),
        coefficients: median(|t| t.coefficients),
        evaluation: median(|t| t.evaluation),
        total: median(|t| t.total),
    };
    Ok(BenchReport { options, median, runs, erased, decoded })
}
