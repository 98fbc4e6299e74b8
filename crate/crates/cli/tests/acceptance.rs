//! Acceptance suite. Runs every criterion in sequence (timings must not
//! compete with each other) and prints one PASS/FAIL line per criterion.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rswe_cli::{run_bench, shard_file_name, BenchOptions};
use rswe_core::erasure::{
    compute_log_pi, evaluate_all, evaluate_all_low_memory, evaluate_at_points, lagrange_coefficients,
    precompute_inverse_stack, ReceivedSet,
};
use rswe_core::oracle::{naive_encode, naive_interpolate_eval, naive_walsh};
use rswe_core::walsh::{WalshMode, WalshVector};
use rswe_core::{Codec, CodecParams, Elem, Field};
use sha2::{Digest, Sha256};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn random_subset(rng: &mut ChaCha8Rng, q: usize, size: usize) -> Vec<usize> {
    let mut pts: Vec<usize> = (0..q).collect();
    pts.shuffle(rng);
    pts.truncate(size);
    pts
}

/// 1. evaluate_all equals the Lagrange oracle at every point, m ∈ {2, 3, 4}.
fn oracle_small_fields() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut combos = 0usize;
    for m in 2..=4u32 {
        let field = Field::with_degree(m).unwrap();
        let q = field.q();
        let mut stack = precompute_inverse_stack(&field);
        // Every received set; m = 2 also every polynomial of every degree.
        for mask in 1u32..(1 << q) {
            let pts: Vec<usize> = (0..q).filter(|x| mask >> x & 1 == 1).collect();
            let polys: Vec<Vec<Elem>> = if m == 2 {
                (1..=pts.len())
                    .flat_map(|k| (0..q.pow(k as u32)).map(move |p| (k, p)))
                    .map(|(k, p)| (0..k).map(|i| ((p / q.pow(i as u32)) % q) as Elem).collect())
                    .collect()
            } else {
                let k = rng.gen_range(1..=pts.len());
                vec![(0..k).map(|_| rng.gen_range(0..q as Elem)).collect()]
            };
            for coeffs in polys {
                let word = naive_encode(&coeffs, &field);
                let vals: Vec<Elem> = pts.iter().map(|&p| word[p]).collect();
                let r = ReceivedSet::new(&field, pts.iter().copied().zip(vals.iter().copied())).unwrap();
                let logpi = compute_log_pi(&r, &field).unwrap();
                let c = lagrange_coefficients(&r, &logpi, &field).unwrap();
                let out = evaluate_all(&c, &logpi, &r, &mut stack, &field).unwrap();
                for x in 0..q {
                    let want = naive_interpolate_eval(&pts, &vals, x, &field).unwrap();
                    ensure!(out[x] == want, "m={m} R={mask:#x} k={} x={x}: {} != {want}", coeffs.len(), out[x]);
                }
                combos += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(combos >= 200, "only {combos} combinations");
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{combos} combinations exact, {elapsed:.2?}"))
}

/// 2. Codec reconstruction equals Horner ground truth, m = 8 and m = 16.
fn oracle_randomized() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    // The oracle costs q·k; k is capped at m = 16 to keep it in budget.
    for (m, trials, k_max) in [(8u32, 500usize, 256usize), (16, 25, 4096)] {
        let q = 1usize << m;
        let field = Field::with_degree(m).unwrap();
        for t in 0..trials {
            let k = rng.gen_range(1..=k_max);
            let coeffs: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..q as Elem)).collect();
            let truth = naive_encode(&coeffs, &field);
            let size = rng.gen_range(k..=q);
            let rx: Vec<(usize, Elem)> = random_subset(&mut rng, q, size).into_iter().map(|p| (p, truth[p])).collect();
            let codec = Codec::new(CodecParams::new(m, k, q).unwrap()).unwrap();
            let word = codec.reconstruct(&rx).map_err(|e| e.to_string())?;
            ensure!(word.symbols() == truth.as_slice(), "m={m} trial {t} k={k} |R|={size}");
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!("500 trials at m=8, 25 at m=16, exact, {elapsed:.2?}"))
}

/// 3. Fast vs naive transform, and involution modulo q − 1.
fn walsh_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 1..=6u32 {
        let q = 1usize << m;
        for _ in 0..100 {
            let v: Vec<i64> = (0..q).map(|_| rng.gen_range(-1 << 30..1 << 30)).collect();
            let fast = WalshVector::new(WalshMode::Exact, v.clone()).unwrap().fwht();
            ensure!(fast.data() == naive_walsh(&v).unwrap().as_slice(), "m={m} mismatch");
        }
    }
    for m in 2..=8u32 {
        let q = 1usize << m;
        for _ in 0..100 {
            let v: Vec<i64> = (0..q).map(|_| rng.gen_range(0..q as i64 - 1)).collect();
            let w = WalshVector::new(WalshMode::ModQMinus1, v).unwrap();
            ensure!(w.involution_check().unwrap() == w, "m={m} not involutive");
        }
    }
    Ok("600 naive comparisons, 700 involutions".into())
}

/// 4. The three evaluators agree at m = 8.
fn variant_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let field = Field::with_degree(8).unwrap();
    let q = field.q();
    let mut stack = precompute_inverse_stack(&field);
    for t in 0..100 {
        let size = rng.gen_range(1..q);
        let pts = random_subset(&mut rng, q, size);
        let r = ReceivedSet::new(&field, pts.iter().map(|&p| (p, rng.gen_range(0..q as Elem)))).unwrap();
        let logpi = compute_log_pi(&r, &field).unwrap();
        let c = lagrange_coefficients(&r, &logpi, &field).unwrap();
        let full = evaluate_all(&c, &logpi, &r, &mut stack, &field).unwrap();
        let low = evaluate_all_low_memory(&c, &logpi, &r, &field).unwrap();
        ensure!(full == low, "instance {t}: low-memory differs");
        let erased: Vec<usize> = (0..q).filter(|&x| !r.contains(x)).collect();
        let direct = evaluate_at_points(&c, &logpi, &r, &erased, &field).unwrap();
        ensure!(erased.iter().zip(&direct).all(|(&x, &v)| full[x] == v), "instance {t}: direct differs");
    }
    Ok("100 instances identical".into())
}

fn bench_total(m: u32, repeat: usize) -> Result<Duration, String> {
    let report = run_bench(BenchOptions { m, erasures: 1 << (m - 1), seed: 1, repeat }).map_err(|e| e.to_string())?;
    Ok(report.median.total)
}

/// 5. Full decode with q/2 erasures: < 2 s at m = 16, < 30 s at m = 20.
fn performance() -> Outcome {
    let t16 = bench_total(16, 3)?;
    let t20 = bench_total(20, 3)?;
    ensure!(t16 < Duration::from_secs(2), "m=16 took {t16:?}");
    ensure!(t20 < Duration::from_secs(30), "m=20 took {t20:?}");
    Ok(format!("m=16 {t16:.2?}, m=20 {t20:.2?}"))
}

/// 6. t(m=16) / t(m=14) within [3, 8].
fn scaling() -> Outcome {
    // Warm up allocator and caches before timing.
    bench_total(14, 1)?;
    let t14 = bench_total(14, 5)?;
    let t16 = bench_total(16, 5)?;
    let ratio = t16.as_secs_f64() / t14.as_secs_f64();
    ensure!((3.0..=8.0).contains(&ratio), "ratio {ratio:.2} (m=14 {t14:?}, m=16 {t16:?})");
    Ok(format!("ratio {ratio:.2} (m=14 {t14:.2?}, m=16 {t16:.2?})"))
}

/// 7. 1 MiB through the CLI at m = 16, k = 1024, n = 1536, 512 shards lost.
fn cli_round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut data = vec![0u8; 1 << 20];
    rng.fill_bytes(&mut data);
    let input = tmp.path().join("input.bin");
    fs::write(&input, &data).map_err(|e| e.to_string())?;
    let shard_dir = tmp.path().join("shards");

    let bin = env!("CARGO_BIN_EXE_rswe");
    let status = Command::new(bin)
        .args(["encode", input.to_str().unwrap(), "--m", "16", "--data", "1024", "--shards", "1536", "--out"])
        .arg(&shard_dir)
        .status()
        .map_err(|e| e.to_string())?;
    ensure!(status.success(), "encode failed");

    let mut indices: Vec<u32> = (0..1536).collect();
    indices.shuffle(&mut rng);
    for &j in &indices[..512] {
        fs::remove_file(shard_dir.join(shard_file_name(j))).map_err(|e| e.to_string())?;
    }
    let survivors: Vec<PathBuf> = indices[512..].iter().map(|&j| shard_dir.join(shard_file_name(j))).collect();
    let output = tmp.path().join("output.bin");
    let status = Command::new(bin)
        .arg("decode")
        .args(&survivors)
        .arg("--out")
        .arg(&output)
        .status()
        .map_err(|e| e.to_string())?;
    ensure!(status.success(), "decode failed");

    let restored = fs::read(&output).map_err(|e| e.to_string())?;
    let (want, got) = (Sha256::digest(&data), Sha256::digest(&restored));
    ensure!(want == got, "sha256 differs");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("sha256 match, {elapsed:.2?}"))
}

/// 8. k + 17 received symbols give the same result as a k-subset.
fn overdetermined() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let q = 256;
    for t in 0..50 {
        let k = rng.gen_range(1..=q - 17);
        let codec = Codec::new(CodecParams::new(8, k, q).unwrap()).unwrap();
        let message: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..q as Elem)).collect();
        let word = codec.encode_systematic(&message).unwrap();
        let rx: Vec<(usize, Elem)> = random_subset(&mut rng, q, k + 17).into_iter().map(|p| (p, word.symbols()[p])).collect();
        let all = codec.reconstruct(&rx).unwrap();
        let mut sub = rx.clone();
        sub.shuffle(&mut rng);
        sub.truncate(k);
        let subset = codec.reconstruct(&sub).unwrap();
        ensure!(all == subset && all == word, "instance {t} (k={k}) differs");
    }
    Ok("50 instances identical".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 oracle equivalence, m in {2,3,4}", oracle_small_fields),
        ("2 oracle equivalence, randomized m=8/16", oracle_randomized),
        ("3 Walsh transform properties", walsh_properties),
        ("4 evaluator variant agreement", variant_agreement),
        ("5 decode time at m=16 and m=20", performance),
        ("6 complexity scaling m=16 vs m=14", scaling),
        ("7 CLI 1 MiB round trip", cli_round_trip),
        ("8 overdetermined decode", overdetermined),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{name}] {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
