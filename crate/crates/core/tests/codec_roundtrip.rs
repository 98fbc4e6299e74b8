use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rswe_core::oracle::naive_interpolate_eval;
use rswe_core::{Codec, CodecParams, Elem, EvalPath};

fn codec(m: u32, k: usize, n: usize) -> Codec {
    Codec::new(CodecParams::new(m, k, n).unwrap()).unwrap()
}

fn survivors(word: &[Elem], positions: &[usize]) -> Vec<(usize, Elem)> {
    positions.iter().map(|&p| (p, word[p])).collect()
}

#[test]
fn exhaustive_erasure_patterns_small_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for m in 2..=4u32 {
        let q = 1usize << m;
        let shapes: Vec<(usize, usize)> = if m < 4 {
            (1..=q).flat_map(|n| (1..=n).map(move |k| (k, n))).collect()
        } else {
            vec![(1, 16), (4, 16), (8, 16), (13, 16), (16, 16), (5, 11)]
        };
        for (k, n) in shapes {
            let c = codec(m, k, n);
            let message: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..q as Elem)).collect();
            let word = c.encode_systematic(&message).unwrap();
            assert_eq!(&word.symbols()[..k], &message[..]);
            for mask in 0u32..(1 << n) {
                if (mask.count_ones() as usize) < k {
                    continue;
                }
                let pos: Vec<usize> = (0..n).filter(|x| mask >> x & 1 == 1).collect();
                let rx = survivors(word.symbols(), &pos);
                assert_eq!(c.decode(&rx).unwrap(), message, "m={m} k={k} n={n} mask={mask:#x}");
                assert_eq!(c.reconstruct(&rx).unwrap(), word);
            }
        }
    }
}

fn random_round_trips(m: u32, trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = 1usize << m;
    for _ in 0..trials {
        let n = rng.gen_range(2..=q.min(600));
        let k = rng.gen_range(1..=n);
        let c = codec(m, k, n);
        let message: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..q as Elem)).collect();
        let word = c.encode_systematic(&message).unwrap();
        assert_eq!(&word.symbols()[..k], &message[..]);
        let mut pos: Vec<usize> = (0..n).collect();
        pos.shuffle(&mut rng);
        pos.truncate(rng.gen_range(k..=n));
        let rx = survivors(word.symbols(), &pos);
        let direct = c.decode_via(&rx, EvalPath::Direct).unwrap();
        let full = c.decode_via(&rx, EvalPath::Full).unwrap();
        assert_eq!(direct, message);
        assert_eq!(full, message);
        assert_eq!(c.decode(&rx).unwrap(), message);
    }
}

#[test]
fn random_round_trips_gf256() {
    random_round_trips(8, 500, 11);
}

#[test]
fn random_round_trips_gf65536() {
    random_round_trips(16, 500, 12);
}

#[test]
fn parity_symbols_match_interpolation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for m in [6, 8, 11] {
        let c = codec(m, 7, 40);
        let message: Vec<Elem> = (0..7).map(|_| rng.gen_range(0..1 << m)).collect();
        let word = c.encode_systematic(&message).unwrap();
        let pts: Vec<usize> = (0..7).collect();
        for x in 0..40 {
            assert_eq!(word.symbols()[x], naive_interpolate_eval(&pts, &message, x, c.field()).unwrap());
        }
    }
}

#[test]
fn decoding_is_deterministic() {
    let c = codec(16, 1000, 3000);
    let message: Vec<Elem> = (0..1000).map(|i| (i * 7919 % 65536) as Elem).collect();
    let a = c.encode_systematic(&message).unwrap();
    let b = c.encode_systematic(&message).unwrap();
    assert_eq!(a, b);
    let rx = survivors(a.symbols(), &(1500..2500).collect::<Vec<_>>());
    assert_eq!(c.reconstruct(&rx).unwrap(), c.reconstruct(&rx).unwrap());
}

#[test]
fn concurrent_decodes_share_a_codec() {
    let c = codec(12, 500, 4096);
    let message: Vec<Elem> = (0..500).map(|i| (i * 13 % 4096) as Elem).collect();
    let word = c.encode_systematic(&message).unwrap();
    std::thread::scope(|s| {
        for t in 0..4 {
            let (c, word, message) = (&c, &word, &message);
            s.spawn(move || {
                let pos: Vec<usize> = (t * 700..t * 700 + 500).collect();
                let rx = survivors(word.symbols(), &pos);
                assert_eq!(c.decode_via(&rx, EvalPath::Full).unwrap(), *message);
            });
        }
    });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decode_inverts_encode(
        m in 2u32..=10,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = 1usize << m;
        let n = rng.gen_range(1..=q);
        let k = rng.gen_range(1..=n);
        let c = codec(m, k, n);
        let message: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..q as Elem)).collect();
        let word = c.encode_systematic(&message).unwrap();
        let mut pos: Vec<usize> = (0..n).collect();
        pos.shuffle(&mut rng);
        pos.truncate(k);
        let rx = survivors(word.symbols(), &pos);
        prop_assert_eq!(c.decode(&rx).unwrap(), message);
        prop_assert_eq!(c.reconstruct(&rx).unwrap(), word);
    }
}
