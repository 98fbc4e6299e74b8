//! Splitting a file into shards and putting it back together.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rswe_core::{Codec, CodecParams, Elem};

use crate::error::{CliError, Result};
use crate::shard::{ShardHeader, HEADER_LEN};

/// Default file name for shard `index`.
pub fn shard_file_name(index: u32) -> String {
    format!("shard_{index}.rswe")
}

fn check_params(m: u32, k: usize, n: usize) -> Result<()> {
    if m != 8 && m != 16 {
        return Err(CliError::BadParams(format!("m must be 8 or 16, got {m}")));
    }
    if k == 0 || k > n || n > 1 << m {
        return Err(CliError::BadParams(format!("need 1 <= k <= n <= {}, got k={k} n={n}", 1u32 << m)));
    }
    Ok(())
}

fn read_symbol(bytes: &[u8], width: usize) -> Elem {
    match width {
        1 => bytes[0] as Elem,
        _ => u16::from_le_bytes([bytes[0], bytes[1]]) as Elem,
    }
}

fn write_symbol(out: &mut Vec<u8>, symbol: Elem, width: usize) {
    out.extend_from_slice(&symbol.to_le_bytes()[..width]);
}

/// Encodes `data` into `n` shard images (header + payload), index order.
pub fn encode_bytes(data: &[u8], m: u32, k: usize, n: usize) -> Result<Vec<Vec<u8>>> {
    check_params(m, k, n)?;
    let width = m as usize / 8;
    let stripe_bytes = k * width;
    let stripes = ShardHeader::stripes_for(data.len() as u64, k as u32, m as u8);
    let stripe_count = u32::try_from(stripes)
        .map_err(|_| CliError::BadParams(format!("{stripes} stripes do not fit the header")))?;

    let header = |index: u32| ShardHeader {
        m: m as u8,
        k: k as u32,
        n: n as u32,
        index,
        file_len: data.len() as u64,
        stripe_count,
    };
    let mut shards: Vec<Vec<u8>> = (0..n as u32)
        .map(|j| {
            let mut buf = Vec::with_capacity(HEADER_LEN + stripe_count as usize * width);
            buf.extend_from_slice(&header(j).to_bytes());
            buf
        })
        .collect();

    let codec = Codec::new(CodecParams::new(m, k, n)?)?;
    let mut encoder = codec.encoder();
    let mut padded = vec![0u8; stripe_bytes];
    let mut message = vec![0; k];
    for chunk in data.chunks(stripe_bytes) {
        padded[..chunk.len()].copy_from_slice(chunk);
        padded[chunk.len()..].fill(0);
        for (sym, bytes) in message.iter_mut().zip(padded.chunks_exact(width)) {
            *sym = read_symbol(bytes, width);
        }
        let word = encoder.encode(&message)?;
        for (shard, &sym) in shards.iter_mut().zip(word.symbols()) {
            write_symbol(shard, sym, width);
        }
    }
    Ok(shards)
}

/// Reads `input` and writes `n` shard files into `out_dir`.
pub fn encode_file(input: &Path, m: u32, k: usize, n: usize, out_dir: &Path) -> Result<Vec<PathBuf>> {
    check_params(m, k, n)?;
    let data = fs::read(input).map_err(CliError::io(input))?;
    let shards = encode_bytes(&data, m, k, n)?;
    fs::create_dir_all(out_dir).map_err(CliError::io(out_dir))?;
    shards
        .iter()
        .enumerate()
        .map(|(j, bytes)| {
            let path = out_dir.join(shard_file_name(j as u32));
            fs::write(&path, bytes).map_err(CliError::io(&path))?;
            Ok(path)
        })
        .collect()
}

/// Rebuilds the original bytes from `(path, shard image)` pairs. Paths are
/// only used in diagnostics; headers decide shard identity.
pub fn decode_bytes(shards: &[(PathBuf, Vec<u8>)]) -> Result<Vec<u8>> {
    let mut parsed: Vec<(ShardHeader, &[u8])> = Vec::with_capacity(shards.len());
    let first = shards.first().ok_or(CliError::NotEnoughShards { needed: 1, actual: 0 })?;
    for (path, bytes) in shards {
        let header = ShardHeader::parse(bytes)
            .map_err(|e| CliError::CorruptHeader(format!("{}: {e}", path.display())))?;
        let payload = &bytes[HEADER_LEN..];
        if payload.len() != header.payload_len() {
            return Err(CliError::CorruptPayload {
                path: path.clone(),
                expected: header.payload_len(),
                actual: payload.len(),
            });
        }
        if let Some((h0, _)) = parsed.first() {
            if !h0.same_stripe_set(&header) {
                return Err(CliError::HeaderMismatch { path: path.clone(), first: first.0.clone() });
            }
        }
        if parsed.iter().any(|(h, _)| h.index == header.index) {
            return Err(CliError::DuplicateShard(header.index));
        }
        parsed.push((header, payload));
    }

    let h0 = parsed[0].0;
    let (m, k, n) = (h0.m as u32, h0.k as usize, h0.n as usize);
    if parsed.len() < k {
        return Err(CliError::NotEnoughShards { needed: k, actual: parsed.len() });
    }
    parsed.sort_unstable_by_key(|(h, _)| h.index);
    let positions: Vec<usize> = parsed.iter().map(|(h, _)| h.index as usize).collect();

    let width = h0.symbol_bytes();
    let codec = Codec::new(CodecParams::new(m, k, n)?)?;
    let mut plan = codec.plan(&positions)?;
    let mut out = Vec::with_capacity(h0.stripe_count as usize * k * width);
    let mut values = vec![0; parsed.len()];
    for s in 0..h0.stripe_count as usize {
        for (v, (_, payload)) in values.iter_mut().zip(&parsed) {
            *v = read_symbol(&payload[s * width..], width);
        }
        for sym in plan.decode(&values)? {
            write_symbol(&mut out, sym, width);
        }
    }
    out.truncate(h0.file_len as usize);
    Ok(out)
}

/// Reads the shard files and writes the reconstructed file to `out`. The
/// output appears atomically, or not at all.
pub fn decode_files(paths: &[PathBuf], out: &Path) -> Result<()> {
    let shards = paths
        .iter()
        .map(|p| fs::read(p).map(|b| (p.clone(), b)).map_err(CliError::io(p)))
        .collect::<Result<Vec<_>>>()?;
    let data = decode_bytes(&shards)?;

    let dir = match out.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(CliError::io(dir))?;
    tmp.write_all(&data).map_err(CliError::io(tmp.path()))?;
    tmp.persist(out).map_err(|e| CliError::Io { path: out.to_path_buf(), source: e.error })?;
    Ok(())
}
