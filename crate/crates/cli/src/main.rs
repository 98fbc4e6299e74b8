use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rswe_cli::{decode_files, encode_file, run_bench, BenchOptions};

/// Reed-Solomon erasure coding of files over GF(2^8) or GF(2^16).
#[derive(Parser)]
#[command(name = "rswe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a file into n shards, any k of which rebuild it.
    Encode {
        input: PathBuf,
        /// Field degree: 8 or 16.
        #[arg(long, default_value_t = 8)]
        m: u32,
        /// Data symbols per stripe (k).
        #[arg(long = "data")]
        k: usize,
        /// Shards to write (n).
        #[arg(long = "shards")]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rebuild a file from at least k of its shards.
    Decode {
        #[arg(required = true)]
        shards: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time a full-length decode with random erasures.
    Bench {
        #[arg(long, default_value_t = 16)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        erasures: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Encode { input, m, k, n, out } => encode_file(&input, m, k, n, &out).map(|_| ()),
        Command::Decode { shards, out } => decode_files(&shards, &out),
        Command::Bench { m, erasures, seed, repeat } => {
            run_bench(BenchOptions { m, erasures, seed, repeat }).map(|report| println!("{report}"))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rswe: {e}");
            ExitCode::FAILURE
        }
    }
}
