//! Regenerates the synthetic input files.
//!
//! `cargo run -p navstat-cli --example make_fixture -- <dir> [seed]`

use std::path::PathBuf;

use navstat_cli::fixture::{write_fixture, FIXTURE_SEED};

fn main() {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "fixture".into()));
    let seed = args
        .next()
        .map(|s| s.parse().expect("seed must be an unsigned integer"))
        .unwrap_or(FIXTURE_SEED);
    if let Err(e) = write_fixture(&dir, seed) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
    println!("wrote fixture to {}", dir.display());
}
