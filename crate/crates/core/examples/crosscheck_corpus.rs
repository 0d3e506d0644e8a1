//! Generate the seeded corpus and cross-check every characterization on it.
//!
//! `cargo run --release --example crosscheck_corpus -- [seed]`

use std::time::Instant;

use skewlat::construct::{gen_corpus, CorpusLimits};
use skewlat::crosscheck::crosscheck;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let start = Instant::now();
    let corpus = gen_corpus(seed, &CorpusLimits::default());
    let summary = crosscheck(&corpus, seed);
    print!("{summary}");
    println!("elapsed {:.2?}", start.elapsed());
    std::process::exit(i32::from(!summary.ok()));
}
