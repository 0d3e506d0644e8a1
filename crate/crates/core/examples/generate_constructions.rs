//! The constructions, their sizes, and a look at the seeded corpus.
//!
//! `cargo run --release --example generate_constructions -- [seed]`

use std::collections::BTreeMap;

use skewlat::construct::{
    gen_chain, gen_corpus, gen_partial_functions, gen_rectangular, gen_split_middle, gen_twisted_primitive, gen_xn,
    gen_yn, CorpusLimits, Hand,
};
use skewlat::validate::is_skew_lattice;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let named = [
        ("chain(4)", gen_chain(4).unwrap()),
        ("rectangular(2,3)", gen_rectangular(2, 3).unwrap()),
        ("xn(3)", gen_xn(3).unwrap()),
        ("yn(3)", gen_yn(3).unwrap()),
        ("partialfn(2,2)", gen_partial_functions(2, 2).unwrap()),
        ("twisted primitive", gen_twisted_primitive()),
        ("split middle (left)", gen_split_middle(Hand::Left)),
    ];
    for (name, alg) in &named {
        println!("{name:<22} {:>3} elements  valid={}", alg.len(), is_skew_lattice(alg));
    }

    let corpus = gen_corpus(seed, &CorpusLimits::default());
    let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &corpus {
        *by_size.entry(e.algebra.len()).or_default() += 1;
    }
    println!("corpus seed {seed}: {} algebras", corpus.len());
    for (size, count) in by_size {
        println!("  size {size:>2}: {count}");
    }
}
