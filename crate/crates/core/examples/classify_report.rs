//! Every property in every mode, for a few contrasting algebras.
//!
//! `cargo run --example classify_report`

use skewlat::algebra::direct_product;
use skewlat::classify::classify_report;
use skewlat::construct::{gen_chain, gen_partial_functions, gen_rectangular, gen_twisted_primitive, gen_xn};

fn main() {
    let algebras = [
        ("X_2", gen_xn(2).unwrap()),
        ("partial functions 2->2", gen_partial_functions(2, 2).unwrap()),
        ("3-chain x 1x2 rectangle", direct_product(&gen_chain(3).unwrap(), &gen_rectangular(1, 2).unwrap()).unwrap()),
        ("twisted primitive", gen_twisted_primitive()),
    ];
    for (name, alg) in &algebras {
        println!("== {name}");
        print!("{}", classify_report(alg).unwrap());
    }
    println!("== X_2 as JSON");
    println!("{}", classify_report(&algebras[0].1).unwrap().to_json());
}
