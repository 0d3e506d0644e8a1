//! Locate a copy of X_n or Y_n inside non-categorical algebras.
//!
//! `cargo run --example forbidden_search`

use skewlat::algebra::{check_embedding, direct_product};
use skewlat::classify::find_forbidden;
use skewlat::construct::{gen_chain, gen_xn, gen_yn};

fn main() {
    let algebras = [
        ("X_1", gen_xn(1).unwrap()),
        ("X_3", gen_xn(3).unwrap()),
        ("Y_2", gen_yn(2).unwrap()),
        ("Y_2 x 2-chain", direct_product(&gen_yn(2).unwrap(), &gen_chain(2).unwrap()).unwrap()),
    ];
    for (name, alg) in &algebras {
        match find_forbidden(alg).unwrap() {
            None => println!("{name}: none"),
            Some(w) => {
                let pairs: Vec<String> = w.label_pairs(alg).iter().map(|(s, t)| format!("{s}->{t}")).collect();
                println!("{name}: {}_{} [{}] verified={}", w.kind, w.n, pairs.join(" "), check_embedding(&w.embedding(alg)));
            }
        }
    }
}
