//! Primitive algebras from coset data, the order-closed test, and the
//! splitting of an order-closed primitive algebra into rectangular x simple.
//!
//! `cargo run --example primitive_factorization`

use skewlat::classify::{is_order_closed, OrderClosedMode};
use skewlat::construct::{gen_primitive, twisted_primitive_spec, CosetMap, Hand, PrimitiveSpec};
use skewlat::coset::primitive_factorization;
use skewlat::order::Structure;

fn straight_spec() -> PrimitiveSpec {
    let cosets = |p: &str| vec![vec![format!("{p}1"), format!("{p}2")], vec![format!("{p}3"), format!("{p}4")]];
    let mut bijections = Vec::new();
    for upper in 0..2 {
        for lower in 0..2 {
            bijections.push(CosetMap { upper, lower, pairs: vec![(0, 0), (1, 1)] });
        }
    }
    PrimitiveSpec { upper_cosets: cosets("a"), lower_cosets: cosets("b"), bijections, hand: Hand::Left }
}

fn main() {
    for (name, spec) in [("twisted", twisted_primitive_spec()), ("straight", straight_spec())] {
        println!("== {name}");
        println!("{}", serde_json::to_string(&spec).unwrap());
        let alg = gen_primitive(&spec).unwrap();
        let v = is_order_closed(&alg, OrderClosedMode::Direct).unwrap();
        println!("order-closed: {} witness {:?}", v.holds, v.witness_labels(&alg));
        let st = Structure::new(&alg).unwrap();
        match primitive_factorization(&st).unwrap() {
            Some(f) => println!(
                "factors as {} x {} (rectangular {}, simple {})",
                f.rectangular.len(),
                f.simple.len(),
                f.rectangular.names().join(","),
                f.simple.names().join(",")
            ),
            None => println!("no rectangular x simple factorization"),
        }
    }
}
