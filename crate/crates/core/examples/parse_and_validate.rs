//! Parse a table, check the laws, and see what a broken table reports.
//!
//! `cargo run --example parse_and_validate`

use skewlat::construct::gen_xn;
use skewlat::format::{parse_algebra, serialize_algebra};
use skewlat::validate::validate;

fn main() {
    let text = serialize_algebra(&gen_xn(1).unwrap());
    print!("{text}");
    let alg = parse_algebra(&text).unwrap();
    print!("{}", validate(&alg));

    // meet = join = "first element": absorption fails
    let broken = parse_algebra("skewlat v1\nelements 2 e f\nmeet\ne e\ne e\njoin\ne e\ne e\n").unwrap();
    print!("{}", validate(&broken));

    match parse_algebra("skewlat v1\nelements 1 e\nmeet\nq\njoin\ne\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error: {e}"),
    }
}
