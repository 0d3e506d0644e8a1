//! Natural order, Green's relations, handedness and the maximal images.
//!
//! `cargo run --example green_structure -- [n]`

use skewlat::construct::gen_xn;
use skewlat::order::{handedness, maximal_images, verify_pullback, Structure};

fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let alg = gen_xn(n).unwrap();
    let st = Structure::new(&alg).unwrap();

    for (name, p) in [("R", &st.green.r), ("L", &st.green.l), ("D", &st.green.d)] {
        let classes: Vec<String> = p.classes().iter().map(|c| format!("{{{}}}", alg.labels(c).join(","))).collect();
        println!("{name}: {}", classes.join(" "));
    }
    for (a, b) in st.strict_pairs() {
        println!("{} > {}", alg.name(a), alg.name(b));
    }
    println!("{:?}", handedness(&alg));

    let images = maximal_images(&alg).unwrap();
    for (name, q) in [("S/R", &images.s_over_r), ("S/L", &images.s_over_l), ("S/D", &images.s_over_d)] {
        println!("{name}: {}", q.names().join(" "));
    }
    println!("pullback: {}", verify_pullback(&alg));
}
