//! Cosets, coset bijections, their composites, and AC-components.
//!
//! `cargo run --example coset_geometry`

use skewlat::construct::gen_xn;
use skewlat::coset::{ac_decomposition, compose_bijections, decompose, CosetAtlas};
use skewlat::order::Structure;

fn main() {
    let alg = gen_xn(2).unwrap();
    print!("{}", decompose(&alg).unwrap());

    let st = Structure::new(&alg).unwrap();
    let atlas = CosetAtlas::new(&st).unwrap();
    let [a, b, c] = st.three_chains()[0];
    let e = |s| alg.el(s);
    let phi = atlas.bijection_through(a, b, e("a1"), e("b1")).unwrap();
    let psi = atlas.bijection_through(b, c, e("b2"), e("c2")).unwrap();
    let full = atlas.bijection_through(a, c, e("a2"), e("c2")).unwrap();
    let composite = compose_bijections(psi, phi).unwrap();
    println!("{} then {} = {}", phi.display(&alg), psi.display(&alg), composite.display(&alg));
    println!("proper part of {}: {}", full.display(&alg), composite.is_subset_of(full) && composite.len() < full.len());

    let ac = ac_decomposition(&st, [a, b, c]).unwrap();
    println!("components {:?}", ac.components.iter().map(|x| alg.labels(x)).collect::<Vec<_>>());
    println!("AC-cosets {:?}", ac.ac_cosets.iter().map(|x| alg.labels(x)).collect::<Vec<_>>());
}
