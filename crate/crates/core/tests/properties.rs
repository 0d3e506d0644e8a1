use proptest::prelude::*;

use skewlat::algebra::{direct_product_with_limit, subalgebra_closure, FiniteSkewLattice};
use skewlat::classify::{classify_report, find_forbidden};
use skewlat::construct::{gen_chain, gen_partial_functions, gen_rectangular, gen_twisted_primitive, gen_xn, gen_yn};
use skewlat::format::{parse_algebra, serialize_algebra};
use skewlat::order::{handedness, maximal_images, verify_pullback, Structure};
use skewlat::validate::validate;

/// A small building block, chosen by index.
fn block(i: usize) -> FiniteSkewLattice {
    match i % 10 {
        0 => gen_chain(2).unwrap(),
        1 => gen_chain(3).unwrap(),
        2 => gen_rectangular(1, 2).unwrap(),
        3 => gen_rectangular(2, 1).unwrap(),
        4 => gen_rectangular(2, 2).unwrap(),
        5 => gen_xn(1).unwrap(),
        6 => gen_xn(2).unwrap(),
        7 => gen_yn(2).unwrap(),
        8 => gen_partial_functions(1, 2).unwrap(),
        _ => gen_twisted_primitive(),
    }
}

fn algebra() -> impl Strategy<Value = FiniteSkewLattice> {
    prop_oneof![
        (1usize..6).prop_map(|k| gen_chain(k).unwrap()),
        (1usize..4, 1usize..4).prop_map(|(p, q)| gen_rectangular(p, q).unwrap()),
        (0usize..10).prop_map(block),
        (0usize..10, 0usize..10).prop_filter_map("too large", |(i, j)| direct_product_with_limit(&block(i), &block(j), 40).ok()),
    ]
}

/// An algebra together with a nonempty seed of element indices.
fn algebra_with_seed() -> impl Strategy<Value = (FiniteSkewLattice, Vec<usize>)> {
    algebra().prop_flat_map(|a| {
        let n = a.len();
        (Just(a), prop::collection::vec(0..n, 1..4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_algebras_validate(a in algebra()) {
        prop_assert!(validate(&a).ok);
        prop_assert!(validate(&a.mirror()).ok);
        prop_assert!(validate(&a.dual()).ok);
    }

    #[test]
    fn format_round_trips(a in algebra()) {
        let text = serialize_algebra(&a);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(serialize_algebra(&back), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn decomposition_theorems(a in algebra()) {
        let st = Structure::new(&a).unwrap();
        for x in a.elements() {
            for y in a.elements() {
                let d = st.orders.pgeq(x, y) && st.orders.pgeq(y, x);
                prop_assert_eq!(d, st.class_of(x) == st.class_of(y));
                prop_assert!(!st.orders.geq(x, y) || st.orders.pgeq(x, y));
                if d {
                    prop_assert_eq!(a.meet_sandwich(x, y), x);
                }
            }
        }
        let images = maximal_images(&a).unwrap();
        prop_assert!(images.s_over_d.is_commutative());
        prop_assert!(handedness(&images.s_over_r).left_handed);
        prop_assert!(handedness(&images.s_over_l).right_handed);
        prop_assert!(verify_pullback(&a));
    }

    #[test]
    fn closure_is_a_closure_operator((a, seed) in algebra_with_seed()) {
        let c = subalgebra_closure(&a, &seed);
        prop_assert!(seed.iter().all(|x| c.contains(x)));
        prop_assert!(a.is_closed(&c));
        prop_assert_eq!(subalgebra_closure(&a, &c), c.clone());
        let mut bigger = seed.clone();
        bigger.push(0);
        let cb = subalgebra_closure(&a, &bigger);
        prop_assert!(c.iter().all(|x| cb.contains(x)));
    }

    #[test]
    fn modes_agree_on_products_and_closures((a, seed) in algebra_with_seed()) {
        let sub = a.induced(&subalgebra_closure(&a, &seed)).unwrap();
        for alg in [&a, &sub] {
            let r = classify_report(alg).unwrap();
            prop_assert!(r.all_agree(), "{}", r);
            let w = find_forbidden(alg).unwrap();
            prop_assert_eq!(w.is_some(), !r.property("categorical"));
        }
    }

    #[test]
    fn mirror_swaps_hands(a in algebra()) {
        let (h, m) = (handedness(&a), handedness(&a.mirror()));
        prop_assert_eq!(h.left_handed, m.right_handed);
        prop_assert_eq!(h.right_handed, m.left_handed);
        let (r, rm) = (classify_report(&a).unwrap(), classify_report(&a.mirror()).unwrap());
        prop_assert_eq!(r.property("categorical"), rm.property("categorical"));
        prop_assert_eq!(r.property("order_closed"), rm.property("order_closed"));
    }
}
