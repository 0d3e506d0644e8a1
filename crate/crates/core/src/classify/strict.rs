use crate::algebra::FiniteSkewLattice;
use crate::coset::compose_bijections;
use crate::error::Result;
use crate::order::{l_related, r_related};

use super::{first4, Analysis, CategoricalMode, StrictMode, Verdict};

pub(super) fn decide(an: &Analysis<'_>, mode: StrictMode) -> Result<Verdict> {
    Ok(match mode {
        StrictMode::Intersection => requires_categorical(an, intersection)?,
        StrictMode::MidpointOrder => unique_midpoints(an, false),
        StrictMode::MidpointWeak => unique_midpoints(an, true),
        StrictMode::ForbiddenFour => forbidden_four(an),
        StrictMode::Interval => intervals(an),
        StrictMode::Updown => updown(an),
        StrictMode::Identity => identity(an.alg()),
        StrictMode::UniqueFactorization => requires_categorical(an, unique_factorization)?,
    })
}

fn requires_categorical(an: &Analysis<'_>, then: fn(&Analysis<'_>) -> Result<Verdict>) -> Result<Verdict> {
    let cat = an.categorical(CategoricalMode::Structural)?;
    if !cat.holds {
        return Ok(cat);
    }
    then(an)
}

/// In every 3-chain, each A-coset in B meets each C-coset in B.
/// Witness: one element of each disjoint pair of cosets.
fn intersection(an: &Analysis<'_>) -> Result<Verdict> {
    for [p, q, r] in an.st.three_chains() {
        let a_cosets = &an.atlas.cosets(p, q).lower_cosets;
        let c_cosets = &an.atlas.cosets(q, r).upper_cosets;
        for xs in &a_cosets.sets {
            for ys in &c_cosets.sets {
                if !xs.iter().any(|x| ys.contains(x)) {
                    return Ok(Verdict::fail(vec![xs[0], ys[0]]));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// `x > y > z`, `x > y′ > z`, `y D y′` force `y = y′` (or with `≥` when
/// `weak`). Witness `(x, y, y′, z)`.
fn unique_midpoints(an: &Analysis<'_>, weak: bool) -> Verdict {
    let st = &an.st;
    let alg = an.alg();
    let rel = |x, y| if weak { st.orders.geq(x, y) } else { st.orders.gt(x, y) };
    for x in alg.elements() {
        for z in alg.elements().filter(|&z| rel(x, z)) {
            let between: Vec<usize> = alg.elements().filter(|&y| rel(x, y) && rel(y, z)).collect();
            for (i, &y) in between.iter().enumerate() {
                if let Some(&y2) = between[i + 1..].iter().find(|&&y2| st.class_of(y2) == st.class_of(y)) {
                    return Verdict::fail(vec![x, y, y2, z]);
                }
            }
        }
    }
    Verdict::pass()
}

/// No subalgebra `{a > b, b′ > c}` with `b ≠ b′` R- or L-related.
fn forbidden_four(an: &Analysis<'_>) -> Verdict {
    let st = &an.st;
    let alg = an.alg();
    let gt = |x, y| st.orders.gt(x, y);
    for (a, c) in st.strict_pairs() {
        let between: Vec<usize> = alg.elements().filter(|&y| gt(a, y) && gt(y, c)).collect();
        for (i, &b) in between.iter().enumerate() {
            for &b2 in &between[i + 1..] {
                if (r_related(alg, b, b2) || l_related(alg, b, b2)) && alg.is_closed(&[a, b, b2, c]) {
                    return Verdict::fail(vec![a, b, b2, c]);
                }
            }
        }
    }
    Verdict::pass()
}

/// Each `[a, b] = {x | a ≥ x ≥ b}` with `a > b` is a sublattice.
/// Witness `(a, b)` plus the offending pair.
fn intervals(an: &Analysis<'_>) -> Verdict {
    let st = &an.st;
    let alg = an.alg();
    for (a, b) in st.strict_pairs() {
        let interval: Vec<usize> =
            alg.elements().filter(|&x| st.orders.geq(a, x) && st.orders.geq(x, b)).collect();
        for &x in &interval {
            for &y in &interval {
                let (m, j) = (alg.meet(x, y), alg.join(x, y));
                if m != alg.meet(y, x) || j != alg.join(y, x) || !interval.contains(&m) || !interval.contains(&j) {
                    return Verdict::fail(vec![a, b, x, y]);
                }
            }
        }
    }
    Verdict::pass()
}

fn identity_on(elems: &[usize], f: impl Fn(usize, usize, usize, usize) -> bool) -> Option<[usize; 4]> {
    first4(elems.len(), |x, y, z, w| f(elems[x], elems[y], elems[z], elems[w]))
        .map(|t| t.map(|i| elems[i]))
}

/// `[a]↑` is a normal subalgebra and `[a]↓` a conormal one, for every `a`.
/// Witness `a` followed by the violating tuple.
fn updown(an: &Analysis<'_>) -> Verdict {
    let st = &an.st;
    let alg = an.alg();
    let (m, j) = (|x, y| alg.meet(x, y), |x, y| alg.join(x, y));
    for a in alg.elements() {
        let up: Vec<usize> = alg.elements().filter(|&x| st.orders.geq(x, a)).collect();
        let down: Vec<usize> = alg.elements().filter(|&x| st.orders.geq(a, x)).collect();
        if !alg.is_closed(&up) || !alg.is_closed(&down) {
            return Verdict::fail(vec![a]);
        }
        let normal = identity_on(&up, |x, y, z, w| m(m(m(x, y), z), w) != m(m(m(x, z), y), w));
        let conormal = || identity_on(&down, |x, y, z, w| j(j(j(x, y), z), w) != j(j(j(x, z), y), w));
        if let Some(t) = normal.or_else(conormal) {
            let mut w = vec![a];
            w.extend(t);
            return Verdict::fail(w);
        }
    }
    Verdict::pass()
}

/// `x∨(y∧z∧u∧y)∨x = x∨(y∧u∧z∧y)∨x`.
fn identity(alg: &FiniteSkewLattice) -> Verdict {
    let m = |x, y| alg.meet(x, y);
    Verdict::from_witness(first4(alg.len(), |x, y, z, u| {
        alg.join_sandwich(x, m(m(m(y, z), u), y)) != alg.join_sandwich(x, m(m(m(y, u), z), y))
    }))
}

/// Each coset bijection `A → C` of a 3-chain is `χ∘ψ` for exactly one pair
/// of coset bijections through `B`. Witness: the first pair of the bijection.
fn unique_factorization(an: &Analysis<'_>) -> Result<Verdict> {
    for [p, q, r] in an.st.three_chains() {
        for phi in an.atlas.bijections(p, r) {
            let mut count = 0;
            for psi in an.atlas.bijections(p, q) {
                for chi in an.atlas.bijections(q, r) {
                    if compose_bijections(chi, psi)?.pairs == phi.pairs {
                        count += 1;
                    }
                }
            }
            if count != 1 {
                let (a, c) = phi.pairs[0];
                return Ok(Verdict::fail(vec![a, c]));
            }
        }
    }
    Ok(Verdict::pass())
}

/// The conclusions on a strictly categorical chain `A > B > C`: all images
/// of each `a ∈ A` in B share one C-coset, all images of each `c ∈ C` share
/// one A-coset, and each `a > c` has exactly one `b` between them.
/// Returns the first element or pair where one fails.
pub fn chain_midpoint_witness(an: &Analysis<'_>, [p, q, r]: [usize; 3]) -> Option<Vec<usize>> {
    let st = &an.st;
    let alg = an.alg();
    let (a_cosets, c_cosets) = (&an.atlas.cosets(p, q).lower_cosets, &an.atlas.cosets(q, r).upper_cosets);
    let middle = st.class(q);
    for &a in st.class(p) {
        let first = c_cosets.coset_of(alg.meet_sandwich(a, middle[0]));
        if middle.iter().any(|&b| c_cosets.coset_of(alg.meet_sandwich(a, b)) != first) {
            return Some(vec![a]);
        }
    }
    for &c in st.class(r) {
        let first = a_cosets.coset_of(alg.join_sandwich(c, middle[0]));
        if middle.iter().any(|&b| a_cosets.coset_of(alg.join_sandwich(c, b)) != first) {
            return Some(vec![c]);
        }
    }
    for &a in st.class(p) {
        for &c in st.class(r) {
            if st.orders.gt(a, c) && middle.iter().filter(|&&b| st.orders.gt(a, b) && st.orders.gt(b, c)).count() != 1 {
                return Some(vec![a, c]);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gen_rectangular, gen_split_middle, gen_xn, Hand};

    fn all_modes(alg: &FiniteSkewLattice) -> Vec<bool> {
        let an = Analysis::new(alg).unwrap();
        StrictMode::ALL.iter().map(|&m| decide(&an, m).unwrap().holds).collect()
    }

    #[test]
    fn examples() {
        assert!(all_modes(&gen_rectangular(2, 3).unwrap()).iter().all(|&h| h));
        assert!(all_modes(&gen_xn(1).unwrap()).iter().all(|&h| h));
        assert!(all_modes(&gen_xn(2).unwrap()).iter().all(|&h| !h));
        for hand in [Hand::Left, Hand::Right] {
            assert!(all_modes(&gen_split_middle(hand)).iter().all(|&h| !h));
        }
    }
}
