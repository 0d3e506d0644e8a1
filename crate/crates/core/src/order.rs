//! Natural preorder and partial order, Green's relations, handedness and the
//! two decomposition theorems.
//!
//! Everything here assumes an algebra that passed [`crate::validate::validate`]. The
//! redundant computations (two definitional forms of each order, two routes
//! to `D`) are compared and any disagreement is an internal error.

use crate::algebra::{quotient_by, FiniteSkewLattice};
use crate::error::{Result, SklError};
use crate::partition::EquivPartition;

/// Natural preorder `⪰` and natural partial order `≥` as dense boolean matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRelations {
    n: usize,
    preorder: Vec<bool>,
    order: Vec<bool>,
}

impl OrderRelations {
    /// `x ⪰ y`
    #[inline]
    pub fn pgeq(&self, x: usize, y: usize) -> bool {
        self.preorder[x * self.n + y]
    }

    /// `x ≻ y`: `x ⪰ y` but not `y ⪰ x`.
    #[inline]
    pub fn succ(&self, x: usize, y: usize) -> bool {
        self.pgeq(x, y) && !self.pgeq(y, x)
    }

    /// `x ≥ y`
    #[inline]
    pub fn geq(&self, x: usize, y: usize) -> bool {
        self.order[x * self.n + y]
    }

    /// `x > y`
    #[inline]
    pub fn gt(&self, x: usize, y: usize) -> bool {
        x != y && self.geq(x, y)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Computes both orders, evaluating the `∨`-form and the `∧`-form of each
/// definition and requiring them to agree.
pub fn compute_orders(alg: &FiniteSkewLattice) -> Result<OrderRelations> {
    let n = alg.len();
    let mut preorder = vec![false; n * n];
    let mut order = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            let pre_join = alg.join_sandwich(x, y) == x;
            let pre_meet = alg.meet_sandwich(y, x) == y;
            if pre_join != pre_meet {
                return Err(SklError::internal(format!(
                    "preorder forms disagree at ({}, {})",
                    alg.name(x),
                    alg.name(y)
                )));
            }
            let ord_join = alg.join(x, y) == x && alg.join(y, x) == x;
            let ord_meet = alg.meet(x, y) == y && alg.meet(y, x) == y;
            if ord_join != ord_meet {
                return Err(SklError::internal(format!(
                    "partial order forms disagree at ({}, {})",
                    alg.name(x),
                    alg.name(y)
                )));
            }
            preorder[x * n + y] = pre_join;
            order[x * n + y] = ord_join;
        }
    }
    Ok(OrderRelations { n, preorder, order })
}

/// Green's relations as partitions of the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenPartitions {
    pub r: EquivPartition,
    pub l: EquivPartition,
    pub d: EquivPartition,
}

/// `x R y  ⇔  x∧y = y & y∧x = x`
pub fn r_related(alg: &FiniteSkewLattice, x: usize, y: usize) -> bool {
    alg.meet(x, y) == y && alg.meet(y, x) == x
}

/// `x L y  ⇔  x∧y = x & y∧x = y`
pub fn l_related(alg: &FiniteSkewLattice, x: usize, y: usize) -> bool {
    alg.meet(x, y) == x && alg.meet(y, x) == y
}

/// `x D y  ⇔  x∧y∧x = x & y∧x∧y = y`
pub fn d_related(alg: &FiniteSkewLattice, x: usize, y: usize) -> bool {
    alg.meet_sandwich(x, y) == x && alg.meet_sandwich(y, x) == y
}

fn congruence_witness(alg: &FiniteSkewLattice, p: &EquivPartition) -> Option<(usize, usize)> {
    for x in alg.elements() {
        let r = p.representative(p.class_of(x));
        for y in alg.elements() {
            if !p.same(alg.meet(x, y), alg.meet(r, y))
                || !p.same(alg.meet(y, x), alg.meet(y, r))
                || !p.same(alg.join(x, y), alg.join(r, y))
                || !p.same(alg.join(y, x), alg.join(y, r))
            {
                return Some((x, y));
            }
        }
    }
    None
}

/// Computes `R`, `L`, `D` from their defining equivalences and verifies:
/// each is an equivalence and a congruence, `R ∩ L` is the identity,
/// `D = R∘L = L∘R`, `D` agrees with `⪰ ∩ ⪯`, and every `D`-class is rectangular.
pub fn green_partitions(alg: &FiniteSkewLattice) -> Result<GreenPartitions> {
    let orders = compute_orders(alg)?;
    green_with_orders(alg, &orders)
}

pub(crate) fn green_with_orders(alg: &FiniteSkewLattice, orders: &OrderRelations) -> Result<GreenPartitions> {
    let n = alg.len();
    let name = |x: usize| alg.name(x).to_string();
    let mut parts = Vec::with_capacity(3);
    for (label, rel) in [
        ("R", r_related as fn(&FiniteSkewLattice, usize, usize) -> bool),
        ("L", l_related),
        ("D", d_related),
    ] {
        let p = EquivPartition::from_relation(n, |x, y| rel(alg, x, y));
        if let Some((x, y)) = p.agrees_with(|x, y| rel(alg, x, y)) {
            return Err(SklError::internal(format!(
                "{label} is not an equivalence at ({}, {})",
                name(x),
                name(y)
            )));
        }
        if let Some((x, y)) = congruence_witness(alg, &p) {
            return Err(SklError::internal(format!(
                "{label} is not a congruence at ({}, {})",
                name(x),
                name(y)
            )));
        }
        parts.push(p);
    }
    let d = parts.pop().unwrap();
    let l = parts.pop().unwrap();
    let r = parts.pop().unwrap();

    if let Some((x, y)) = d.agrees_with(|x, y| orders.pgeq(x, y) && orders.pgeq(y, x)) {
        return Err(SklError::internal(format!(
            "D differs from the preorder equivalence at ({}, {})",
            name(x),
            name(y)
        )));
    }
    if !r.meet(&l).is_identity() {
        return Err(SklError::internal("R ∩ L is not the identity"));
    }
    for class in d.classes() {
        for &x in class {
            for &y in class {
                let rl = class.iter().any(|&z| r.same(x, z) && l.same(z, y));
                let lr = class.iter().any(|&z| l.same(x, z) && r.same(z, y));
                if !rl || !lr {
                    return Err(SklError::internal(format!(
                        "D ≠ R∘L at ({}, {})",
                        name(x),
                        name(y)
                    )));
                }
                if alg.meet_sandwich(x, y) != x {
                    return Err(SklError::internal(format!(
                        "D-class of {} is not rectangular",
                        name(x)
                    )));
                }
            }
        }
    }
    Ok(GreenPartitions { r, l, d })
}

/// Handedness flags, each checked independently from its own identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
pub struct Handedness {
    /// `x∧y∧x = x`
    pub rectangular: bool,
    /// `x∧y∧x = x∧y` and `x∨y∨x = y∨x`
    pub left_handed: bool,
    /// `x∧y∧x = y∧x` and `x∨y∨x = x∨y`
    pub right_handed: bool,
}

pub fn handedness(alg: &FiniteSkewLattice) -> Handedness {
    let pairs = || alg.elements().flat_map(|x| alg.elements().map(move |y| (x, y)));
    Handedness {
        rectangular: pairs().all(|(x, y)| alg.meet_sandwich(x, y) == x),
        left_handed: pairs().all(|(x, y)| {
            alg.meet_sandwich(x, y) == alg.meet(x, y) && alg.join_sandwich(x, y) == alg.join(y, x)
        }),
        right_handed: pairs().all(|(x, y)| {
            alg.meet_sandwich(x, y) == alg.meet(y, x) && alg.join_sandwich(x, y) == alg.join(x, y)
        }),
    }
}

/// The left-handed variant identity: `x ⪰ x′ ⇒ x′∧y∧x = x′∧y and x′∨y∨x = y∨x′`.
/// Returns the first violating `(x, x′, y)`.
pub fn lh_variant_witness(alg: &FiniteSkewLattice, orders: &OrderRelations) -> Option<[usize; 3]> {
    for x in alg.elements() {
        for xp in alg.elements().filter(|&xp| orders.pgeq(x, xp)) {
            for y in alg.elements() {
                if alg.meet(alg.meet(xp, y), x) != alg.meet(xp, y)
                    || alg.join(alg.join(xp, y), x) != alg.join(y, xp)
                {
                    return Some([x, xp, y]);
                }
            }
        }
    }
    None
}

/// The right-handed variant identity: `x ⪰ x′ ⇒ x∧y∧x′ = y∧x′ and x∨y∨x′ = x∨y`.
pub fn rh_variant_witness(alg: &FiniteSkewLattice, orders: &OrderRelations) -> Option<[usize; 3]> {
    for x in alg.elements() {
        for xp in alg.elements().filter(|&xp| orders.pgeq(x, xp)) {
            for y in alg.elements() {
                if alg.meet(alg.meet(x, y), xp) != alg.meet(y, xp)
                    || alg.join(alg.join(x, y), xp) != alg.join(x, y)
                {
                    return Some([x, xp, y]);
                }
            }
        }
    }
    None
}

/// The images `S/R`, `S/L`, `S/D`.
#[derive(Clone, Debug)]
pub struct MaximalImages {
    pub s_over_r: FiniteSkewLattice,
    pub s_over_l: FiniteSkewLattice,
    pub s_over_d: FiniteSkewLattice,
}

/// Quotients by `R`, `L` and `D`, verifying that they are left-handed,
/// right-handed and a lattice respectively.
pub fn maximal_images(alg: &FiniteSkewLattice) -> Result<MaximalImages> {
    let g = green_partitions(alg)?;
    let images = MaximalImages {
        s_over_r: quotient_by(alg, &g.r)?,
        s_over_l: quotient_by(alg, &g.l)?,
        s_over_d: quotient_by(alg, &g.d)?,
    };
    if !handedness(&images.s_over_r).left_handed {
        return Err(SklError::internal("S/R is not left-handed"));
    }
    if !handedness(&images.s_over_l).right_handed {
        return Err(SklError::internal("S/L is not right-handed"));
    }
    if !images.s_over_d.is_commutative() {
        return Err(SklError::internal("S/D is not commutative"));
    }
    Ok(images)
}

/// Checks that `x ↦ (R_x, L_x)` is an isomorphism of `S` onto the fibred
/// product of `S/R` and `S/L` over `S/D`.
pub fn verify_pullback(alg: &FiniteSkewLattice) -> bool {
    let Ok(g) = green_partitions(alg) else {
        return false;
    };
    let (Ok(sr), Ok(sl)) = (quotient_by(alg, &g.r), quotient_by(alg, &g.l)) else {
        return false;
    };
    // D-class of each R-class and L-class
    let d_of_r: Vec<usize> = (0..g.r.num_classes()).map(|c| g.d.class_of(g.r.representative(c))).collect();
    let d_of_l: Vec<usize> = (0..g.l.num_classes()).map(|c| g.d.class_of(g.l.representative(c))).collect();

    // fibred product carrier, indexed densely
    let mut index = vec![usize::MAX; sr.len() * sl.len()];
    let mut pairs = Vec::new();
    for r in 0..sr.len() {
        for l in 0..sl.len() {
            if d_of_r[r] == d_of_l[l] {
                index[r * sl.len() + l] = pairs.len();
                pairs.push((r, l));
            }
        }
    }
    if pairs.len() != alg.len() {
        return false;
    }
    let phi: Vec<usize> = alg
        .elements()
        .map(|x| index[g.r.class_of(x) * sl.len() + g.l.class_of(x)])
        .collect();
    let mut hit = vec![false; pairs.len()];
    for &p in &phi {
        if p == usize::MAX || std::mem::replace(&mut hit[p], true) {
            return false;
        }
    }
    for x in alg.elements() {
        for y in alg.elements() {
            let ((rx, lx), (ry, ly)) = (pairs[phi[x]], pairs[phi[y]]);
            let m = (sr.meet(rx, ry), sl.meet(lx, ly));
            let j = (sr.join(rx, ry), sl.join(lx, ly));
            if pairs[phi[alg.meet(x, y)]] != m || pairs[phi[alg.join(x, y)]] != j {
                return false;
            }
        }
    }
    true
}

/// Orders, Green's relations and the order of `S/D`, computed once and shared
/// by the coset and classification layers.
#[derive(Clone, Debug)]
pub struct Structure<'a> {
    pub alg: &'a FiniteSkewLattice,
    pub orders: OrderRelations,
    pub green: GreenPartitions,
    /// `class_above[p * k + q]`: D-class `p` strictly above D-class `q` in `S/D`.
    class_above: Vec<bool>,
}

impl<'a> Structure<'a> {
    pub fn new(alg: &'a FiniteSkewLattice) -> Result<Self> {
        let orders = compute_orders(alg)?;
        let green = green_with_orders(alg, &orders)?;
        let k = green.d.num_classes();
        let mut class_above = vec![false; k * k];
        for p in 0..k {
            for q in 0..k {
                let (x, y) = (green.d.representative(p), green.d.representative(q));
                class_above[p * k + q] = p != q && orders.pgeq(x, y);
            }
        }
        Ok(Structure { alg, orders, green, class_above })
    }

    pub fn num_classes(&self) -> usize {
        self.green.d.num_classes()
    }

    pub fn class(&self, id: usize) -> &[usize] {
        self.green.d.class(id)
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.green.d.class_of(x)
    }

    /// D-class `p` strictly above `q`.
    pub fn class_above(&self, p: usize, q: usize) -> bool {
        self.class_above[p * self.num_classes() + q]
    }

    /// All comparable pairs `(upper, lower)` of D-classes.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.num_classes();
        (0..k)
            .flat_map(|p| (0..k).map(move |q| (p, q)))
            .filter(|&(p, q)| self.class_above(p, q))
            .collect()
    }

    /// All descending triples of D-classes `A > B > C`.
    pub fn three_chains(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (a, b) in self.comparable_pairs() {
            for c in 0..self.num_classes() {
                if self.class_above(b, c) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    /// Hasse covering pairs of `S/D`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.comparable_pairs()
            .into_iter()
            .filter(|&(p, q)| {
                !(0..self.num_classes()).any(|m| self.class_above(p, m) && self.class_above(m, q))
            })
            .collect()
    }

    /// Every strictly ordered pair `a > b`, in index order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let alg = self.alg;
        alg.elements()
            .flat_map(|a| alg.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| self.orders.gt(a, b))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(p: usize, q: usize) -> FiniteSkewLattice {
        let names = (0..p * q).map(|i| format!("r{}_{}", i / q, i % q)).collect();
        FiniteSkewLattice::from_fn(
            names,
            |x, y| (x / q) * q + y % q,
            |x, y| (y / q) * q + x % q,
        )
    }

    #[test]
    fn rectangular_orders() {
        let r = rect(2, 2);
        let o = compute_orders(&r).unwrap();
        for x in r.elements() {
            for y in r.elements() {
                assert!(o.pgeq(x, y));
                assert_eq!(o.geq(x, y), x == y);
            }
        }
        let g = green_partitions(&r).unwrap();
        assert_eq!(g.d.num_classes(), 1);
        assert_eq!(g.r.num_classes(), 2);
        assert_eq!(g.l.num_classes(), 2);
        assert!(handedness(&r).rectangular);
        assert!(verify_pullback(&r));
    }

    #[test]
    fn chain_green_is_trivial() {
        let c = FiniteSkewLattice::from_fn((0..4).map(|i| format!("e{i}")).collect(), usize::min, usize::max);
        let g = green_partitions(&c).unwrap();
        assert!(g.d.is_identity() && g.r.is_identity() && g.l.is_identity());
        let h = handedness(&c);
        assert!(h.left_handed && h.right_handed && !h.rectangular);
        let st = Structure::new(&c).unwrap();
        assert_eq!(st.three_chains().len(), 4);
        assert_eq!(st.hasse_edges().len(), 3);
    }
}
