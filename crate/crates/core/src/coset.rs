//! Coset geometry between comparable D-classes: cosets, coset bijections,
//! parallel pairs, AC-components, reflective chains and their factorization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::algebra::{check_embedding, direct_product_with_limit, ElementMap, FiniteSkewLattice};
use crate::construct::gen_chain;
use crate::error::{Result, SklError};
use crate::order::Structure;

const NONE: usize = usize::MAX;

/// A descending family of D-classes `A > B (> C)`, by D-class id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewChain {
    classes: Vec<usize>,
}

impl SkewChain {
    /// Checks that consecutive classes are strictly descending in `S/D`.
    pub fn new(st: &Structure<'_>, classes: Vec<usize>) -> Result<Self> {
        if classes.len() < 2 || classes.iter().any(|&c| c >= st.num_classes()) {
            return Err(SklError::Partition("a skew chain needs two or more valid D-classes".into()));
        }
        if classes.windows(2).any(|w| !st.class_above(w[0], w[1])) {
            return Err(SklError::Partition("D-classes are not strictly descending".into()));
        }
        Ok(SkewChain { classes })
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    /// Carrier of the chain: the union of its classes, sorted.
    pub fn elements(&self, st: &Structure<'_>) -> Vec<usize> {
        let mut v: Vec<usize> = self.classes.iter().flat_map(|&c| st.class(c).iter().copied()).collect();
        v.sort_unstable();
        v
    }
}

/// A partition of one D-class into cosets, with per-element lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cosets {
    pub sets: Vec<Vec<usize>>,
    of: Vec<usize>,
}

impl Cosets {
    pub fn coset_of(&self, x: usize) -> Option<usize> {
        self.of.get(x).copied().filter(|&c| c != NONE)
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        matches!((self.coset_of(x), self.coset_of(y)), (Some(a), Some(b)) if a == b)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn build(n: usize, class: &[usize], coset: impl Fn(usize) -> Vec<usize>, what: &str) -> Result<Self> {
        let mut of = vec![NONE; n];
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for &x in class {
            let set = coset(x);
            if set.binary_search(&x).is_err() {
                return Err(SklError::internal(format!("element {x} is missing from its own {what}")));
            }
            match of[x] {
                NONE => {
                    if set.iter().any(|&y| of[y] != NONE) {
                        return Err(SklError::internal(format!("{what}s overlap without coinciding")));
                    }
                    for &y in &set {
                        of[y] = sets.len();
                    }
                    sets.push(set);
                }
                id if sets[id] != set => {
                    return Err(SklError::internal(format!("{what}s overlap without coinciding")));
                }
                _ => {}
            }
        }
        Ok(Cosets { sets, of })
    }
}

/// Cosets of a comparable pair `A > B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    pub upper: usize,
    pub lower: usize,
    /// B-cosets in A: `B∨a∨B`.
    pub upper_cosets: Cosets,
    /// A-cosets in B: `A∧b∧A`.
    pub lower_cosets: Cosets,
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Computes both coset partitions of `A > B` with the one-variable forms
/// `{a∧b∧a | a∈A}` and `{b∨a∨b | b∈B}`, and verifies that they partition
/// their classes, share one cardinality, and are rectangular subalgebras.
pub fn coset_partitions(st: &Structure<'_>, upper: usize, lower: usize) -> Result<CosetPartition> {
    if !st.class_above(upper, lower) {
        return Err(SklError::Partition(format!("D-class {upper} is not above D-class {lower}")));
    }
    let alg = st.alg;
    let (a_class, b_class) = (st.class(upper), st.class(lower));
    let lower_cosets = Cosets::build(
        alg.len(),
        b_class,
        |b| sorted(a_class.iter().map(|&a| alg.meet_sandwich(a, b)).collect()),
        "A-coset",
    )?;
    let upper_cosets = Cosets::build(
        alg.len(),
        a_class,
        |a| sorted(b_class.iter().map(|&b| alg.join_sandwich(b, a)).collect()),
        "B-coset",
    )?;
    let size = upper_cosets.sets[0].len();
    if upper_cosets.sets.iter().chain(&lower_cosets.sets).any(|c| c.len() != size) {
        return Err(SklError::internal("cosets of a comparable pair differ in size"));
    }
    for coset in upper_cosets.sets.iter().chain(&lower_cosets.sets) {
        if !alg.is_closed(coset) || coset.iter().any(|&x| coset.iter().any(|&y| alg.meet_sandwich(x, y) != x)) {
            return Err(SklError::internal("a coset is not a rectangular subalgebra"));
        }
    }
    Ok(CosetPartition { upper, lower, upper_cosets, lower_cosets })
}

/// Recomputes the cosets with the two-variable forms `{a∧b∧a′}` and
/// `{b∨a∨b′}`; returns an element whose coset differs, if any.
pub fn two_variable_form_witness(st: &Structure<'_>, cp: &CosetPartition) -> Option<usize> {
    let alg = st.alg;
    let (a_class, b_class) = (st.class(cp.upper), st.class(cp.lower));
    for &b in b_class {
        let two = sorted(
            a_class
                .iter()
                .flat_map(|&a| a_class.iter().map(move |&a2| alg.meet(alg.meet(a, b), a2)))
                .collect(),
        );
        if two != cp.lower_cosets.sets[cp.lower_cosets.coset_of(b).unwrap()] {
            return Some(b);
        }
    }
    for &a in a_class {
        let two = sorted(
            b_class
                .iter()
                .flat_map(|&b| b_class.iter().map(move |&b2| alg.join(alg.join(b, a), b2)))
                .collect(),
        );
        if two != cp.upper_cosets.sets[cp.upper_cosets.coset_of(a).unwrap()] {
            return Some(a);
        }
    }
    None
}

/// A partial injective map between two D-classes, stored as sorted pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    pub source_class: usize,
    pub target_class: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl PartialBijection {
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&x, |&(s, _)| s)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(s, _)| s).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        sorted(self.pairs.iter().map(|&(_, t)| t).collect())
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.apply(pair.0) == Some(pair.1)
    }

    pub fn is_subset_of(&self, other: &PartialBijection) -> bool {
        self.pairs.iter().all(|&p| other.contains(p))
    }

    pub fn display(&self, alg: &FiniteSkewLattice) -> String {
        let body: Vec<String> = self
            .pairs
            .iter()
            .map(|&(s, t)| format!("{}->{}", alg.name(s), alg.name(t)))
            .collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// The coset bijections of `A > B`, one per (B-coset in A, A-coset in B)
/// pair, ordered by upper coset then lower coset. Each is `a ↦ a∧y∧a` and is
/// verified to be independent of `y`, strictly order-decreasing, a bijection
/// onto its coset, an isomorphism of the cosets, inverted by `b ↦ b∨x∨b`,
/// and to coincide with the restriction of `>` to the two cosets.
pub fn coset_bijections(st: &Structure<'_>, cp: &CosetPartition) -> Result<Vec<PartialBijection>> {
    let alg = st.alg;
    let mut out = Vec::with_capacity(cp.upper_cosets.len() * cp.lower_cosets.len());
    for xs in &cp.upper_cosets.sets {
        for ys in &cp.lower_cosets.sets {
            let mut pairs = Vec::with_capacity(xs.len());
            for &a in xs {
                let b = alg.meet_sandwich(a, ys[0]);
                if ys.iter().any(|&y| alg.meet_sandwich(a, y) != b) || !st.orders.gt(a, b) {
                    return Err(SklError::internal(format!("coset map of {} is ill-defined", alg.name(a))));
                }
                if xs.iter().any(|&x| alg.join_sandwich(b, x) != a) {
                    return Err(SklError::internal(format!("coset map is not inverted at {}", alg.name(b))));
                }
                pairs.push((a, b));
            }
            let phi = PartialBijection { source_class: cp.upper, target_class: cp.lower, pairs };
            if phi.image() != *ys {
                return Err(SklError::internal("coset map is not onto its coset"));
            }
            for &a in xs {
                for &b in ys {
                    if st.orders.gt(a, b) != phi.contains((a, b)) {
                        return Err(SklError::internal("coset map differs from the natural order"));
                    }
                }
            }
            for &a in xs {
                for &a2 in xs {
                    let (fa, fa2) = (phi.apply(a).unwrap(), phi.apply(a2).unwrap());
                    if phi.apply(alg.meet(a, a2)) != Some(alg.meet(fa, fa2))
                        || phi.apply(alg.join(a, a2)) != Some(alg.join(fa, fa2))
                    {
                        return Err(SklError::internal("coset map is not an isomorphism"));
                    }
                }
            }
            out.push(phi);
        }
    }
    Ok(out)
}

/// Relational composite `psi ∘ phi`; may be empty.
pub fn compose_bijections(psi: &PartialBijection, phi: &PartialBijection) -> Result<PartialBijection> {
    if phi.target_class != psi.source_class {
        return Err(SklError::ClassMismatch { target: phi.target_class, next: psi.source_class });
    }
    let pairs = phi
        .pairs
        .iter()
        .filter_map(|&(a, b)| psi.apply(b).map(|c| (a, c)))
        .collect();
    Ok(PartialBijection { source_class: phi.source_class, target_class: psi.target_class, pairs })
}

/// `a > b ∥ a′ > b′`: `a D a′`, `b D b′`, `a′ = b′∨a∨b′` and `b′ = a′∧b∧a′`.
///
/// The symmetric conditions `a = b∨a′∨b` and `b = a∧b′∧a` are evaluated too
/// and must agree.
pub fn are_parallel(st: &Structure<'_>, p1: (usize, usize), p2: (usize, usize)) -> Result<bool> {
    let alg = st.alg;
    for (a, b) in [p1, p2] {
        if !st.orders.gt(a, b) {
            return Err(SklError::NotStrictlyOrdered { upper: alg.name(a).into(), lower: alg.name(b).into() });
        }
    }
    let ((a, b), (a2, b2)) = (p1, p2);
    if st.class_of(a) != st.class_of(a2) || st.class_of(b) != st.class_of(b2) {
        return Ok(false);
    }
    let forward = alg.join_sandwich(b2, a) == a2 && alg.meet_sandwich(a2, b) == b2;
    let backward = alg.join_sandwich(b, a2) == a && alg.meet_sandwich(a, b2) == b;
    if forward != backward {
        return Err(SklError::internal(format!(
            "parallelism is not symmetric for {}>{} and {}>{}",
            alg.name(a),
            alg.name(b),
            alg.name(a2),
            alg.name(b2)
        )));
    }
    Ok(forward)
}

/// Coset partitions and coset bijections for every comparable pair of D-classes.
#[derive(Clone, Debug)]
pub struct CosetAtlas {
    entries: HashMap<(usize, usize), (CosetPartition, Vec<PartialBijection>)>,
}

impl CosetAtlas {
    pub fn new(st: &Structure<'_>) -> Result<Self> {
        let mut entries = HashMap::new();
        for (p, q) in st.comparable_pairs() {
            let cp = coset_partitions(st, p, q)?;
            let bij = coset_bijections(st, &cp)?;
            entries.insert((p, q), (cp, bij));
        }
        Ok(CosetAtlas { entries })
    }

    pub fn cosets(&self, upper: usize, lower: usize) -> &CosetPartition {
        &self.entries[&(upper, lower)].0
    }

    pub fn bijections(&self, upper: usize, lower: usize) -> &[PartialBijection] {
        &self.entries[&(upper, lower)].1
    }

    /// The coset bijection of `upper > lower` containing the strict pair `(a, b)`.
    pub fn bijection_through(&self, upper: usize, lower: usize, a: usize, b: usize) -> Option<&PartialBijection> {
        self.bijections(upper, lower).iter().find(|phi| phi.contains((a, b)))
    }
}

/// Equivalence classes of `∥` over all strict pairs.
#[derive(Clone, Debug)]
pub struct ParallelClasses {
    pub classes: Vec<Vec<(usize, usize)>>,
    class_of: HashMap<(usize, usize), usize>,
}

impl ParallelClasses {
    pub fn class_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.class_of.get(&pair).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Groups all strict pairs `a > b` by parallelism and verifies that `∥` is an
/// equivalence whose classes are exactly the coset bijections, together with:
/// (i) within a class `a = a′ ⇔ b = b′`; (ii) stacked parallel pairs compose
/// to parallel pairs; (iii) `a ≻ b` gives `a > a∧b∧a ∥ b∨a∨b > b`.
pub fn parallel_classes(st: &Structure<'_>) -> Result<ParallelClasses> {
    let pc = group_parallel(st)?;
    let atlas = CosetAtlas::new(st)?;
    check_parallel_classes(st, &atlas, &pc)?;
    Ok(pc)
}

pub(crate) fn group_parallel(st: &Structure<'_>) -> Result<ParallelClasses> {
    let pairs = st.strict_pairs();
    let mut class_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for &p in &pairs {
        if class_of.contains_key(&p) {
            continue;
        }
        let id = classes.len();
        let mut class = Vec::new();
        for &q in &pairs {
            if !class_of.contains_key(&q) && are_parallel(st, p, q)? {
                class_of.insert(q, id);
                class.push(q);
            }
        }
        classes.push(class);
    }
    // equivalence: membership must match the relation on every pair of pairs
    for &p in &pairs {
        for &q in &pairs {
            if (class_of[&p] == class_of[&q]) != are_parallel(st, p, q)? {
                return Err(SklError::internal("parallelism is not an equivalence"));
            }
        }
    }
    Ok(ParallelClasses { classes, class_of })
}

pub(crate) fn check_parallel_classes(st: &Structure<'_>, atlas: &CosetAtlas, pc: &ParallelClasses) -> Result<()> {
    let alg = st.alg;
    let mut bijection_sets: Vec<Vec<(usize, usize)>> = st
        .comparable_pairs()
        .into_iter()
        .flat_map(|(p, q)| atlas.bijections(p, q).iter().map(|phi| phi.pairs.clone()))
        .collect();
    let mut class_sets: Vec<Vec<(usize, usize)>> = pc.classes.iter().map(|c| sorted_pairs(c.clone())).collect();
    bijection_sets.sort();
    class_sets.sort();
    if bijection_sets != class_sets {
        return Err(SklError::internal("parallel classes differ from coset bijections"));
    }
    for class in &pc.classes {
        for &(a, b) in class {
            for &(a2, b2) in class {
                if (a == a2) != (b == b2) {
                    return Err(SklError::internal("parallel class is not a bijection"));
                }
            }
        }
    }
    // (ii): a>b ∥ a′>b′ and b>c ∥ b′>c′ give a>c ∥ a′>c′
    let pairs = st.strict_pairs();
    for &(a, b) in &pairs {
        for &(b_, c) in &pairs {
            if b_ != b {
                continue;
            }
            let (upper, lower) = (pc.class_of((a, b)).unwrap(), pc.class_of((b, c)).unwrap());
            for &(a2, b2) in &pc.classes[upper] {
                for &(b2_, c2) in &pc.classes[lower] {
                    if b2_ == b2 && !are_parallel(st, (a, c), (a2, c2))? {
                        return Err(SklError::internal("stacked parallel pairs do not compose"));
                    }
                }
            }
        }
    }
    // (iii)
    for a in alg.elements() {
        for b in alg.elements() {
            if st.orders.succ(a, b) {
                let lo = alg.meet_sandwich(a, b);
                let hi = alg.join_sandwich(b, a);
                if !st.orders.gt(a, lo) || !st.orders.gt(hi, b) || !are_parallel(st, (a, lo), (hi, b))? {
                    return Err(SklError::internal(format!(
                        "a > a∧b∧a ∥ b∨a∨b > b fails for a={}, b={}",
                        alg.name(a),
                        alg.name(b)
                    )));
                }
            }
        }
    }
    Ok(())
}

fn sorted_pairs(mut v: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    v.sort_unstable();
    v
}

/// AC-structure of the middle class of `A > B > C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACDecomposition {
    /// Classes of `B` under the transitive closure of `−_A ∪ −_C`.
    pub components: Vec<Vec<usize>>,
    /// Nonempty intersections of an A-coset and a C-coset in `B`.
    pub ac_cosets: Vec<Vec<usize>>,
}

/// Components by union-find over shared A-cosets and C-cosets; classes are
/// ordered by least element.
pub fn ac_decomposition(st: &Structure<'_>, chain: [usize; 3]) -> Result<ACDecomposition> {
    let [a, b, c] = chain;
    SkewChain::new(st, chain.to_vec())?;
    let a_cosets = coset_partitions(st, a, b)?.lower_cosets;
    let c_cosets = coset_partitions(st, b, c)?.upper_cosets;
    Ok(ac_from_cosets(st.class(b), &a_cosets, &c_cosets))
}

pub(crate) fn ac_from_cosets(middle: &[usize], a_cosets: &Cosets, c_cosets: &Cosets) -> ACDecomposition {
    let pos: HashMap<usize, usize> = middle.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..middle.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for set in a_cosets.sets.iter().chain(&c_cosets.sets) {
        for w in set.windows(2) {
            let (x, y) = (find(&mut parent, pos[&w[0]]), find(&mut parent, pos[&w[1]]));
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut by_root: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, &x) in middle.iter().enumerate() {
        let r = find(&mut parent, i);
        match by_root.iter_mut().find(|(root, _)| *root == r) {
            Some((_, v)) => v.push(x),
            None => by_root.push((r, vec![x])),
        }
    }
    let mut components: Vec<Vec<usize>> = by_root.into_iter().map(|(_, v)| sorted(v)).collect();
    components.sort();
    let mut ac_cosets: Vec<Vec<usize>> = Vec::new();
    for xs in &a_cosets.sets {
        for ys in &c_cosets.sets {
            let both: Vec<usize> = xs.iter().copied().filter(|x| ys.contains(x)).collect();
            if !both.is_empty() {
                ac_cosets.push(sorted(both));
            }
        }
    }
    ac_cosets.sort();
    ACDecomposition { components, ac_cosets }
}

/// Isomorphism of a chain onto `3-chain × R`, `R` the rectangular top class.
#[derive(Clone, Debug)]
pub struct ChainFactorization {
    /// The top D-class as a rectangular algebra.
    pub rectangular: FiniteSkewLattice,
    /// `gen_chain(3) × rectangular`.
    pub product: FiniteSkewLattice,
    /// `map[i]` is the element of the ambient algebra hit by product element `i`.
    pub map: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Reflectivity {
    NotReflective,
    Factors(ChainFactorization),
    NonFactorable,
}

impl Reflectivity {
    pub fn is_reflective(&self) -> bool {
        !matches!(self, Reflectivity::NotReflective)
    }
}

/// Decides whether `A > B > A′` is reflective (A and A′ full cosets of each
/// other, B a single AA′-component) and, if so, whether it factors as
/// `3-chain × rectangular`.
///
/// The candidate isomorphism is anchored: `(top, r) ↦ r`, `(mid, r) ↦ r∧b∧r`,
/// `(bottom, r) ↦ r∧c∧r` for fixed `b ∈ B`, `c ∈ A′`; it is accepted only if
/// it is an embedding onto the whole chain.
pub fn reflective_factorization(st: &Structure<'_>, chain: [usize; 3]) -> Result<Reflectivity> {
    let [a, _, c] = chain;
    SkewChain::new(st, chain.to_vec())?;
    let outer = coset_partitions(st, a, c)?;
    if outer.upper_cosets.len() != 1 || outer.lower_cosets.len() != 1 {
        return Ok(Reflectivity::NotReflective);
    }
    let ac = ac_decomposition(st, chain)?;
    if ac.components.len() != 1 {
        return Ok(Reflectivity::NotReflective);
    }
    Ok(match factor_chain(st, chain)? {
        Some(f) => Reflectivity::Factors(f),
        None => Reflectivity::NonFactorable,
    })
}

fn factor_chain(st: &Structure<'_>, [a, b, c]: [usize; 3]) -> Result<Option<ChainFactorization>> {
    let alg = st.alg;
    let top = st.class(a);
    let rectangular = alg.induced(top)?;
    let product = direct_product_with_limit(&gen_chain(3)?, &rectangular, usize::MAX)?;
    let (b0, c0) = (st.class(b)[0], st.class(c)[0]);
    let k = top.len();
    // chain element e0 < e1 < e2; product index = level * k + i
    let map: Vec<usize> = (0..3 * k)
        .map(|p| {
            let r = top[p % k];
            match p / k {
                2 => r,
                1 => alg.meet_sandwich(r, b0),
                _ => alg.meet_sandwich(r, c0),
            }
        })
        .collect();
    let chain_size = top.len() + st.class(b).len() + st.class(c).len();
    let ok = map.len() == chain_size && check_embedding(&ElementMap::new(&product, alg, map.clone()));
    Ok(ok.then_some(ChainFactorization { rectangular, product, map }))
}

/// First `(a, b)` where recomputing `a∨b`, `b∨a`, `a∧b`, `b∧a` through the
/// cosets disagrees with the tables: `a∨b = a∨a′`, `b∨a = a′∨a` for the
/// `a′ −_B a` with `a′ ≥ b`, and `a∧b = b′∧b`, `b∧a = b∧b′` for the
/// `b′ −_A b` with `a ≥ b′`.
pub fn determine_witness(st: &Structure<'_>, cp: &CosetPartition) -> Option<(usize, usize)> {
    let alg = st.alg;
    for &a in st.class(cp.upper) {
        let a_coset = &cp.upper_cosets.sets[cp.upper_cosets.coset_of(a).unwrap()];
        for &b in st.class(cp.lower) {
            let b_coset = &cp.lower_cosets.sets[cp.lower_cosets.coset_of(b).unwrap()];
            let above: Vec<usize> = a_coset.iter().copied().filter(|&x| st.orders.geq(x, b)).collect();
            let below: Vec<usize> = b_coset.iter().copied().filter(|&y| st.orders.geq(a, y)).collect();
            let (&[a2], &[b2]) = (above.as_slice(), below.as_slice()) else {
                return Some((a, b));
            };
            if alg.join(a, b) != alg.join(a, a2)
                || alg.join(b, a) != alg.join(a2, a)
                || alg.meet(a, b) != alg.meet(b2, b)
                || alg.meet(b, a) != alg.meet(b, b2)
            {
                return Some((a, b));
            }
        }
    }
    None
}

/// Factorization `S ≅ D × T` of a primitive algebra.
#[derive(Clone, Debug)]
pub struct PrimitiveFactorization {
    /// Rectangular factor, realised on one B-coset in A.
    pub rectangular: FiniteSkewLattice,
    /// Simply order-closed primitive factor, realised on a transversal of the cosets.
    pub simple: FiniteSkewLattice,
    pub product: FiniteSkewLattice,
    /// Product element index to ambient element.
    pub map: Vec<usize>,
}

/// For an algebra with exactly two D-classes `A > B`, searches for
/// `S ≅ D × T` with `D` rectangular and `T` primitive with every upper
/// element above every lower one.
///
/// The rectangular factor is one B-coset `X0` in A; it is transported to the
/// other cosets along the coset bijections through a fixed A-coset `Y0`.
pub fn primitive_factorization(st: &Structure<'_>) -> Result<Option<PrimitiveFactorization>> {
    let pairs = st.comparable_pairs();
    if st.num_classes() != 2 || pairs.len() != 1 {
        return Ok(None);
    }
    let alg = st.alg;
    let (upper, lower) = pairs[0];
    let cp = coset_partitions(st, upper, lower)?;
    let bij = coset_bijections(st, &cp)?;
    let lc = cp.lower_cosets.len();
    let phi = |x: usize, y: usize| &bij[x * lc + y];
    let x0 = &cp.upper_cosets.sets[0];
    let inverse = |m: &PartialBijection, b: usize| m.pairs.iter().find(|&&(_, t)| t == b).map(|&(s, _)| s);
    // transport d ∈ X0 to upper coset i and lower coset j
    let to_upper = |i: usize, d: usize| inverse(phi(i, 0), phi(0, 0).apply(d).unwrap());
    let to_lower = |j: usize, d: usize| phi(0, j).apply(d);

    let d0 = x0[0];
    let mut transversal = Vec::new();
    for i in 0..cp.upper_cosets.len() {
        transversal.push(to_upper(i, d0).ok_or_else(|| SklError::internal("transport failed"))?);
    }
    for j in 0..lc {
        transversal.push(to_lower(j, d0).ok_or_else(|| SklError::internal("transport failed"))?);
    }
    if !alg.is_closed(&transversal) {
        return Ok(None);
    }
    let simple = alg.induced(&transversal)?;
    let uc = cp.upper_cosets.len();
    if (0..uc).any(|i| (uc..transversal.len()).any(|j| simple.meet(i, j) != j || simple.meet(j, i) != j)) {
        return Ok(None);
    }
    let rectangular = alg.induced(x0)?;
    let product = direct_product_with_limit(&rectangular, &simple, usize::MAX)?;
    let t = transversal.len();
    let mut map = Vec::with_capacity(product.len());
    for p in 0..product.len() {
        let (d, s) = (x0[p / t], p % t);
        let image = if s < uc { to_upper(s, d) } else { to_lower(s - uc, d) };
        match image {
            Some(x) => map.push(x),
            None => return Ok(None),
        }
    }
    let ok = product.len() == alg.len() && check_embedding(&ElementMap::new(&product, alg, map.clone()));
    Ok(ok.then_some(PrimitiveFactorization { rectangular, simple, product, map }))
}

/// Labelled listing of the coset geometry of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// D-classes in canonical order.
    pub classes: Vec<Vec<String>>,
    /// Covering pairs `(upper, lower)` of `S/D`, by class index.
    pub hasse: Vec<(usize, usize)>,
    pub pairs: Vec<PairListing>,
    pub chains: Vec<ChainListing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairListing {
    pub upper: usize,
    pub lower: usize,
    pub upper_cosets: Vec<Vec<String>>,
    pub lower_cosets: Vec<Vec<String>>,
    pub bijections: Vec<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainListing {
    pub classes: [usize; 3],
    pub components: Vec<Vec<String>>,
    pub ac_cosets: Vec<Vec<String>>,
    /// `not-reflective`, `factors` or `non-factorable`.
    pub reflective: &'static str,
}

pub fn decompose(alg: &FiniteSkewLattice) -> Result<Decomposition> {
    let st = Structure::new(alg)?;
    let atlas = CosetAtlas::new(&st)?;
    let names = |sets: &[Vec<usize>]| sets.iter().map(|s| alg.labels(s)).collect::<Vec<_>>();
    let pairs = st
        .comparable_pairs()
        .into_iter()
        .map(|(p, q)| {
            let cp = atlas.cosets(p, q);
            PairListing {
                upper: p,
                lower: q,
                upper_cosets: names(&cp.upper_cosets.sets),
                lower_cosets: names(&cp.lower_cosets.sets),
                bijections: atlas
                    .bijections(p, q)
                    .iter()
                    .map(|phi| phi.pairs.iter().map(|&(a, b)| (alg.name(a).to_string(), alg.name(b).to_string())).collect())
                    .collect(),
            }
        })
        .collect();
    let mut chains = Vec::new();
    for chain in st.three_chains() {
        let ac = ac_from_cosets(
            st.class(chain[1]),
            &atlas.cosets(chain[0], chain[1]).lower_cosets,
            &atlas.cosets(chain[1], chain[2]).upper_cosets,
        );
        let reflective = match reflective_factorization(&st, chain)? {
            Reflectivity::NotReflective => "not-reflective",
            Reflectivity::Factors(_) => "factors",
            Reflectivity::NonFactorable => "non-factorable",
        };
        chains.push(ChainListing {
            classes: chain,
            components: names(&ac.components),
            ac_cosets: names(&ac.ac_cosets),
            reflective,
        });
    }
    Ok(Decomposition {
        classes: (0..st.num_classes()).map(|c| alg.labels(st.class(c))).collect(),
        hasse: st.hasse_edges(),
        pairs,
        chains,
    })
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let braces = |sets: &[Vec<String>]| {
            sets.iter().map(|s| format!("{{{}}}", s.join(","))).collect::<Vec<_>>().join(" ")
        };
        writeln!(f, "D-classes:")?;
        for (i, c) in self.classes.iter().enumerate() {
            writeln!(f, "  D{i} = {{{}}}", c.join(", "))?;
        }
        let edges: Vec<String> = self.hasse.iter().map(|(p, q)| format!("D{p} > D{q}")).collect();
        writeln!(f, "covers: {}", if edges.is_empty() { "none".to_string() } else { edges.join(", ") })?;
        for pair in &self.pairs {
            writeln!(f, "D{} > D{}:", pair.upper, pair.lower)?;
            writeln!(f, "  cosets above: {}", braces(&pair.upper_cosets))?;
            writeln!(f, "  cosets below: {}", braces(&pair.lower_cosets))?;
            for phi in &pair.bijections {
                let body: Vec<String> = phi.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                writeln!(f, "  bijection {{{}}}", body.join(", "))?;
            }
        }
        for ch in &self.chains {
            let [a, b, c] = ch.classes;
            writeln!(f, "D{a} > D{b} > D{c}: {}", ch.reflective)?;
            writeln!(f, "  components: {}", braces(&ch.components))?;
            writeln!(f, "  AC-cosets: {}", braces(&ch.ac_cosets))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gen_chain, gen_xn};

    fn names(alg: &FiniteSkewLattice, sets: &[Vec<usize>]) -> Vec<Vec<String>> {
        sets.iter().map(|s| alg.labels(s)).collect()
    }

    #[test]
    fn xn2_cosets() {
        let x2 = gen_xn(2).unwrap();
        let st = Structure::new(&x2).unwrap();
        let cp = coset_partitions(&st, 0, 1).unwrap();
        assert_eq!(names(&x2, &cp.lower_cosets.sets), vec![vec!["b1", "b2"], vec!["b3", "b4"]]);
        assert_eq!(names(&x2, &cp.upper_cosets.sets), vec![vec!["a1", "a2"]]);
        let full = coset_partitions(&st, 0, 2).unwrap();
        assert_eq!(full.upper_cosets.len(), 1);
        assert_eq!(full.lower_cosets.len(), 1);
        assert!(two_variable_form_witness(&st, &cp).is_none());
        assert!(determine_witness(&st, &cp).is_none());
    }

    #[test]
    fn chain_cosets_are_singletons() {
        let c = gen_chain(2).unwrap();
        let st = Structure::new(&c).unwrap();
        let (p, q) = st.comparable_pairs()[0];
        let cp = coset_partitions(&st, p, q).unwrap();
        assert_eq!(cp.upper_cosets.sets, vec![vec![1]]);
        assert_eq!(cp.lower_cosets.sets, vec![vec![0]]);
        let bij = coset_bijections(&st, &cp).unwrap();
        assert_eq!(bij.len(), 1);
        assert_eq!(bij[0].pairs, vec![(1, 0)]);
    }

    #[test]
    fn composition_class_mismatch() {
        let phi = PartialBijection { source_class: 0, target_class: 1, pairs: vec![(0, 1)] };
        let psi = PartialBijection { source_class: 2, target_class: 3, pairs: vec![(1, 2)] };
        assert!(matches!(compose_bijections(&psi, &phi), Err(SklError::ClassMismatch { target: 1, next: 2 })));
    }

    #[test]
    fn parallel_rejects_unordered() {
        let x2 = gen_xn(2).unwrap();
        let st = Structure::new(&x2).unwrap();
        let (a1, b2) = (x2.el("a1"), x2.el("b2"));
        assert!(matches!(are_parallel(&st, (a1, b2), (a1, b2)), Err(SklError::NotStrictlyOrdered { .. })));
    }
    #[test]
    fn xn2_bijections_and_composition() {
        let x2 = gen_xn(2).unwrap();
        let st = Structure::new(&x2).unwrap();
        let ab = coset_bijections(&st, &coset_partitions(&st, 0, 1).unwrap()).unwrap();
        let shown: Vec<String> = ab.iter().map(|p| p.display(&x2)).collect();
        assert_eq!(shown, vec!["{a1->b1, a2->b2}", "{a1->b3, a2->b4}"]);
        let bc = coset_bijections(&st, &coset_partitions(&st, 1, 2).unwrap()).unwrap();
        let psi = bc.iter().find(|p| p.contains((x2.el("b2"), x2.el("c2")))).unwrap();
        let comp = compose_bijections(psi, &ab[0]).unwrap();
        assert!(comp.contains((x2.el("a2"), x2.el("c2"))));
        assert!(comp.is_subset_of(&coset_bijections(&st, &coset_partitions(&st, 0, 2).unwrap()).unwrap()[0]));
    }

    #[test]
    fn xn2_parallelism() {
        let x2 = gen_xn(2).unwrap();
        let st = Structure::new(&x2).unwrap();
        let e = |s| x2.el(s);
        assert!(are_parallel(&st, (e("a1"), e("c1")), (e("a2"), e("c2"))).unwrap());
        assert!(are_parallel(&st, (e("a1"), e("b1")), (e("a2"), e("b2"))).unwrap());
        assert!(!are_parallel(&st, (e("a1"), e("b1")), (e("a2"), e("b4"))).unwrap());
        let pc = parallel_classes(&st).unwrap();
        // 2 (A>B) + 2 (B>C) + 1 (A>C)
        assert_eq!(pc.len(), 5);
    }

    #[test]
    fn ac_components() {
        let x2 = gen_xn(2).unwrap();
        let st = Structure::new(&x2).unwrap();
        let ac = ac_decomposition(&st, [0, 1, 2]).unwrap();
        assert_eq!(ac.components.len(), 1);
        assert_eq!(ac.ac_cosets.len(), 4);
        assert!(ac.ac_cosets.iter().all(|c| c.len() == 1));
        let x1 = gen_xn(1).unwrap();
        let st1 = Structure::new(&x1).unwrap();
        let ac1 = ac_decomposition(&st1, [0, 1, 2]).unwrap();
        assert_eq!(ac1.components.len(), 1);
        assert_eq!(ac1.ac_cosets, vec![st1.class(1).to_vec()]);
    }

    #[test]
    fn reflective_chains() {
        let x1 = gen_xn(1).unwrap();
        let st1 = Structure::new(&x1).unwrap();
        assert!(matches!(reflective_factorization(&st1, [0, 1, 2]).unwrap(), Reflectivity::Factors(_)));
        let x2 = gen_xn(2).unwrap();
        let st2 = Structure::new(&x2).unwrap();
        assert!(matches!(reflective_factorization(&st2, [0, 1, 2]).unwrap(), Reflectivity::NonFactorable));
    }

    #[test]
    fn primitive_factorizations() {
        use crate::construct::{gen_primitive, gen_twisted_primitive, twisted_primitive_spec};
        let tw = gen_twisted_primitive();
        let st = Structure::new(&tw).unwrap();
        assert!(primitive_factorization(&st).unwrap().is_none());
        let mut spec = twisted_primitive_spec();
        spec.bijections[3].pairs = vec![(0, 0), (1, 1)];
        let straight = gen_primitive(&spec).unwrap();
        let st = Structure::new(&straight).unwrap();
        let f = primitive_factorization(&st).unwrap().expect("straight primitive factors");
        assert_eq!(f.rectangular.len() * f.simple.len(), straight.len());
    }
}
