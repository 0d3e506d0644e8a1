//! Finite skew lattices as pairs of Cayley tables.

use std::collections::HashSet;

use crate::error::{Result, SklError};
use crate::partition::EquivPartition;

/// Default cap on the carrier size of constructed algebras.
pub const DEFAULT_MAX_CARRIER: usize = 4096;

/// Carrier cap, taken from `SKL_MAX_CARRIER` when set to a positive integer.
pub fn max_carrier() -> usize {
    std::env::var("SKL_MAX_CARRIER")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_CARRIER)
}

/// A finite algebra with two binary operations, stored as dense tables.
///
/// Elements are the indices `0..n`; labels only matter at I/O boundaries.
/// Construction checks that the tables are total but not that the skew
/// lattice laws hold: see [`crate::validate::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSkewLattice {
    names: Vec<String>,
    meet: Vec<u32>,
    join: Vec<u32>,
}

impl FiniteSkewLattice {
    /// Builds an algebra from row-major tables, `meet[i][j] = i ∧ j`.
    pub fn from_tables(
        names: Vec<String>,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = names.len();
        check_names(&names)?;
        let flatten = |table: Vec<Vec<usize>>, which: &str| -> Result<Vec<u32>> {
            if table.len() != n {
                return Err(SklError::Table(format!(
                    "{which} table has {} rows, expected {n}",
                    table.len()
                )));
            }
            let mut flat = Vec::with_capacity(n * n);
            for (i, row) in table.into_iter().enumerate() {
                if row.len() != n {
                    return Err(SklError::Table(format!(
                        "{which} row {i} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                for v in row {
                    if v >= n {
                        return Err(SklError::Table(format!(
                            "{which} row {i} holds out-of-range entry {v}"
                        )));
                    }
                    flat.push(v as u32);
                }
            }
            Ok(flat)
        };
        let meet = flatten(meet, "meet")?;
        let join = flatten(join, "join")?;
        Ok(FiniteSkewLattice { names, meet, join })
    }

    /// Builds an algebra by tabulating two closures.
    ///
    /// Panics if a closure returns an index outside `0..n` or names are
    /// invalid; meant for generators whose output is correct by construction.
    pub fn from_fn(
        names: Vec<String>,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = names.len();
        check_names(&names).expect("generator produced invalid names");
        let mut m = Vec::with_capacity(n * n);
        let mut j = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = meet(x, y);
                let b = join(x, y);
                assert!(a < n && b < n, "generator produced out-of-range entry");
                m.push(a as u32);
                j.push(b as u32);
            }
        }
        FiniteSkewLattice { names, meet: m, join: j }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.names.len() + y] as usize
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.names.len() + y] as usize
    }

    /// `x ∧ y ∧ x`
    #[inline]
    pub fn meet_sandwich(&self, x: usize, y: usize) -> usize {
        self.meet(self.meet(x, y), x)
    }

    /// `x ∨ y ∨ x`
    #[inline]
    pub fn join_sandwich(&self, x: usize, y: usize) -> usize {
        self.join(self.join(x, y), x)
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Looks up an element by label, panicking when absent. For tests and examples.
    pub fn el(&self, name: &str) -> usize {
        self.index_of(name)
            .unwrap_or_else(|| panic!("no element named `{name}`"))
    }

    pub fn labels(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| self.names[x].clone()).collect()
    }

    pub fn meet_rows(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n).map(|x| (0..n).map(|y| self.meet(x, y)).collect()).collect()
    }

    pub fn join_rows(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n).map(|x| (0..n).map(|y| self.join(x, y)).collect()).collect()
    }

    /// Same algebra under new labels.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(SklError::Table("wrong number of names".into()));
        }
        check_names(&names)?;
        Ok(FiniteSkewLattice { names, meet: self.meet.clone(), join: self.join.clone() })
    }

    /// Horizontal (left-right) dual: both operations with arguments swapped.
    pub fn mirror(&self) -> Self {
        FiniteSkewLattice::from_fn(self.names.clone(), |x, y| self.meet(y, x), |x, y| self.join(y, x))
    }

    /// Vertical dual: the two operations exchanged.
    pub fn dual(&self) -> Self {
        FiniteSkewLattice { names: self.names.clone(), meet: self.join.clone(), join: self.meet.clone() }
    }

    /// True when both operations are commutative.
    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                if self.meet(x, y) != self.meet(y, x) || self.join(x, y) != self.join(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// True when `elems` is closed under both operations.
    pub fn is_closed(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &x in elems {
            member[x] = true;
        }
        elems.iter().all(|&x| {
            elems.iter().all(|&y| member[self.meet(x, y)] && member[self.join(x, y)])
        })
    }

    /// The subalgebra on a closed subset, with elements in the order given.
    /// The returned algebra's element `i` is `elems[i]` here.
    pub fn induced(&self, elems: &[usize]) -> Result<Self> {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in elems.iter().enumerate() {
            if x >= self.len() || pos[x] != usize::MAX {
                return Err(SklError::Table("subset has repeated or invalid elements".into()));
            }
            pos[x] = i;
        }
        let mut meet = Vec::with_capacity(elems.len() * elems.len());
        let mut join = Vec::with_capacity(elems.len() * elems.len());
        for &x in elems {
            for &y in elems {
                let (m, j) = (pos[self.meet(x, y)], pos[self.join(x, y)]);
                if m == usize::MAX || j == usize::MAX {
                    return Err(SklError::Table(format!(
                        "subset is not closed at ({}, {})",
                        self.names[x], self.names[y]
                    )));
                }
                meet.push(m as u32);
                join.push(j as u32);
            }
        }
        Ok(FiniteSkewLattice { names: self.labels(elems), meet, join })
    }
}

fn check_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(SklError::Table("carrier must be nonempty".into()));
    }
    let mut seen = HashSet::new();
    for name in names {
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(SklError::Table(format!("invalid element name `{name}`")));
        }
        if !seen.insert(name.as_str()) {
            return Err(SklError::Table(format!("duplicate element name `{name}`")));
        }
    }
    Ok(())
}

/// Direct product with the carrier cap from [`max_carrier`].
pub fn direct_product(a: &FiniteSkewLattice, b: &FiniteSkewLattice) -> Result<FiniteSkewLattice> {
    direct_product_with_limit(a, b, max_carrier())
}

/// Componentwise product; element `(x, y)` has index `x * |b| + y` and label `x|y`.
pub fn direct_product_with_limit(
    a: &FiniteSkewLattice,
    b: &FiniteSkewLattice,
    max: usize,
) -> Result<FiniteSkewLattice> {
    let size = a.len().saturating_mul(b.len());
    if size > max {
        return Err(SklError::CarrierTooLarge { size, max });
    }
    let m = b.len();
    let names = a
        .names()
        .iter()
        .flat_map(|x| b.names().iter().map(move |y| format!("{x}|{y}")))
        .collect();
    Ok(FiniteSkewLattice::from_fn(
        names,
        |p, q| a.meet(p / m, q / m) * m + b.meet(p % m, q % m),
        |p, q| a.join(p / m, q / m) * m + b.join(p % m, q % m),
    ))
}

/// Least subset containing `seed` and closed under both operations, sorted.
pub fn subalgebra_closure(alg: &FiniteSkewLattice, seed: &[usize]) -> Vec<usize> {
    let mut member = vec![false; alg.len()];
    let mut set: Vec<usize> = Vec::new();
    for &x in seed {
        if !member[x] {
            member[x] = true;
            set.push(x);
        }
    }
    let mut done = 0;
    // every pair (set[i], set[j]) with max(i, j) >= done still needs products
    while done < set.len() {
        let x = set[done];
        let mut i = 0;
        while i <= done {
            let y = set[i];
            for z in [alg.meet(x, y), alg.meet(y, x), alg.join(x, y), alg.join(y, x)] {
                if !member[z] {
                    member[z] = true;
                    set.push(z);
                }
            }
            i += 1;
        }
        done += 1;
    }
    set.sort_unstable();
    set
}

/// A map from the carrier of `source` into the carrier of `target`.
#[derive(Clone, Debug)]
pub struct ElementMap<'a> {
    pub source: &'a FiniteSkewLattice,
    pub target: &'a FiniteSkewLattice,
    pub map: Vec<usize>,
}

impl<'a> ElementMap<'a> {
    pub fn new(source: &'a FiniteSkewLattice, target: &'a FiniteSkewLattice, map: Vec<usize>) -> Self {
        ElementMap { source, target, map }
    }

    pub fn identity(alg: &'a FiniteSkewLattice) -> Self {
        ElementMap { source: alg, target: alg, map: alg.elements().collect() }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&y| y < seen.len() && !std::mem::replace(&mut seen[y], true))
    }

    /// First pair `(x, y)` of source elements at which an operation is not preserved.
    pub fn homomorphism_witness(&self) -> Option<(usize, usize)> {
        let (s, t, f) = (self.source, self.target, &self.map);
        for x in s.elements() {
            for y in s.elements() {
                if f[s.meet(x, y)] != t.meet(f[x], f[y]) || f[s.join(x, y)] != t.join(f[x], f[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// `source label -> target label` pairs in source order.
    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.source.name(x).to_string(), self.target.name(y).to_string()))
            .collect()
    }
}

/// True iff the map is total, injective and preserves both operations.
pub fn check_embedding(m: &ElementMap<'_>) -> bool {
    m.map.len() == m.source.len()
        && m.map.iter().all(|&y| y < m.target.len())
        && m.is_injective()
        && m.homomorphism_witness().is_none()
}

/// Exhaustive backtracking search for an embedding of `src` into `dst`.
///
/// Source elements are assigned in index order and every operation among
/// already-assigned elements is checked as soon as both arguments and the
/// result are assigned. Intended for carriers of a few dozen elements.
pub fn find_embedding(src: &FiniteSkewLattice, dst: &FiniteSkewLattice) -> Option<Vec<usize>> {
    if src.len() > dst.len() {
        return None;
    }
    let mut map = vec![usize::MAX; src.len()];
    let mut used = vec![false; dst.len()];
    if extend_embedding(src, dst, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend_embedding(
    src: &FiniteSkewLattice,
    dst: &FiniteSkewLattice,
    k: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == src.len() {
        return true;
    }
    for cand in dst.elements() {
        if used[cand] {
            continue;
        }
        map[k] = cand;
        if consistent_at(src, dst, k, map) {
            used[cand] = true;
            if extend_embedding(src, dst, k + 1, map, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    map[k] = usize::MAX;
    false
}

// Checks every product that involves element k and whose value is assigned.
fn consistent_at(src: &FiniteSkewLattice, dst: &FiniteSkewLattice, k: usize, map: &[usize]) -> bool {
    let ok = |sv: usize, dv: usize| map[sv] == usize::MAX || map[sv] == dv;
    // idempotency is automatic; check (k, i) and (i, k) for assigned i <= k,
    // plus earlier pairs whose result is k.
    for i in 0..=k {
        let (fk, fi) = (map[k], map[i]);
        if !ok(src.meet(k, i), dst.meet(fk, fi))
            || !ok(src.meet(i, k), dst.meet(fi, fk))
            || !ok(src.join(k, i), dst.join(fk, fi))
            || !ok(src.join(i, k), dst.join(fi, fk))
        {
            return false;
        }
    }
    for i in 0..k {
        for j in 0..k {
            if src.meet(i, j) == k && dst.meet(map[i], map[j]) != map[k] {
                return false;
            }
            if src.join(i, j) == k && dst.join(map[i], map[j]) != map[k] {
                return false;
            }
        }
    }
    true
}

/// Isomorphism test via [`find_embedding`] on equal-size carriers.
pub fn find_isomorphism(a: &FiniteSkewLattice, b: &FiniteSkewLattice) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    find_embedding(a, b)
}

/// Quotient by a partition, checking that the induced operations are well defined.
///
/// Elements of the quotient are the classes in canonical order, labelled by
/// their members' labels joined with `+`.
pub fn quotient_by(alg: &FiniteSkewLattice, p: &EquivPartition) -> Result<FiniteSkewLattice> {
    if p.len() != alg.len() {
        return Err(SklError::Partition("partition carrier differs from algebra".into()));
    }
    for x in alg.elements() {
        let r = p.representative(p.class_of(x));
        for y in alg.elements() {
            let checks = [
                (alg.meet(x, y), alg.meet(r, y), [x, r, y, y]),
                (alg.meet(y, x), alg.meet(y, r), [y, y, x, r]),
                (alg.join(x, y), alg.join(r, y), [x, r, y, y]),
                (alg.join(y, x), alg.join(y, r), [y, y, x, r]),
            ];
            for (u, v, w) in checks {
                if !p.same(u, v) {
                    let witness = w.map(|e| alg.name(e).to_string());
                    return Err(SklError::NotACongruence { witness });
                }
            }
        }
    }
    let names = p
        .classes()
        .iter()
        .map(|c| alg.labels(c).join("+"))
        .collect();
    let reps: Vec<usize> = (0..p.num_classes()).map(|c| p.representative(c)).collect();
    Ok(FiniteSkewLattice::from_fn(
        names,
        |i, j| p.class_of(alg.meet(reps[i], reps[j])),
        |i, j| p.class_of(alg.join(reps[i], reps[j])),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(k: usize) -> FiniteSkewLattice {
        FiniteSkewLattice::from_fn((0..k).map(|i| format!("e{i}")).collect(), usize::min, usize::max)
    }

    #[test]
    fn from_tables_rejects_malformed() {
        let names = vec!["a".to_string(), "b".to_string()];
        let ok = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteSkewLattice::from_tables(names.clone(), ok.clone(), ok.clone()).is_ok());
        assert!(FiniteSkewLattice::from_tables(names.clone(), vec![vec![0, 2], vec![1, 1]], ok.clone()).is_err());
        assert!(FiniteSkewLattice::from_tables(names.clone(), vec![vec![0]], ok.clone()).is_err());
        let dup = vec!["a".to_string(), "a".to_string()];
        assert!(FiniteSkewLattice::from_tables(dup, ok.clone(), ok).is_err());
    }

    #[test]
    fn closure_basics() {
        let c = chain(4);
        assert_eq!(subalgebra_closure(&c, &[2]), vec![2]);
        assert_eq!(subalgebra_closure(&c, &[3, 0]), vec![0, 3]);
        let all: Vec<usize> = c.elements().collect();
        assert_eq!(subalgebra_closure(&c, &all), all);
    }

    #[test]
    fn product_with_singleton() {
        let c = chain(3);
        let p = direct_product(&c, &chain(1)).unwrap();
        assert_eq!(p.len(), 3);
        let m = find_isomorphism(&p, &c).unwrap();
        assert!(check_embedding(&ElementMap::new(&p, &c, m)));
        assert!(matches!(
            direct_product_with_limit(&c, &c, 8),
            Err(SklError::CarrierTooLarge { size: 9, max: 8 })
        ));
    }

    #[test]
    fn embedding_checks() {
        let c = chain(3);
        assert!(check_embedding(&ElementMap::identity(&c)));
        assert!(!check_embedding(&ElementMap::new(&c, &c, vec![0, 0, 2])));
        // order-reversing bijection is not a homomorphism
        assert!(!check_embedding(&ElementMap::new(&c, &c, vec![2, 1, 0])));
        assert_eq!(find_embedding(&chain(2), &c), Some(vec![0, 1]));
        assert_eq!(find_embedding(&chain(4), &c), None);
    }

    #[test]
    fn quotient_identity_and_failure() {
        let c = chain(3);
        let q = quotient_by(&c, &EquivPartition::identity(3)).unwrap();
        assert_eq!(q.meet_rows(), c.meet_rows());
        // {e0, e2} | {e1} is not a congruence of a chain
        let p = EquivPartition::from_classes(3, vec![vec![0, 2], vec![1]]).unwrap();
        assert!(matches!(quotient_by(&c, &p), Err(SklError::NotACongruence { .. })));
    }
}
