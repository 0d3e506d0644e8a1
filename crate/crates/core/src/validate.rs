//! Exhaustive checking of the skew lattice laws on a finite algebra.

use serde::Serialize;

use crate::algebra::FiniteSkewLattice;

/// One failed law and the first tuple of elements violating it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub law: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<LawFailure>,
}

impl ValidationReport {
    pub fn failure(&self, law: &str) -> Option<&LawFailure> {
        self.failures.iter().find(|f| f.law == law)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok {
            return writeln!(f, "ok: all skew lattice laws hold");
        }
        for fail in &self.failures {
            writeln!(f, "FAIL {}: ({})", fail.law, fail.witness.join(", "))?;
        }
        Ok(())
    }
}

/// Law names in the order they are checked.
pub const LAWS: [&str; 13] = [
    "meet-idempotent",
    "join-idempotent",
    "meet-associative",
    "join-associative",
    // x ∧ (x ∨ y) = x
    "meet-absorbs-join-left",
    // (y ∨ x) ∧ x = x
    "meet-absorbs-join-right",
    // x ∨ (x ∧ y) = x
    "join-absorbs-meet-left",
    // (y ∧ x) ∨ x = x
    "join-absorbs-meet-right",
    // x ∧ y = x  iff  x ∨ y = y
    "duality-lower",
    // x ∧ y = y  iff  x ∨ y = x
    "duality-upper",
    "meet-regular",
    "join-regular",
    // regularity failed although every other law held
    "regularity-theorem-violated",
];

fn first1(n: usize, bad: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find(|&x| bad(x)).map(|x| vec![x])
}

fn first2(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            if bad(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

fn first3(n: usize, bad: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// Checks idempotency, associativity, the four absorption laws, both
/// dualities, and regularity `x∘y∘x∘z∘x = x∘y∘z∘x` for both operations.
///
/// Every law is checked exhaustively and reports its first witness.
pub fn validate(alg: &FiniteSkewLattice) -> ValidationReport {
    let n = alg.len();
    let m = |x, y| alg.meet(x, y);
    let j = |x, y| alg.join(x, y);
    let mut found: Vec<(&'static str, Vec<usize>)> = Vec::new();
    fn record(found: &mut Vec<(&'static str, Vec<usize>)>, law: &'static str, w: Option<Vec<usize>>) {
        if let Some(w) = w {
            found.push((law, w));
        }
    }

    record(&mut found, "meet-idempotent", first1(n, |x| m(x, x) != x));
    record(&mut found, "join-idempotent", first1(n, |x| j(x, x) != x));
    record(&mut found, "meet-associative", first3(n, |x, y, z| m(m(x, y), z) != m(x, m(y, z))));
    record(&mut found, "join-associative", first3(n, |x, y, z| j(j(x, y), z) != j(x, j(y, z))));
    record(&mut found, "meet-absorbs-join-left", first2(n, |x, y| m(x, j(x, y)) != x));
    record(&mut found, "meet-absorbs-join-right", first2(n, |x, y| m(j(y, x), x) != x));
    record(&mut found, "join-absorbs-meet-left", first2(n, |x, y| j(x, m(x, y)) != x));
    record(&mut found, "join-absorbs-meet-right", first2(n, |x, y| j(m(y, x), x) != x));
    record(&mut found, "duality-lower", first2(n, |x, y| (m(x, y) == x) != (j(x, y) == y)));
    record(&mut found, "duality-upper", first2(n, |x, y| (m(x, y) == y) != (j(x, y) == x)));
    let others_failed = !found.is_empty();

    let meet_reg = first3(n, |x, y, z| m(m(m(m(x, y), x), z), x) != m(m(m(x, y), z), x));
    let join_reg = first3(n, |x, y, z| j(j(j(j(x, y), x), z), x) != j(j(j(x, y), z), x));
    if others_failed {
        record(&mut found, "meet-regular", meet_reg);
        record(&mut found, "join-regular", join_reg);
    } else if let Some(w) = meet_reg.or(join_reg) {
        record(&mut found, "regularity-theorem-violated", Some(w));
    }

    let failures: Vec<LawFailure> = found
        .into_iter()
        .map(|(law, w)| LawFailure { law: law.to_string(), witness: alg.labels(&w) })
        .collect();
    ValidationReport { ok: failures.is_empty(), failures }
}

pub fn is_skew_lattice(alg: &FiniteSkewLattice) -> bool {
    validate(alg).ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_first() -> FiniteSkewLattice {
        FiniteSkewLattice::from_fn(vec!["e".into(), "f".into()], |_, _| 0, |_, _| 0)
    }

    #[test]
    fn constant_table_fails_absorption() {
        let report = validate(&constant_first());
        assert!(!report.ok);
        // f ∨ (f ∧ e) = e ≠ f
        let fail = report.failure("join-absorbs-meet-left").expect("absorption failure");
        assert_eq!(fail.witness, vec!["f", "e"]);
        assert!(report.failure("join-idempotent").is_some());
    }

    #[test]
    fn chain_is_valid() {
        let c = FiniteSkewLattice::from_fn(
            (0..4).map(|i| format!("e{i}")).collect(),
            usize::min,
            usize::max,
        );
        let report = validate(&c);
        assert!(report.ok, "{report}");
        assert!(report.failures.is_empty());
    }

    #[test]
    fn ok_iff_no_failures() {
        let r = validate(&constant_first());
        assert_eq!(r.ok, r.failures.is_empty());
    }
}
