//! Corpus-wide consistency checks: every mode against every other, the
//! implications between properties, the decomposition theorems, the coset
//! machinery, and the reflective-chain characterization.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{check_embedding, direct_product_with_limit, subalgebra_closure, FiniteSkewLattice};
use crate::classify::{classify_report, find_forbidden_in, Analysis, ClassificationReport, PROPERTIES};
use crate::construct::CorpusEntry;
use crate::coset::{
    check_parallel_classes, determine_witness, group_parallel, primitive_factorization, reflective_factorization,
    two_variable_form_witness, Reflectivity,
};
use crate::error::{Result, SklError};
use crate::order::{maximal_images, verify_pullback, Structure};
use crate::validate::validate;

/// Outcome of all checks on one algebra.
#[derive(Clone, Debug)]
pub struct AlgebraCheck {
    pub name: String,
    pub size: usize,
    pub report: Option<ClassificationReport>,
    /// Reflective chains examined and how many of them factor.
    pub reflective: (usize, usize),
    pub failures: Vec<String>,
    /// Some check raised an internal error.
    pub internal: bool,
}

impl AlgebraCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every per-algebra invariant on `alg`.
pub fn check_algebra(name: &str, alg: &FiniteSkewLattice) -> AlgebraCheck {
    let mut check = AlgebraCheck {
        name: name.to_string(),
        size: alg.len(),
        report: None,
        reflective: (0, 0),
        failures: Vec::new(),
        internal: false,
    };
    if let Err(e) = run_checks(alg, &mut check) {
        check.internal |= e.is_internal();
        check.failures.push(e.to_string());
    }
    check
}

fn run_checks(alg: &FiniteSkewLattice, check: &mut AlgebraCheck) -> Result<()> {
    let validation = validate(alg);
    if !validation.ok {
        return Err(SklError::NotASkewLattice(validation.to_string().trim().to_string()));
    }
    let fail = |check: &mut AlgebraCheck, msg: String| check.failures.push(msg);

    // decompositions: Structure::new verifies the Green relations and rectangular D-classes
    let an = Analysis::new(alg)?;
    maximal_images(alg)?;
    if !verify_pullback(alg) {
        fail(check, "S is not the fibred product of S/R and S/L".into());
    }

    // coset machinery
    let st = &an.st;
    for (p, q) in st.comparable_pairs() {
        let cp = an.atlas.cosets(p, q);
        if let Some(x) = two_variable_form_witness(st, cp) {
            fail(check, format!("two-variable coset form differs at {}", alg.name(x)));
        }
        if let Some((a, b)) = determine_witness(st, cp) {
            fail(check, format!("cosets do not determine the operations at ({}, {})", alg.name(a), alg.name(b)));
        }
    }
    let pc = group_parallel(st)?;
    check_parallel_classes(st, &an.atlas, &pc)?;

    // classification and implications
    let report = classify_report(alg)?;
    for p in PROPERTIES {
        if !report.agreement[p] {
            fail(check, format!("modes disagree on {p}: {:?}", report.modes[p]));
        }
    }
    let has = |p: &str| report.property(p);
    for (premise, conclusion) in [
        ("distributive", "categorical"),
        ("normal", "strictly_categorical"),
        ("conormal", "strictly_categorical"),
        ("strictly_categorical", "categorical"),
    ] {
        if has(premise) && !has(conclusion) {
            fail(check, format!("{premise} but not {conclusion}"));
        }
    }
    let witness = find_forbidden_in(&an)?;
    if let Some(w) = &witness {
        if !check_embedding(&w.embedding(alg)) {
            fail(check, format!("forbidden witness {}_{} is not an embedding", w.kind, w.n));
        }
    }

    // reflective chains factor exactly when the algebra is categorical
    let family = reflective_family(&an);
    let mut factoring = 0;
    let mut examined = 0;
    for chain in &family {
        let sub = alg.induced(chain)?;
        let sst = Structure::new(&sub)?;
        let triple = sst.three_chains();
        if sst.num_classes() != 3 || triple.len() != 1 {
            continue;
        }
        match reflective_factorization(&sst, triple[0])? {
            Reflectivity::NotReflective => {}
            Reflectivity::Factors(_) => {
                examined += 1;
                factoring += 1;
            }
            Reflectivity::NonFactorable => examined += 1,
        }
    }
    check.reflective = (examined, factoring);
    if (examined == factoring) != has("categorical") {
        fail(check, format!("reflective chains: {factoring} of {examined} factor, categorical={}", has("categorical")));
    }

    // order-closed primitive algebras split off a rectangular factor
    if st.num_classes() == 2
        && st.comparable_pairs().len() == 1
        && has("order_closed")
        && primitive_factorization(st)?.is_none()
    {
        fail(check, "order-closed primitive algebra does not factor".into());
    }
    check.report = Some(report);
    Ok(())
}

/// Candidate reflective skew chains of an algebra, as sorted element sets:
/// every triple of D-classes, and the subalgebra generated by each
/// configuration `a > b > c`, `a > c ∥ a′ > c′` with `a ≠ a′`.
pub fn reflective_family(an: &Analysis<'_>) -> Vec<Vec<usize>> {
    let st = &an.st;
    let alg = an.alg();
    let mut family: Vec<Vec<usize>> = Vec::new();
    for chain in st.three_chains() {
        let mut elems: Vec<usize> = chain.iter().flat_map(|&c| st.class(c).iter().copied()).collect();
        elems.sort_unstable();
        family.push(elems);
    }
    let gt = |x, y| st.orders.gt(x, y);
    for (a, c) in st.strict_pairs() {
        for b in alg.elements().filter(|&b| gt(a, b) && gt(b, c)) {
            for &a2 in st.class(st.class_of(a)) {
                let c2 = alg.meet_sandwich(a2, c);
                if a2 != a && gt(a2, c2) && alg.join_sandwich(c2, a) == a2 {
                    family.push(subalgebra_closure(alg, &[a, a2, b, c, c2]));
                }
            }
        }
    }
    family.sort();
    family.dedup();
    family
}

/// Per-property counts and all failures over a corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckSummary {
    pub algebras: usize,
    pub largest: usize,
    /// Algebras having each property.
    pub counts: BTreeMap<String, usize>,
    pub reflective_chains: usize,
    pub reflective_factoring: usize,
    pub variety_checks: usize,
    /// `(algebra, message)` in corpus order.
    pub failures: Vec<(String, String)>,
    pub internal: bool,
}

impl CrosscheckSummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CrosscheckSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebras checked      {}", self.algebras)?;
        writeln!(f, "largest carrier       {}", self.largest)?;
        for p in PROPERTIES {
            writeln!(f, "{p:<21} {}", self.counts.get(p).copied().unwrap_or(0))?;
        }
        writeln!(f, "reflective chains     {} ({} factor)", self.reflective_chains, self.reflective_factoring)?;
        writeln!(f, "variety spot checks   {}", self.variety_checks)?;
        writeln!(f, "disagreements         {}", self.failures.len())?;
        for (name, msg) in &self.failures {
            writeln!(f, "  {name}: {msg}")?;
        }
        Ok(())
    }
}

/// Checks every corpus member in parallel (results kept in corpus order),
/// then spot-checks closure of the varieties under products and subalgebras.
pub fn crosscheck(entries: &[CorpusEntry], seed: u64) -> CrosscheckSummary {
    let checks: Vec<AlgebraCheck> = entries.par_iter().map(|e| check_algebra(&e.name, &e.algebra)).collect();
    let mut summary = CrosscheckSummary {
        algebras: checks.len(),
        largest: checks.iter().map(|c| c.size).max().unwrap_or(0),
        counts: BTreeMap::new(),
        reflective_chains: 0,
        reflective_factoring: 0,
        variety_checks: 0,
        failures: Vec::new(),
        internal: false,
    };
    for c in &checks {
        summary.reflective_chains += c.reflective.0;
        summary.reflective_factoring += c.reflective.1;
        summary.internal |= c.internal;
        summary.failures.extend(c.failures.iter().map(|m| (c.name.clone(), m.clone())));
        if let Some(r) = &c.report {
            for p in PROPERTIES {
                *summary.counts.entry(p.to_string()).or_default() += usize::from(r.property(p));
            }
        }
    }
    let (count, failures, internal) = variety_spot_checks(entries, &checks, seed);
    summary.variety_checks = count;
    summary.internal |= internal;
    summary.failures.extend(failures);
    summary
}

const VARIETIES: [&str; 3] = ["categorical", "strictly_categorical", "order_closed"];

/// Products of pairs of members sharing a variety, and closures of random
/// seeds inside members, must stay in that variety.
fn variety_spot_checks(
    entries: &[CorpusEntry],
    checks: &[AlgebraCheck],
    seed: u64,
) -> (usize, Vec<(String, String)>, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut tasks: Vec<(String, FiniteSkewLattice, Vec<&str>)> = Vec::new();
    let props = |i: usize| -> Vec<&str> {
        checks[i].report.as_ref().map_or(Vec::new(), |r| VARIETIES.iter().copied().filter(|p| r.property(p)).collect())
    };
    let members: Vec<usize> = (0..entries.len()).filter(|&i| entries[i].algebra.len() >= 2 && !props(i).is_empty()).collect();
    for _ in 0..24 {
        if members.is_empty() {
            break;
        }
        let (i, j) = (members[rng.gen_range(0..members.len())], members[rng.gen_range(0..members.len())]);
        let shared: Vec<&str> = props(i).into_iter().filter(|p| props(j).contains(p)).collect();
        if shared.is_empty() {
            continue;
        }
        if let Ok(p) = direct_product_with_limit(&entries[i].algebra, &entries[j].algebra, 36) {
            tasks.push((format!("{}*{}", entries[i].name, entries[j].name), p, shared));
        }
    }
    for _ in 0..24 {
        if members.is_empty() {
            break;
        }
        let i = members[rng.gen_range(0..members.len())];
        let alg = &entries[i].algebra;
        let seed_elems: Vec<usize> = (0..3).map(|_| rng.gen_range(0..alg.len())).collect();
        let sub = alg.induced(&subalgebra_closure(alg, &seed_elems)).expect("closure is closed");
        tasks.push((format!("{}<{}>", entries[i].name, alg.labels(&seed_elems).join(",")), sub, props(i)));
    }
    let results: Vec<Result<Vec<(String, String)>>> = tasks
        .par_iter()
        .map(|(name, alg, props)| {
            let r = classify_report(alg)?;
            Ok(props
                .iter()
                .filter(|p| !r.property(p))
                .map(|p| (name.clone(), format!("variety not closed: {p} lost")))
                .collect())
        })
        .collect();
    let mut failures = Vec::new();
    let mut internal = false;
    for (res, (name, _, _)) in results.into_iter().zip(&tasks) {
        match res {
            Ok(f) => failures.extend(f),
            Err(e) => {
                internal |= e.is_internal();
                failures.push((name.clone(), e.to_string()));
            }
        }
    }
    (tasks.len(), failures, internal)
}
