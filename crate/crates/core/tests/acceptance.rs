//! Acceptance suite. Run with `--nocapture` to see one line per criterion:
//!
//! ```text
//! cargo test -p skewlat --test acceptance -- --nocapture
//! ```
//!
//! Tolerances: at most 1 s per X_n/Y_n algebra for criterion 1 and 60 s for
//! the corpus sweep of criterion 3, measured on the test profile.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use skewlat::algebra::{check_embedding, find_embedding, ElementMap, FiniteSkewLattice};
use skewlat::classify::{
    chain_midpoint_witness, classify_report, find_forbidden, find_forbidden_in, Analysis, CategoricalMode,
    ClassificationReport, ForbiddenKind, OrderClosedMode, StrictMode,
};
use skewlat::construct::{gen_corpus, gen_twisted_primitive, gen_xn, gen_yn, CorpusEntry, CorpusLimits};
use skewlat::coset::{
    coset_bijections, coset_partitions, determine_witness, parallel_classes, reflective_factorization, Reflectivity,
};
use skewlat::crosscheck::reflective_family;
use skewlat::order::{maximal_images, verify_pullback, Structure};
use skewlat::validate::validate;

const PER_ALGEBRA: Duration = Duration::from_secs(1);
const CORPUS_SWEEP: Duration = Duration::from_secs(60);
const CORPUS_SEED: u64 = 0;
const MIN_CORPUS: usize = 200;
const MAX_CARRIER: usize = 24;

struct Outcome {
    id: usize,
    title: &'static str,
    problems: Vec<String>,
    note: String,
}

impl Outcome {
    fn new(id: usize, title: &'static str) -> Self {
        Outcome { id, title, problems: Vec::new(), note: String::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }

    fn line(&self) -> String {
        let status = if self.problems.is_empty() { "PASS" } else { "FAIL" };
        let mut s = format!("{status} criterion {}: {}", self.id, self.title);
        if !self.note.is_empty() {
            s += &format!(" ({})", self.note);
        }
        for p in self.problems.iter().take(5) {
            s += &format!("\n    {p}");
        }
        if self.problems.len() > 5 {
            s += &format!("\n    ... {} more", self.problems.len() - 5);
        }
        s
    }
}

/// Per-member data shared by the corpus criteria.
struct Member {
    name: String,
    report: ClassificationReport,
    categorical_modes: Vec<bool>,
    strict_modes: Vec<bool>,
    order_closed_modes: Vec<bool>,
    forbidden: Option<(ForbiddenKind, usize, bool)>,
    strict_midpoint_failures: usize,
}

fn analyse(e: &CorpusEntry) -> Member {
    let an = Analysis::new(&e.algebra).expect("corpus member analyses");
    let report = classify_report(&e.algebra).expect("corpus member classifies");
    let strict_modes: Vec<bool> =
        StrictMode::ALL.iter().map(|&m| an.strictly_categorical(m).unwrap().holds).collect();
    let strict_midpoint_failures = if strict_modes[0] {
        an.st.three_chains().into_iter().filter(|&ch| chain_midpoint_witness(&an, ch).is_some()).count()
    } else {
        0
    };
    let forbidden = find_forbidden_in(&an)
        .unwrap()
        .map(|w| (w.kind, w.n, check_embedding(&w.embedding(&e.algebra))));
    Member {
        name: e.name.clone(),
        categorical_modes: CategoricalMode::ALL.iter().map(|&m| an.categorical(m).unwrap().holds).collect(),
        strict_modes,
        order_closed_modes: OrderClosedMode::ALL.iter().map(|&m| an.order_closed(m).holds).collect(),
        forbidden,
        strict_midpoint_failures,
        report,
    }
}

fn all_equal(v: &[bool]) -> bool {
    v.iter().all(|&x| x == v[0])
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new(1, "X_n/Y_n golden values, categorical iff n=1");
    let mut slowest = Duration::ZERO;
    for n in 1..=6 {
        for (kind, gen) in [("X", gen_xn as fn(usize) -> _), ("Y", gen_yn)] {
            let start = Instant::now();
            let alg = gen(n).unwrap();
            o.require(validate(&alg).ok, || format!("{kind}_{n} fails validation"));
            o.require(alg.len() == 2 * n + 4, || format!("{kind}_{n} has {} elements", alg.len()));
            let an = Analysis::new(&alg).unwrap();
            for &m in CategoricalMode::ALL {
                let holds = an.categorical(m).unwrap().holds;
                o.require(holds == (n == 1), || format!("{kind}_{n} categorical={holds} in mode {m}"));
            }
            let took = start.elapsed();
            slowest = slowest.max(took);
            o.require(took < PER_ALGEBRA, || format!("{kind}_{n} took {took:.2?}"));
        }
    }
    let x = gen_xn(2).unwrap();
    let e = |s| x.el(s);
    o.require(x.join(e("a1"), e("c2")) == e("a2"), || "a1∨c2 ≠ a2".into());
    o.require(x.meet(e("a1"), e("b4")) == e("b3"), || "a1∧b4 ≠ b3".into());
    o.require(x.join(e("b1"), e("c2")) == e("b4"), || "b1∨c2 ≠ b4".into());
    o.note = format!("slowest {slowest:.2?}");
    o
}

fn criterion_2(members: &[Member]) -> Outcome {
    let mut o = Outcome::new(2, "forbidden witnesses are exact embeddings, none when categorical");
    for n in 2..=6 {
        for (kind, alg) in [(ForbiddenKind::X, gen_xn(n).unwrap()), (ForbiddenKind::Y, gen_yn(n).unwrap())] {
            match find_forbidden(&alg).unwrap() {
                Some(w) => {
                    o.require(w.kind == kind && w.n == n, || format!("{kind}_{n} gave {}_{}", w.kind, w.n));
                    o.require(check_embedding(&w.embedding(&alg)), || format!("{kind}_{n} witness not an embedding"));
                }
                None => o.problems.push(format!("{kind}_{n}: no witness")),
            }
        }
    }
    let mut categorical = 0;
    for m in members {
        if m.report.property("categorical") {
            categorical += 1;
            o.require(m.forbidden.is_none(), || format!("{}: witness on a categorical algebra", m.name));
        } else {
            o.require(m.forbidden.is_some_and(|f| f.2), || format!("{}: no verified witness", m.name));
        }
    }
    let xs: Vec<FiniteSkewLattice> = (1..=4).map(|n| gen_xn(n).unwrap()).collect();
    for (i, src) in xs.iter().enumerate() {
        for (j, dst) in xs.iter().enumerate() {
            if i != j {
                let found = find_embedding(src, dst);
                o.require(found.is_none(), || format!("X_{} embeds in X_{}", i + 1, j + 1));
                if let Some(map) = found {
                    o.require(check_embedding(&ElementMap::new(src, dst, map)), || "bogus embedding".into());
                }
            }
        }
    }
    o.note = format!("{categorical} categorical members checked");
    o
}

fn criterion_3(members: &[Member], sweep: Duration) -> Outcome {
    let mut o = Outcome::new(3, "five categorical modes agree on the corpus");
    o.require(members.len() >= MIN_CORPUS, || format!("corpus has only {} members", members.len()));
    for m in members {
        o.require(all_equal(&m.categorical_modes), || format!("{}: {:?}", m.name, m.categorical_modes));
    }
    o.require(sweep < CORPUS_SWEEP, || format!("corpus sweep took {sweep:.2?}"));
    o.note = format!("{} algebras, sweep {sweep:.2?}", members.len());
    o
}

fn criterion_4(members: &[Member]) -> Outcome {
    let mut o = Outcome::new(4, "eight strict modes agree; strict chains have unique midpoints");
    let mut strict = 0;
    for m in members {
        o.require(all_equal(&m.strict_modes), || format!("{}: {:?}", m.name, m.strict_modes));
        strict += usize::from(m.strict_modes[0]);
        o.require(m.strict_midpoint_failures == 0, || {
            format!("{}: {} chains violate the midpoint conclusions", m.name, m.strict_midpoint_failures)
        });
    }
    o.note = format!("{strict} strictly categorical");
    o
}

fn criterion_5(members: &[Member]) -> Outcome {
    let mut o = Outcome::new(5, "implications between properties");
    let rules = [
        ("distributive", "categorical"),
        ("normal", "strictly_categorical"),
        ("conormal", "strictly_categorical"),
        ("strictly_categorical", "categorical"),
    ];
    for m in members {
        for (p, q) in rules {
            o.require(!m.report.property(p) || m.report.property(q), || format!("{}: {p} but not {q}", m.name));
        }
    }
    o
}

fn criterion_6(members: &[Member]) -> Outcome {
    let mut o = Outcome::new(6, "order-closed modes agree; X_n closed; twisted primitive rejected");
    for m in members {
        o.require(all_equal(&m.order_closed_modes), || format!("{}: {:?}", m.name, m.order_closed_modes));
    }
    for n in 1..=6 {
        let an_x = gen_xn(n).unwrap();
        let an = Analysis::new(&an_x).unwrap();
        for &mode in OrderClosedMode::ALL {
            o.require(an.order_closed(mode).holds, || format!("X_{n} not order-closed in mode {mode}"));
        }
    }
    let tw = gen_twisted_primitive();
    let an = Analysis::new(&tw).unwrap();
    let direct = an.order_closed(OrderClosedMode::Direct);
    let labels = direct.witness_labels(&tw);
    o.require(labels.as_deref() == Some(&["a1", "a3", "b1", "b3"].map(String::from)[..]), || {
        format!("twisted direct witness {labels:?}")
    });
    o.require(!an.order_closed(OrderClosedMode::Identity).holds, || "twisted passes the identity".into());
    o.note = format!("witness {}", labels.unwrap_or_default().join(","));
    o
}

fn criterion_7(corpus: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new(7, "pullback, lattice quotient, rectangular D-classes");
    let problems: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|e| {
            let alg = &e.algebra;
            let mut p = Vec::new();
            if !verify_pullback(alg) {
                p.push(format!("{}: pullback fails", e.name));
            }
            match maximal_images(alg) {
                Ok(im) if im.s_over_d.is_commutative() => {}
                _ => p.push(format!("{}: S/D is not a lattice", e.name)),
            }
            let st = Structure::new(alg).unwrap();
            for id in 0..st.num_classes() {
                let class = st.class(id);
                if class.iter().any(|&x| class.iter().any(|&y| alg.meet_sandwich(x, y) != x)) {
                    p.push(format!("{}: D-class {} not rectangular", e.name, alg.labels(class).join(",")));
                }
            }
            p
        })
        .collect();
    o.problems = problems;
    o
}

fn coset_problems(e: &CorpusEntry) -> (usize, Vec<String>) {
    let alg = &e.algebra;
    let st = Structure::new(alg).unwrap();
    let mut p = Vec::new();
    let mut expected: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let pairs = st.comparable_pairs();
    for &(a, b) in &pairs {
        let cp = match coset_partitions(&st, a, b) {
            Ok(cp) => cp,
            Err(err) => {
                p.push(format!("{}: {err}", e.name));
                continue;
            }
        };
        for (cosets, class) in [(&cp.upper_cosets, a), (&cp.lower_cosets, b)] {
            let mut covered: Vec<usize> = cosets.sets.iter().flatten().copied().collect();
            covered.sort_unstable();
            if covered != st.class(class) {
                p.push(format!("{}: cosets do not partition a class", e.name));
            }
        }
        let sizes: BTreeSet<usize> = cp.upper_cosets.sets.iter().chain(&cp.lower_cosets.sets).map(Vec::len).collect();
        if sizes.len() != 1 {
            p.push(format!("{}: coset sizes {sizes:?}", e.name));
        }
        match coset_bijections(&st, &cp) {
            Ok(bijections) => {
                for f in &bijections {
                    let iso = f.pairs.iter().all(|&(x, fx)| {
                        f.pairs.iter().all(|&(y, fy)| {
                            f.apply(alg.meet(x, y)) == Some(alg.meet(fx, fy))
                                && f.apply(alg.join(x, y)) == Some(alg.join(fx, fy))
                        })
                    });
                    if !iso {
                        p.push(format!("{}: bijection {} is not an isomorphism", e.name, f.display(alg)));
                    }
                    expected.insert(f.pairs.clone());
                }
            }
            Err(err) => p.push(format!("{}: {err}", e.name)),
        }
        if let Some((x, y)) = determine_witness(&st, &cp) {
            p.push(format!("{}: tables not reproduced at ({}, {})", e.name, alg.name(x), alg.name(y)));
        }
    }
    match parallel_classes(&st) {
        Ok(pc) => {
            let got: BTreeSet<Vec<(usize, usize)>> = pc
                .classes
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.sort_unstable();
                    c
                })
                .collect();
            if got != expected {
                p.push(format!("{}: parallel classes differ from coset bijections", e.name));
            }
        }
        Err(err) => p.push(format!("{}: {err}", e.name)),
    }
    (pairs.len(), p)
}

fn criterion_8(corpus: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new(8, "coset partitions, bijections, determination, parallelism");
    let results: Vec<(usize, Vec<String>)> = corpus.par_iter().map(coset_problems).collect();
    let pairs: usize = results.iter().map(|r| r.0).sum();
    o.problems = results.into_iter().flat_map(|r| r.1).collect();
    o.note = format!("{pairs} comparable class pairs");
    o
}

fn reflective_counts(alg: &FiniteSkewLattice) -> (usize, usize) {
    let an = Analysis::new(alg).unwrap();
    let (mut examined, mut factoring) = (0, 0);
    for chain in reflective_family(&an) {
        let sub = alg.induced(&chain).unwrap();
        let st = Structure::new(&sub).unwrap();
        let triples = st.three_chains();
        if st.num_classes() != 3 || triples.len() != 1 {
            continue;
        }
        match reflective_factorization(&st, triples[0]).unwrap() {
            Reflectivity::NotReflective => {}
            Reflectivity::Factors(_) => {
                examined += 1;
                factoring += 1;
            }
            Reflectivity::NonFactorable => examined += 1,
        }
    }
    (examined, factoring)
}

fn criterion_9(corpus: &[CorpusEntry], members: &[Member]) -> Outcome {
    let mut o = Outcome::new(9, "categorical iff every reflective chain factors");
    let counts: Vec<(usize, usize)> = corpus.par_iter().map(|e| reflective_counts(&e.algebra)).collect();
    for (m, &(examined, factoring)) in members.iter().zip(&counts) {
        let categorical = m.report.property("categorical");
        o.require((examined == factoring) == categorical, || {
            format!("{}: {factoring}/{examined} factor, categorical={categorical}", m.name)
        });
    }
    for (n, factors) in [(1, true), (2, false)] {
        let x = gen_xn(n).unwrap();
        let st = Structure::new(&x).unwrap();
        let r = reflective_factorization(&st, st.three_chains()[0]).unwrap();
        o.require(matches!(r, Reflectivity::Factors(_)) == factors && r.is_reflective(), || {
            format!("X_{n}: expected factors={factors}")
        });
    }
    let examined: usize = counts.iter().map(|c| c.0).sum();
    let factoring: usize = counts.iter().map(|c| c.1).sum();
    o.note = format!("{examined} reflective chains, {factoring} factor");
    o
}

#[test]
fn acceptance_criteria() {
    let corpus = gen_corpus(CORPUS_SEED, &CorpusLimits::default());
    assert!(corpus.iter().all(|e| e.algebra.len() <= MAX_CARRIER));

    let first = criterion_1();
    let start = Instant::now();
    let members: Vec<Member> = corpus.par_iter().map(analyse).collect();
    let sweep = start.elapsed();

    let outcomes = [
        first,
        criterion_2(&members),
        criterion_3(&members, sweep),
        criterion_4(&members),
        criterion_5(&members),
        criterion_6(&members),
        criterion_7(&corpus),
        criterion_8(&corpus),
        criterion_9(&corpus, &members),
    ];
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.problems.is_empty()).map(|o| o.id).collect();
    println!("{} of {} criteria pass", outcomes.len() - failed.len(), outcomes.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
