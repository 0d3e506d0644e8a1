//! Generators: chains, rectangular algebras, skew chains assembled from coset
//! data (including the forbidden families `X_n` / `Y_n`), partial-function
//! algebras, and a seeded test corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{direct_product_with_limit, max_carrier, subalgebra_closure, FiniteSkewLattice};
use crate::error::{Result, SklError};
use crate::validate::validate;

/// Total order `e0 < e1 < … < e{k-1}` with meet = min and join = max.
pub fn gen_chain(k: usize) -> Result<FiniteSkewLattice> {
    if k == 0 {
        return Err(SklError::OutOfBounds("chain length must be at least 1".into()));
    }
    check_size(k)?;
    Ok(FiniteSkewLattice::from_fn((0..k).map(|i| format!("e{i}")).collect(), usize::min, usize::max))
}

/// Rectangular algebra on `p × q` pairs: `(a,b)∧(c,d) = (a,d)`, `(a,b)∨(c,d) = (c,b)`.
pub fn gen_rectangular(p: usize, q: usize) -> Result<FiniteSkewLattice> {
    if p == 0 || q == 0 {
        return Err(SklError::OutOfBounds("rectangular dimensions must be positive".into()));
    }
    check_size(p.saturating_mul(q))?;
    let names = (0..p * q).map(|i| format!("r{}_{}", i / q + 1, i % q + 1)).collect();
    Ok(FiniteSkewLattice::from_fn(
        names,
        |x, y| (x / q) * q + y % q,
        |x, y| (y / q) * q + x % q,
    ))
}

fn check_size(size: usize) -> Result<()> {
    let max = max_carrier();
    if size > max {
        return Err(SklError::CarrierTooLarge { size, max });
    }
    Ok(())
}

/// Orientation of the rectangular structure inside each D-class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hand {
    /// `x∧y = x`, `x∨y = y` inside a D-class.
    #[default]
    Left,
    /// `x∧y = y`, `x∨y = x` inside a D-class.
    Right,
}

/// A coset bijection given by positions inside an upper and a lower coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetMap {
    pub upper: usize,
    pub lower: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// Coset data between two levels of a skew chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPair {
    pub upper: usize,
    pub lower: usize,
    /// Partition of the upper level into lower-level cosets, by element index.
    pub upper_cosets: Vec<Vec<usize>>,
    /// Partition of the lower level into upper-level cosets.
    pub lower_cosets: Vec<Vec<usize>>,
    /// One map per (upper coset, lower coset) pair.
    pub bijections: Vec<CosetMap>,
}

/// A skew chain `L0 > L1 > …` described by its cosets and coset bijections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewChainSpec {
    pub names: Vec<String>,
    /// Levels from top to bottom, by element index.
    pub levels: Vec<Vec<usize>>,
    /// Coset data for every pair of levels `i < j`.
    pub pairs: Vec<LevelPair>,
    pub hand: Hand,
}

// Per pair of levels: for each element, its coset id; for each coset pair, the map.
struct PairTables {
    coset_of: Vec<usize>,
    down: Vec<Vec<usize>>, // [coset pair] -> element -> image (usize::MAX outside)
    up: Vec<Vec<usize>>,
    lower_count: usize,
}

/// Builds the algebra determined by the coset data.
///
/// Inside a level the operations are rectangular with the chosen
/// handedness. Between levels `u ∈ A` and `l ∈ B` with `A > B`, the
/// left-handed rules are `u∧l = φ(u)` and `u∨l = φ⁻¹(l)` for the coset
/// bijection φ from the coset of `u` onto the coset of `l`, with `l∧u = l` and
/// `l∨u = u`. Right-handed algebras are built as the mirror image. The result
/// must pass validation.
pub fn gen_skew_chain(spec: &SkewChainSpec) -> Result<FiniteSkewLattice> {
    let n = spec.names.len();
    check_size(n)?;
    let bad = |m: String| Err(SklError::SpecInconsistent(m));
    let mut level_of = vec![usize::MAX; n];
    for (i, level) in spec.levels.iter().enumerate() {
        if level.is_empty() {
            return bad(format!("level {i} is empty"));
        }
        for &x in level {
            if x >= n || level_of[x] != usize::MAX {
                return bad(format!("element {x} is out of range or on two levels"));
            }
            level_of[x] = i;
        }
    }
    if level_of.contains(&usize::MAX) {
        return bad("some element is on no level".into());
    }
    let k = spec.levels.len();
    let mut tables: Vec<Option<PairTables>> = (0..k * k).map(|_| None).collect();
    for pair in &spec.pairs {
        let (i, j) = (pair.upper, pair.lower);
        if i >= j || j >= k {
            return bad(format!("level pair ({i}, {j}) is not descending"));
        }
        if tables[i * k + j].is_some() {
            return bad(format!("level pair ({i}, {j}) given twice"));
        }
        tables[i * k + j] = Some(pair_tables(n, &spec.levels[i], &spec.levels[j], pair)?);
    }
    for i in 0..k {
        for j in i + 1..k {
            if tables[i * k + j].is_none() {
                return bad(format!("missing coset data for levels ({i}, {j})"));
            }
        }
    }
    let table = |i: usize, j: usize| tables[i * k + j].as_ref().unwrap();
    let slot = |t: &PairTables, u: usize, l: usize| t.coset_of[u] * t.lower_count + t.coset_of[l];
    let meet = |x: usize, y: usize| {
        let (lx, ly) = (level_of[x], level_of[y]);
        if lx >= ly {
            x
        } else {
            let t = table(lx, ly);
            t.down[slot(t, x, y)][x]
        }
    };
    let join = |x: usize, y: usize| {
        let (lx, ly) = (level_of[x], level_of[y]);
        if lx >= ly {
            y
        } else {
            let t = table(lx, ly);
            t.up[slot(t, x, y)][y]
        }
    };
    let left = FiniteSkewLattice::from_fn(spec.names.clone(), meet, join);
    let alg = match spec.hand {
        Hand::Left => left,
        Hand::Right => left.mirror(),
    };
    let report = validate(&alg);
    if !report.ok {
        let f = &report.failures[0];
        return bad(format!("{} fails at ({})", f.law, f.witness.join(", ")));
    }
    Ok(alg)
}

fn pair_tables(n: usize, upper: &[usize], lower: &[usize], pair: &LevelPair) -> Result<PairTables> {
    let bad = |m: String| Err(SklError::SpecInconsistent(m));
    let mut coset_of = vec![usize::MAX; n];
    for (cosets, level) in [(&pair.upper_cosets, upper), (&pair.lower_cosets, lower)] {
        let mut covered = 0;
        for (id, coset) in cosets.iter().enumerate() {
            for &x in coset {
                if !level.contains(&x) || coset_of[x] != usize::MAX {
                    return bad(format!("cosets of levels ({}, {}) do not partition the levels", pair.upper, pair.lower));
                }
                coset_of[x] = id;
                covered += 1;
            }
        }
        if covered != level.len() {
            return bad(format!("cosets of levels ({}, {}) do not cover the levels", pair.upper, pair.lower));
        }
    }
    let size = pair.upper_cosets.first().map_or(0, Vec::len);
    if pair.upper_cosets.iter().chain(&pair.lower_cosets).any(|c| c.len() != size) {
        return bad(format!("cosets of levels ({}, {}) differ in size", pair.upper, pair.lower));
    }
    let (uc, lc) = (pair.upper_cosets.len(), pair.lower_cosets.len());
    let mut down = vec![Vec::new(); uc * lc];
    let mut up = vec![Vec::new(); uc * lc];
    for map in &pair.bijections {
        if map.upper >= uc || map.lower >= lc {
            return bad("bijection refers to a missing coset".into());
        }
        let s = map.upper * lc + map.lower;
        if !down[s].is_empty() {
            return bad(format!("two bijections for coset pair ({}, {})", map.upper, map.lower));
        }
        let (xs, ys) = (&pair.upper_cosets[map.upper], &pair.lower_cosets[map.lower]);
        let mut d = vec![usize::MAX; n];
        let mut u = vec![usize::MAX; n];
        for &(p, q) in &map.pairs {
            if p >= size || q >= size || d[xs[p]] != usize::MAX || u[ys[q]] != usize::MAX {
                return bad(format!("map for coset pair ({}, {}) is not a bijection", map.upper, map.lower));
            }
            d[xs[p]] = ys[q];
            u[ys[q]] = xs[p];
        }
        if map.pairs.len() != size {
            return bad(format!("map for coset pair ({}, {}) is not total", map.upper, map.lower));
        }
        down[s] = d;
        up[s] = u;
    }
    if down.iter().any(Vec::is_empty) {
        return bad(format!("levels ({}, {}) lack a bijection for some coset pair", pair.upper, pair.lower));
    }
    Ok(PairTables { coset_of, down, up, lower_count: lc })
}

/// A primitive skew lattice `A > B` given by cosets and coset bijections.
/// This is also the JSON input form accepted by `skl generate primitive`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveSpec {
    /// B-cosets in A, as element labels.
    pub upper_cosets: Vec<Vec<String>>,
    /// A-cosets in B.
    pub lower_cosets: Vec<Vec<String>>,
    /// One map per (upper coset, lower coset) pair, as positions in the cosets.
    pub bijections: Vec<CosetMap>,
    #[serde(default)]
    pub hand: Hand,
}

impl PrimitiveSpec {
    fn to_chain_spec(&self) -> SkewChainSpec {
        let names: Vec<String> = self.upper_cosets.iter().chain(&self.lower_cosets).flatten().cloned().collect();
        let mut next = 0;
        let mut index = |cosets: &[Vec<String>]| -> Vec<Vec<usize>> {
            cosets
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|_| {
                            next += 1;
                            next - 1
                        })
                        .collect()
                })
                .collect()
        };
        let upper_cosets = index(&self.upper_cosets);
        let lower_cosets = index(&self.lower_cosets);
        SkewChainSpec {
            levels: vec![upper_cosets.concat(), lower_cosets.concat()],
            pairs: vec![LevelPair {
                upper: 0,
                lower: 1,
                upper_cosets,
                lower_cosets,
                bijections: self.bijections.clone(),
            }],
            names,
            hand: self.hand,
        }
    }
}

/// Builds `A > B` from a [`PrimitiveSpec`]; rejects specs whose tables fail a law.
pub fn gen_primitive(spec: &PrimitiveSpec) -> Result<FiniteSkewLattice> {
    let chain = spec.to_chain_spec();
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = chain.names.iter().find(|n| !seen.insert(n.as_str())) {
        return Err(SklError::SpecInconsistent(format!("duplicate element name `{dup}`")));
    }
    if chain.names.iter().any(|n| n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '#')) {
        return Err(SklError::SpecInconsistent("invalid element name".into()));
    }
    gen_skew_chain(&chain)
}

/// The primitive algebra with two B-cosets in A and two A-cosets in B whose
/// last coset bijection is twisted, so that it is not order-closed.
pub fn twisted_primitive_spec() -> PrimitiveSpec {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let map = |upper, lower, pairs: &[(usize, usize)]| CosetMap { upper, lower, pairs: pairs.to_vec() };
    PrimitiveSpec {
        upper_cosets: vec![s(&["a1", "a2"]), s(&["a3", "a4"])],
        lower_cosets: vec![s(&["b1", "b2"]), s(&["b3", "b4"])],
        bijections: vec![
            map(0, 0, &[(0, 0), (1, 1)]),
            map(0, 1, &[(0, 0), (1, 1)]),
            map(1, 0, &[(0, 0), (1, 1)]),
            map(1, 1, &[(0, 1), (1, 0)]),
        ],
        hand: Hand::Left,
    }
}

pub fn gen_twisted_primitive() -> FiniteSkewLattice {
    gen_primitive(&twisted_primitive_spec()).expect("twisted primitive is a skew lattice")
}

fn xn_spec(n: usize, hand: Hand) -> SkewChainSpec {
    // indices: a1 a2 | b1 .. b2n | c1 c2
    let b = |i: usize| 2 + (i - 1); // 1-based b_i
    let (c1, c2) = (2 * n + 2, 2 * n + 3);
    let mut names = vec!["a1".to_string(), "a2".to_string()];
    names.extend((1..=2 * n).map(|i| format!("b{i}")));
    names.extend(["c1".to_string(), "c2".to_string()]);

    let a_cosets_in_b: Vec<Vec<usize>> = (0..n).map(|k| vec![b(2 * k + 1), b(2 * k + 2)]).collect();
    // C-coset k holds b_{2k} (below a2, above c2) and b_{2k+1}, with b_0 = b_{2n}
    let c_cosets_in_b: Vec<Vec<usize>> = (0..n)
        .map(|k| {
            let even = if k == 0 { 2 * n } else { 2 * k };
            vec![b(even), b(2 * k + 1)]
        })
        .collect();
    let straight = |upper, lower| CosetMap { upper, lower, pairs: vec![(0, 0), (1, 1)] };
    let crossed = |upper, lower| CosetMap { upper, lower, pairs: vec![(0, 1), (1, 0)] };
    SkewChainSpec {
        names,
        levels: vec![vec![0, 1], (2..2 + 2 * n).collect(), vec![c1, c2]],
        pairs: vec![
            LevelPair {
                upper: 0,
                lower: 1,
                upper_cosets: vec![vec![0, 1]],
                bijections: (0..n).map(|k| straight(0, k)).collect(),
                lower_cosets: a_cosets_in_b,
            },
            LevelPair {
                upper: 1,
                lower: 2,
                bijections: (0..n).map(|k| crossed(k, 0)).collect(),
                upper_cosets: c_cosets_in_b,
                lower_cosets: vec![vec![c1, c2]],
            },
            LevelPair {
                upper: 0,
                lower: 2,
                upper_cosets: vec![vec![0, 1]],
                lower_cosets: vec![vec![c1, c2]],
                bijections: vec![straight(0, 0)],
            },
        ],
        hand,
    }
}

fn check_xn_bound(n: usize) -> Result<()> {
    let bound = max_carrier().saturating_sub(4) / 2;
    if n == 0 || n > bound {
        return Err(SklError::OutOfBounds(format!("n must lie in 1..={bound}, got {n}")));
    }
    Ok(())
}

/// The left-handed skew chain `X_n`: `A = {a1,a2} > B = {b1..b2n} > C = {c1,c2}`
/// with `a1 > b_odd > c1`, `a2 > b_even > c2`, A-cosets `{b1,b2 | b3,b4 | …}`
/// and C-cosets `{b2n,b1 | b2,b3 | …}`.
pub fn gen_xn(n: usize) -> Result<FiniteSkewLattice> {
    check_xn_bound(n)?;
    gen_skew_chain(&xn_spec(n, Hand::Left))
}

/// The right-handed dual `Y_n` of [`gen_xn`], on the same labels.
pub fn gen_yn(n: usize) -> Result<FiniteSkewLattice> {
    check_xn_bound(n)?;
    gen_skew_chain(&xn_spec(n, Hand::Right))
}

/// A left-handed chain `A > B > C` with `|A| = |C| = 2` and `B` made of two
/// blocks that are simultaneously A-cosets and C-cosets. Categorical, but the
/// A-coset of one block misses the C-coset of the other.
pub fn gen_split_middle(hand: Hand) -> FiniteSkewLattice {
    let names = ["a1", "a2", "b1", "b2", "b3", "b4", "c1", "c2"].map(String::from).to_vec();
    let straight = |upper, lower| CosetMap { upper, lower, pairs: vec![(0, 0), (1, 1)] };
    let blocks = vec![vec![2, 3], vec![4, 5]];
    let spec = SkewChainSpec {
        names,
        levels: vec![vec![0, 1], vec![2, 3, 4, 5], vec![6, 7]],
        pairs: vec![
            LevelPair {
                upper: 0,
                lower: 1,
                upper_cosets: vec![vec![0, 1]],
                lower_cosets: blocks.clone(),
                bijections: vec![straight(0, 0), straight(0, 1)],
            },
            LevelPair {
                upper: 1,
                lower: 2,
                upper_cosets: blocks,
                lower_cosets: vec![vec![6, 7]],
                bijections: vec![straight(0, 0), straight(1, 0)],
            },
            LevelPair {
                upper: 0,
                lower: 2,
                upper_cosets: vec![vec![0, 1]],
                lower_cosets: vec![vec![6, 7]],
                bijections: vec![straight(0, 0)],
            },
        ],
        hand,
    };
    gen_skew_chain(&spec).expect("split-middle chain is a skew lattice")
}

/// All partial functions from an `m`-set to a `k`-set with
/// `f∧g = g|dom f ∩ dom g` and `f∨g = f ∪ g|dom g ∖ dom f`.
///
/// Labels list the value at each point, `-` where undefined: `f[1,-,2]`.
pub fn gen_partial_functions(m: usize, k: usize) -> Result<FiniteSkewLattice> {
    if m == 0 || k == 0 {
        return Err(SklError::OutOfBounds("m and k must be positive".into()));
    }
    let size = (k + 1)
        .checked_pow(m as u32)
        .ok_or(SklError::CarrierTooLarge { size: usize::MAX, max: max_carrier() })?;
    check_size(size)?;
    // digit 0 = undefined, digit v = value v
    let digits = |mut f: usize| {
        let mut d = vec![0; m];
        for slot in d.iter_mut() {
            *slot = f % (k + 1);
            f /= k + 1;
        }
        d
    };
    let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &v| acc * (k + 1) + v);
    let names = (0..size)
        .map(|f| {
            let vals: Vec<String> = digits(f)
                .iter()
                .map(|&v| if v == 0 { "-".to_string() } else { v.to_string() })
                .collect();
            format!("f[{}]", vals.join(","))
        })
        .collect();
    Ok(FiniteSkewLattice::from_fn(
        names,
        |f, g| {
            let (df, dg) = (digits(f), digits(g));
            let d: Vec<usize> = df.iter().zip(&dg).map(|(&a, &b)| if a != 0 && b != 0 { b } else { 0 }).collect();
            encode(&d)
        },
        |f, g| {
            let (df, dg) = (digits(f), digits(g));
            let d: Vec<usize> = df.iter().zip(&dg).map(|(&a, &b)| if a != 0 { a } else { b }).collect();
            encode(&d)
        },
    ))
}

/// Bounds for [`gen_corpus`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusLimits {
    /// Largest carrier admitted.
    pub max_size: usize,
    /// Random primitive specs attempted.
    pub primitive_attempts: usize,
    /// Subalgebra closures of random seeds inside products.
    pub closures: usize,
}

impl Default for CorpusLimits {
    fn default() -> Self {
        CorpusLimits { max_size: 24, primitive_attempts: 40, closures: 90 }
    }
}

/// A named corpus member.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: FiniteSkewLattice,
}

fn random_primitive(rng: &mut ChaCha8Rng) -> PrimitiveSpec {
    let uc = rng.gen_range(1..=2);
    let lc = rng.gen_range(1..=2);
    let size = rng.gen_range(1..=2);
    let mut next_a = 0;
    let mut next_b = 0;
    let upper_cosets = (0..uc)
        .map(|_| {
            (0..size)
                .map(|_| {
                    next_a += 1;
                    format!("a{next_a}")
                })
                .collect()
        })
        .collect();
    let lower_cosets = (0..lc)
        .map(|_| {
            (0..size)
                .map(|_| {
                    next_b += 1;
                    format!("b{next_b}")
                })
                .collect()
        })
        .collect();
    let mut bijections = Vec::new();
    for upper in 0..uc {
        for lower in 0..lc {
            let mut perm: Vec<usize> = (0..size).collect();
            perm.shuffle(rng);
            bijections.push(CosetMap { upper, lower, pairs: perm.into_iter().enumerate().collect() });
        }
    }
    let hand = if rng.gen_bool(0.5) { Hand::Left } else { Hand::Right };
    PrimitiveSpec { upper_cosets, lower_cosets, bijections, hand }
}

/// Deterministic corpus: chains, rectangular algebras, `X_n`/`Y_n`, partial
/// functions, twisted and random primitives, selected duals, pairwise
/// products within the size limit, and closures of random seeds inside those
/// products. Every member passes validation and exact duplicates are dropped.
pub fn gen_corpus(seed: u64, limits: &CorpusLimits) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base: Vec<CorpusEntry> = Vec::new();
    let push = |list: &mut Vec<CorpusEntry>, name: String, alg: FiniteSkewLattice| {
        if alg.len() <= limits.max_size {
            list.push(CorpusEntry { name, algebra: alg });
        }
    };
    for k in 1..=4 {
        push(&mut base, format!("chain({k})"), gen_chain(k).unwrap());
    }
    for p in 1..=3 {
        for q in 1..=3 {
            if p * q > 1 {
                push(&mut base, format!("rectangular({p},{q})"), gen_rectangular(p, q).unwrap());
            }
        }
    }
    for n in 1..=4 {
        push(&mut base, format!("xn({n})"), gen_xn(n).unwrap());
        push(&mut base, format!("yn({n})"), gen_yn(n).unwrap());
    }
    for m in 1..=2 {
        for k in 1..=2 {
            push(&mut base, format!("partialfn({m},{k})"), gen_partial_functions(m, k).unwrap());
        }
    }
    let twisted = gen_twisted_primitive();
    push(&mut base, "twisted".into(), twisted.clone());
    push(&mut base, "twisted.mirror".into(), twisted.mirror());
    push(&mut base, "split-middle".into(), gen_split_middle(Hand::Left));
    push(&mut base, "split-middle.mirror".into(), gen_split_middle(Hand::Right));
    let mut primitive_count = 0;
    for _ in 0..limits.primitive_attempts {
        let spec = random_primitive(&mut rng);
        if let Ok(alg) = gen_primitive(&spec) {
            primitive_count += 1;
            push(&mut base, format!("primitive#{primitive_count}"), alg);
        }
    }
    let dual_sources: Vec<(String, FiniteSkewLattice)> = base
        .iter()
        .filter(|e| {
            ["xn(2)", "yn(3)", "partialfn(2,2)", "partialfn(1,2)", "twisted", "split-middle"].contains(&e.name.as_str())
        })
        .map(|e| (e.name.clone(), e.algebra.dual()))
        .collect();
    for (name, alg) in dual_sources {
        push(&mut base, format!("{name}.dual"), alg);
    }

    let mut products: Vec<CorpusEntry> = Vec::new();
    for i in 0..base.len() {
        for j in i..base.len() {
            let (a, b) = (&base[i], &base[j]);
            if a.algebra.len() < 2 || b.algebra.len() < 2 {
                continue;
            }
            if let Ok(p) = direct_product_with_limit(&a.algebra, &b.algebra, limits.max_size) {
                push(&mut products, format!("{}*{}", a.name, b.name), p);
            }
        }
    }

    let mut closures: Vec<CorpusEntry> = Vec::new();
    let mut attempts = 0;
    while closures.len() < limits.closures && attempts < limits.closures * 20 && !products.is_empty() {
        attempts += 1;
        let host = &products[rng.gen_range(0..products.len())];
        let size = rng.gen_range(2..=4);
        let seed_elems: Vec<usize> = (0..size).map(|_| rng.gen_range(0..host.algebra.len())).collect();
        let closed = subalgebra_closure(&host.algebra, &seed_elems);
        if closed.len() < 3 || closed.len() == host.algebra.len() {
            continue;
        }
        let sub = host.algebra.induced(&closed).expect("closure is closed");
        let labels = host.algebra.labels(&seed_elems).join(",");
        push(&mut closures, format!("{}<{}>", host.name, labels), sub);
    }

    let mut seen = std::collections::HashSet::new();
    base.into_iter()
        .chain(products)
        .chain(closures)
        .filter(|e| seen.insert((e.algebra.meet_rows(), e.algebra.join_rows())))
        .inspect(|e| debug_assert!(validate(&e.algebra).ok, "corpus member {} is invalid", e.name))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{green_partitions, handedness};

    #[test]
    fn chain_and_rectangular_shapes() {
        assert_eq!(gen_chain(1).unwrap().len(), 1);
        let c2 = gen_chain(2).unwrap();
        let (top, bot) = (c2.el("e1"), c2.el("e0"));
        assert_eq!(c2.meet(top, bot), bot);
        assert_eq!(c2.join(top, bot), top);
        assert!(gen_chain(0).is_err());

        let r = gen_rectangular(2, 2).unwrap();
        assert!(validate(&r).ok);
        for x in r.elements() {
            for y in r.elements() {
                assert_eq!(r.meet(x, y), r.join(y, x));
                if r.meet(x, y) == r.meet(y, x) {
                    assert_eq!(x, y, "rectangular algebras are anticommutative");
                }
            }
        }
        assert_eq!(gen_rectangular(1, 1).unwrap().len(), 1);
        let h = handedness(&gen_rectangular(1, 2).unwrap());
        assert!(h.left_handed != h.right_handed);
    }

    #[test]
    fn xn_shape_and_cited_products() {
        let x2 = gen_xn(2).unwrap();
        assert_eq!(x2.len(), 8);
        let e = |s| x2.el(s);
        assert_eq!(x2.join(e("a1"), e("c2")), e("a2"));
        assert_eq!(x2.meet(e("a1"), e("b4")), e("b3"));
        assert_eq!(x2.join(e("b1"), e("c2")), e("b4"));
        let g = green_partitions(&x2).unwrap();
        let sizes: Vec<usize> = g.d.classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 4, 2]);
        assert!(gen_xn(0).is_err());
    }

    #[test]
    fn primitive_rejections() {
        let mut spec = twisted_primitive_spec();
        spec.bijections.pop();
        assert!(matches!(gen_primitive(&spec), Err(SklError::SpecInconsistent(_))));
        let mut spec = twisted_primitive_spec();
        spec.lower_cosets[1].push("b5".into());
        assert!(gen_primitive(&spec).is_err());
    }

    #[test]
    fn partial_function_sizes() {
        assert_eq!(gen_partial_functions(1, 1).unwrap().len(), 2);
        let pf = gen_partial_functions(2, 2).unwrap();
        assert_eq!(pf.len(), 9);
        assert!(validate(&pf).ok);
        assert!(pf.index_of("f[1,-]").is_some());
    }
}
