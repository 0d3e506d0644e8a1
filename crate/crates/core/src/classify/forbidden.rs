use std::fmt;

use serde::Serialize;

use crate::algebra::{check_embedding, quotient_by, ElementMap, FiniteSkewLattice};
use crate::construct::{gen_xn, gen_yn};
use crate::coset::are_parallel;
use crate::error::{Result, SklError};
use crate::order::Structure;
use crate::partition::EquivPartition;

use super::{Analysis, CategoricalMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ForbiddenKind {
    X,
    Y,
}

impl fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForbiddenKind::X => "X",
            ForbiddenKind::Y => "Y",
        })
    }
}

/// A copy of `X_n` or `Y_n` inside an algebra.
#[derive(Clone, Debug)]
pub struct ForbiddenWitness {
    pub kind: ForbiddenKind,
    pub n: usize,
    /// `gen_xn(n)` or `gen_yn(n)`.
    pub source: FiniteSkewLattice,
    /// `map[i]` is the image of source element `i`.
    pub map: Vec<usize>,
}

impl ForbiddenWitness {
    pub fn embedding<'a>(&'a self, target: &'a FiniteSkewLattice) -> ElementMap<'a> {
        ElementMap::new(&self.source, target, self.map.clone())
    }

    /// `(source label, target label)` in source order.
    pub fn label_pairs(&self, target: &FiniteSkewLattice) -> Vec<(String, String)> {
        self.embedding(target).label_pairs()
    }
}

/// Finds a copy of `X_n` or `Y_n` (`n ≥ 2`) in a non-categorical algebra.
///
/// The search runs in the left-handed image `S/R` (for `X_n`) and then in the
/// right-handed image `S/L` (for `Y_n`). There, for the least strict pair
/// `a > c` with a midpoint `b` and a parallel pair `a′ > c′` for which the
/// walk `b ↦ a′∧b∧a′ ↦ c∨(a′∧b∧a′)∨c` needs more than one round to return
/// to `b`, the walk spells out `b1, …, b2n`. The copy is lifted back to the
/// algebra by fixing one L-class (R-class) per D-class along a chain
/// `a > b > c` of the algebra.
pub fn find_forbidden(alg: &FiniteSkewLattice) -> Result<Option<ForbiddenWitness>> {
    find_forbidden_in(&Analysis::new(alg)?)
}

pub fn find_forbidden_in(an: &Analysis<'_>) -> Result<Option<ForbiddenWitness>> {
    if an.categorical(CategoricalMode::Structural)?.holds {
        return Ok(None);
    }
    let alg = an.alg();
    let green = &an.st.green;
    for (kind, collapse, keep) in [(ForbiddenKind::X, &green.r, &green.l), (ForbiddenKind::Y, &green.l, &green.r)] {
        let image = quotient_by(alg, collapse)?;
        let ist = Structure::new(&image)?;
        for (n, in_image) in walks(&ist)? {
            let source = generator(kind, n)?;
            if !check_embedding(&ElementMap::new(&source, &image, in_image.clone())) {
                continue;
            }
            let map = lift(an, collapse, keep, &in_image);
            if check_embedding(&ElementMap::new(&source, alg, map.clone())) {
                return Ok(Some(ForbiddenWitness { kind, n, source, map }));
            }
        }
    }
    Err(SklError::internal("non-categorical algebra without a copy of X_n or Y_n"))
}

fn generator(kind: ForbiddenKind, n: usize) -> Result<FiniteSkewLattice> {
    match kind {
        ForbiddenKind::X => gen_xn(n),
        ForbiddenKind::Y => gen_yn(n),
    }
}

/// Candidate copies in a handed algebra, as `(n, map)` with `map` laid out
/// like the labels of `gen_xn(n)`: `a1 a2 b1 … b2n c1 c2`.
fn walks(st: &Structure<'_>) -> Result<Vec<(usize, Vec<usize>)>> {
    let t = st.alg;
    let gt = |x, y| st.orders.gt(x, y);
    let mut out = Vec::new();
    for (a, c) in st.strict_pairs() {
        let middle: Vec<usize> = t.elements().filter(|&b| gt(a, b) && gt(b, c)).collect();
        for &b in &middle {
            for &a2 in st.class(st.class_of(a)) {
                if a2 == a {
                    continue;
                }
                let c2 = t.meet_sandwich(a2, c);
                if !gt(a2, c2) || !are_parallel(st, (a, c), (a2, c2))? {
                    continue;
                }
                let limit = st.class(st.class_of(b)).len();
                let mut seq = vec![b];
                let mut cur = b;
                let closed = loop {
                    let down = t.meet_sandwich(a2, cur);
                    let up = t.join_sandwich(c, down);
                    seq.push(down);
                    if up == b {
                        break true;
                    }
                    if seq.len() >= limit {
                        break false;
                    }
                    seq.push(up);
                    cur = up;
                };
                let n = seq.len() / 2;
                if !closed || n < 2 {
                    continue;
                }
                let mut map = vec![a, a2];
                map.extend(&seq);
                map.extend([c, c2]);
                out.push((n, map));
            }
        }
    }
    Ok(out)
}

/// Sends each class of `collapse` in the image to its unique element lying in
/// the fixed `keep`-class of its D-class.
fn lift(an: &Analysis<'_>, collapse: &EquivPartition, keep: &EquivPartition, in_image: &[usize]) -> Vec<usize> {
    let alg = an.alg();
    let st = &an.st;
    let top = collapse.representative(in_image[0]);
    let n = (in_image.len() - 4) / 2;
    let mid = alg.meet_sandwich(top, collapse.representative(in_image[2]));
    let bottom = alg.meet_sandwich(mid, collapse.representative(in_image[2 + 2 * n]));
    let anchors = [top, mid, bottom];
    in_image
        .iter()
        .map(|&class| {
            let members = collapse.class(class);
            let d = st.class_of(members[0]);
            let anchor = *anchors.iter().find(|&&e| st.class_of(e) == d).expect("class on the chain");
            *members
                .iter()
                .find(|&&x| keep.same(x, anchor))
                .expect("pullback has one element per R- and L-class pair")
        })
        .collect()
}
