//! Decision procedures for the categorical hierarchy.
//!
//! Every property with more than one characterization exposes a mode enum;
//! modes are implemented independently so that [`classify_report`] can
//! cross-check them.

mod categorical;
mod forbidden;
mod report;
mod strict;

use std::fmt;
use std::str::FromStr;

use crate::algebra::FiniteSkewLattice;
use crate::coset::CosetAtlas;
use crate::error::{Result, SklError};
use crate::order::Structure;

pub use categorical::{lh_identity_witness, LH_IDENTITIES};
pub use strict::chain_midpoint_witness;
pub use forbidden::{find_forbidden, find_forbidden_in, ForbiddenKind, ForbiddenWitness};
pub use report::{classify_report, AuxCheck, ClassificationReport, PROPERTIES};

/// Outcome of one decision procedure; `witness` is the first violating tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    pub fn fail(witness: Vec<usize>) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }

    pub(crate) fn from_witness<const N: usize>(w: Option<[usize; N]>) -> Self {
        match w {
            Some(w) => Verdict::fail(w.to_vec()),
            None => Verdict::pass(),
        }
    }

    pub fn witness_labels(&self, alg: &FiniteSkewLattice) -> Option<Vec<String>> {
        self.witness.as_ref().map(|w| alg.labels(w))
    }
}

macro_rules! mode_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl FromStr for $name {
            type Err = SklError;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(SklError::UnknownMode(s.to_string())),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

mode_enum!(
    /// Characterizations of categorical skew lattices.
    CategoricalMode {
        Structural => "structural",
        Catshort => "catshort",
        Catsymm => "catsymm",
        Conditional => "conditional",
        Midpoint => "midpoint",
    }
);

mode_enum!(
    /// Characterizations of strictly categorical skew lattices.
    StrictMode {
        Intersection => "intersection",
        MidpointOrder => "midpoint-order",
        MidpointWeak => "midpoint-weak",
        ForbiddenFour => "forbidden-four",
        Interval => "interval",
        Updown => "updown",
        Identity => "identity",
        UniqueFactorization => "unique-factorization",
    }
);

mode_enum!(
    /// Characterizations of order-closed skew lattices.
    OrderClosedMode {
        Direct => "direct",
        Identity => "identity",
    }
);

/// Structure plus coset data, shared by all procedures on one algebra.
#[derive(Clone, Debug)]
pub struct Analysis<'a> {
    pub st: Structure<'a>,
    pub atlas: CosetAtlas,
}

impl<'a> Analysis<'a> {
    pub fn new(alg: &'a FiniteSkewLattice) -> Result<Self> {
        let st = Structure::new(alg)?;
        let atlas = CosetAtlas::new(&st)?;
        Ok(Analysis { st, atlas })
    }

    pub fn alg(&self) -> &'a FiniteSkewLattice {
        self.st.alg
    }

    pub fn categorical(&self, mode: CategoricalMode) -> Result<Verdict> {
        categorical::decide(self, mode)
    }

    pub fn strictly_categorical(&self, mode: StrictMode) -> Result<Verdict> {
        strict::decide(self, mode)
    }

    pub fn order_closed(&self, mode: OrderClosedMode) -> Verdict {
        match mode {
            OrderClosedMode::Direct => order_closed_direct(&self.st),
            OrderClosedMode::Identity => order_closed_identity(self.alg()),
        }
    }
}

pub fn is_categorical(alg: &FiniteSkewLattice, mode: CategoricalMode) -> Result<Verdict> {
    Analysis::new(alg)?.categorical(mode)
}

pub fn is_strictly_categorical(alg: &FiniteSkewLattice, mode: StrictMode) -> Result<Verdict> {
    Analysis::new(alg)?.strictly_categorical(mode)
}

pub fn is_order_closed(alg: &FiniteSkewLattice, mode: OrderClosedMode) -> Result<Verdict> {
    Ok(Analysis::new(alg)?.order_closed(mode))
}

pub(crate) fn first3(n: usize, bad: impl Fn(usize, usize, usize) -> bool) -> Option<[usize; 3]> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

pub(crate) fn first4(n: usize, bad: impl Fn(usize, usize, usize, usize) -> bool) -> Option<[usize; 4]> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    if bad(x, y, z, w) {
                        return Some([x, y, z, w]);
                    }
                }
            }
        }
    }
    None
}

/// `x∧(y∨z)∧x = (x∧y∧x)∨(x∧z∧x)` and its dual, over all triples.
pub fn is_distributive(alg: &FiniteSkewLattice) -> Verdict {
    let (m, j) = (|x, y| alg.meet(x, y), |x, y| alg.join(x, y));
    let n = alg.len();
    let w = first3(n, |x, y, z| {
        alg.meet_sandwich(x, j(y, z)) != j(alg.meet_sandwich(x, y), alg.meet_sandwich(x, z))
    })
    .or_else(|| {
        first3(n, |x, y, z| alg.join_sandwich(x, m(y, z)) != m(alg.join_sandwich(x, y), alg.join_sandwich(x, z)))
    });
    Verdict::from_witness(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityFlags {
    pub normal: Verdict,
    pub conormal: Verdict,
}

/// `x∧y∧z∧w = x∧z∧y∧w` and `x∨y∨z∨w = x∨z∨y∨w`, over all quadruples.
pub fn normality_flags(alg: &FiniteSkewLattice) -> NormalityFlags {
    let (m, j) = (|x, y| alg.meet(x, y), |x, y| alg.join(x, y));
    let n = alg.len();
    NormalityFlags {
        normal: Verdict::from_witness(first4(n, |x, y, z, w| m(m(m(x, y), z), w) != m(m(m(x, z), y), w))),
        conormal: Verdict::from_witness(first4(n, |x, y, z, w| j(j(j(x, y), z), w) != j(j(j(x, z), y), w))),
    }
}

/// Scans every comparable pair `A > B` for `a, a′ > b` and `a > b′` with
/// `a′ ≯ b′`; witness `(a, a′, b, b′)`.
fn order_closed_direct(st: &Structure<'_>) -> Verdict {
    let gt = |x, y| st.orders.gt(x, y);
    for (p, q) in st.comparable_pairs() {
        let (upper, lower) = (st.class(p), st.class(q));
        for &a in upper {
            for &a2 in upper {
                for &b in lower {
                    if !(gt(a, b) && gt(a2, b)) {
                        continue;
                    }
                    for &b2 in lower {
                        if gt(a, b2) && !gt(a2, b2) {
                            return Verdict::fail(vec![a, a2, b, b2]);
                        }
                    }
                }
            }
        }
    }
    Verdict::pass()
}

/// The order-closed identity in `(x, y, u, v)`:
/// `(p∧v∧u∧p)∨(y∧x)∨(p∧u∧v∧p) = (p∧u∧v∧p)∨(y∧x)∨(p∧v∧u∧p)` with `p = x∧y`.
fn order_closed_identity(alg: &FiniteSkewLattice) -> Verdict {
    let (m, j) = (|x, y| alg.meet(x, y), |x, y| alg.join(x, y));
    let w = first4(alg.len(), |x, y, u, v| {
        let p = m(x, y);
        let vu = m(m(m(p, v), u), p);
        let uv = m(m(m(p, u), v), p);
        let yx = m(y, x);
        j(j(vu, yx), uv) != j(j(uv, yx), vu)
    });
    Verdict::from_witness(w)
}
