use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::FiniteSkewLattice;
use crate::error::{Result, SklError};
use crate::order::maximal_images;

use super::{
    chain_midpoint_witness, find_forbidden_in, is_distributive, lh_identity_witness, normality_flags, Analysis,
    CategoricalMode, ForbiddenKind, OrderClosedMode, StrictMode, Verdict, LH_IDENTITIES,
};

/// Property names, in report order.
pub const PROPERTIES: [&str; 6] =
    ["categorical", "strictly_categorical", "distributive", "normal", "conormal", "order_closed"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbiddenReport {
    pub kind: ForbiddenKind,
    pub n: usize,
    pub embedding: BTreeMap<String, String>,
}

/// A theorem-backed self-check run alongside the classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxCheck {
    pub name: String,
    pub holds: bool,
}

/// Every property in every mode, with agreement flags and witnesses.
///
/// Serializes to `{"properties", "modes", "agreement", "witnesses",
/// "forbidden"}`; witnesses are keyed `property/mode`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub properties: BTreeMap<String, bool>,
    pub modes: BTreeMap<String, BTreeMap<String, bool>>,
    pub agreement: BTreeMap<String, bool>,
    pub witnesses: BTreeMap<String, Vec<String>>,
    pub forbidden: Option<ForbiddenReport>,
    #[serde(skip)]
    pub auxiliary: Vec<AuxCheck>,
    #[serde(skip)]
    mode_order: BTreeMap<String, Vec<String>>,
}

impl ClassificationReport {
    pub fn property(&self, name: &str) -> bool {
        self.properties[name]
    }

    pub fn all_agree(&self) -> bool {
        self.agreement.values().all(|&a| a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn record(&mut self, alg: &FiniteSkewLattice, property: &str, results: Vec<(&str, Verdict)>) {
        let verdict = results[0].1.holds;
        let agree = results.iter().all(|(_, v)| v.holds == verdict);
        let mut modes = BTreeMap::new();
        let mut order = Vec::new();
        for (mode, v) in results {
            if let Some(w) = v.witness_labels(alg) {
                self.witnesses.insert(format!("{property}/{mode}"), w);
            }
            modes.insert(mode.to_string(), v.holds);
            order.push(mode.to_string());
        }
        self.properties.insert(property.into(), verdict);
        self.agreement.insert(property.into(), agree);
        self.modes.insert(property.into(), modes);
        self.mode_order.insert(property.into(), order);
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in PROPERTIES {
            let modes: Vec<String> = self.mode_order[p]
                .iter()
                .map(|m| format!("{m}={}", self.modes[p][m]))
                .collect();
            let agree = if self.agreement[p] { "agree" } else { "DISAGREE" };
            writeln!(f, "{p:<21} {:<5}  {agree}  [{}]", self.properties[p], modes.join(" "))?;
        }
        for (key, w) in &self.witnesses {
            writeln!(f, "witness {key}: {}", w.join(" "))?;
        }
        match &self.forbidden {
            Some(fr) => {
                let pairs: Vec<String> = fr.embedding.iter().map(|(s, t)| format!("{s}->{t}")).collect();
                writeln!(f, "forbidden: {}_{} via {}", fr.kind, fr.n, pairs.join(", "))?;
            }
            None => writeln!(f, "forbidden: none")?,
        }
        for aux in &self.auxiliary {
            writeln!(f, "check {}: {}", aux.name, if aux.holds { "ok" } else { "FAILED" })?;
        }
        Ok(())
    }
}

/// Runs every property in every mode and the auxiliary self-checks.
///
/// Auxiliary checks are consequences of the theorems behind the modes: the
/// left-handed identities on `S/R` and on the mirror of `S/L` must match the
/// categorical verdict, strictly categorical chains must have unique
/// midpoints, and a copy of `X_n`/`Y_n` exists exactly when the algebra is not
/// categorical. A failed auxiliary check is an internal error.
pub fn classify_report(alg: &FiniteSkewLattice) -> Result<ClassificationReport> {
    let an = Analysis::new(alg)?;
    let mut report = ClassificationReport {
        properties: BTreeMap::new(),
        modes: BTreeMap::new(),
        agreement: BTreeMap::new(),
        witnesses: BTreeMap::new(),
        forbidden: None,
        auxiliary: Vec::new(),
        mode_order: BTreeMap::new(),
    };

    let cat = CategoricalMode::ALL
        .iter()
        .map(|&m| Ok((m.name(), an.categorical(m)?)))
        .collect::<Result<Vec<_>>>()?;
    report.record(alg, "categorical", cat);
    let strict = StrictMode::ALL
        .iter()
        .map(|&m| Ok((m.name(), an.strictly_categorical(m)?)))
        .collect::<Result<Vec<_>>>()?;
    report.record(alg, "strictly_categorical", strict);
    report.record(alg, "distributive", vec![("identity", is_distributive(alg))]);
    let nf = normality_flags(alg);
    report.record(alg, "normal", vec![("identity", nf.normal)]);
    report.record(alg, "conormal", vec![("identity", nf.conormal)]);
    let oc = OrderClosedMode::ALL.iter().map(|&m| (m.name(), an.order_closed(m))).collect();
    report.record(alg, "order_closed", oc);

    let forbidden = find_forbidden_in(&an)?;
    report.forbidden = forbidden.as_ref().map(|w| ForbiddenReport {
        kind: w.kind,
        n: w.n,
        embedding: w.label_pairs(alg).into_iter().collect(),
    });

    if report.agreement["categorical"] {
        let categorical = report.property("categorical");
        report.auxiliary.push(AuxCheck {
            name: "forbidden-iff-not-categorical".into(),
            holds: forbidden.is_some() != categorical,
        });
        let images = maximal_images(alg)?;
        let left = images.s_over_r;
        let right = images.s_over_l.mirror();
        for name in LH_IDENTITIES {
            let holds = lh_identity_witness(&left, name)?.is_none() && lh_identity_witness(&right, name)?.is_none();
            report.auxiliary.push(AuxCheck { name: format!("{name} on handed images"), holds: holds == categorical });
        }
    }
    if report.agreement["strictly_categorical"] && report.property("strictly_categorical") {
        let holds = an.st.three_chains().into_iter().all(|ch| chain_midpoint_witness(&an, ch).is_none());
        report.auxiliary.push(AuxCheck { name: "strict-chain-midpoints".into(), holds });
    }
    if let Some(failed) = report.auxiliary.iter().find(|a| !a.holds) {
        return Err(SklError::internal(format!("auxiliary check `{}` failed", failed.name)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gen_partial_functions, gen_rectangular, gen_xn};

    #[test]
    fn xn2_report() {
        let x2 = gen_xn(2).unwrap();
        let r = classify_report(&x2).unwrap();
        assert!(!r.property("categorical"));
        assert!(r.all_agree());
        assert_eq!(r.modes["categorical"].len(), 5);
        let fr = r.forbidden.as_ref().unwrap();
        assert_eq!((fr.kind, fr.n), (ForbiddenKind::X, 2));
    }

    #[test]
    fn partial_functions_report() {
        let r = classify_report(&gen_partial_functions(2, 2).unwrap()).unwrap();
        for p in ["normal", "strictly_categorical", "distributive", "categorical", "order_closed"] {
            assert!(r.property(p), "{p}");
        }
        assert!(r.all_agree());
    }

    #[test]
    fn rectangular_report() {
        let r = classify_report(&gen_rectangular(2, 2).unwrap()).unwrap();
        assert!(PROPERTIES.iter().all(|p| r.property(p)));
        assert!(r.forbidden.is_none());
    }

    #[test]
    fn json_shape() {
        let r = classify_report(&gen_xn(1).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["properties", "modes", "agreement", "witnesses", "forbidden"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["forbidden"].is_null());
    }
}
