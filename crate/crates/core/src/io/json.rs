//! JSON reports. Every top-level document carries `"schema": 1`; words are
//! written as space-separated generator labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::{classify_components, Base};
use crate::eligibility::EligibilityReport;
use crate::error::{Error, Result};
use crate::io::cox::{emit_cox, parse_cox};
use crate::matrix::{CoxeterMatrix, Gen, Subset};
use crate::spectrum::RankSpectrum;
use crate::transforms::{TransformKind, TransformRecord};
use crate::word::{check_isomorphism, Substitution, Word};

pub const SCHEMA: u32 = 1;

fn labels(m: &CoxeterMatrix, a: &Subset) -> Vec<String> {
    m.subset_labels(a)
}

fn label(m: &CoxeterMatrix, g: Gen) -> String {
    m.label(g).to_string()
}

fn pair(m: &CoxeterMatrix, p: Option<(Gen, Gen)>) -> Option<[String; 2]> {
    p.map(|(a, b)| [label(m, a), label(m, b)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub members: Vec<String>,
    /// `None` for non-spherical components.
    #[serde(rename = "type")]
    pub stype: Option<String>,
    /// Other name of the same type, e.g. B3 for A3.
    pub alias: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyJson {
    pub schema: u32,
    pub rank: usize,
    pub components: Vec<ComponentJson>,
}

impl ClassifyJson {
    pub fn new(m: &CoxeterMatrix) -> Self {
        ClassifyJson {
            schema: SCHEMA,
            rank: m.rank(),
            components: classify_components(m)
                .into_iter()
                .map(|(c, t)| ComponentJson {
                    members: labels(m, &c),
                    stype: t.map(|t| t.to_string()),
                    alias: t.and_then(|t| t.alias()).map(|a| a.to_string()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseJson {
    pub members: Vec<String>,
    #[serde(rename = "type")]
    pub stype: String,
    pub split_ends: Option<[String; 2]>,
    pub four_end: Option<String>,
    pub distinguished_pair: Option<[String; 2]>,
}

impl BaseJson {
    pub fn new(m: &CoxeterMatrix, b: &Base) -> Self {
        BaseJson {
            members: labels(m, &b.members),
            stype: b.stype.to_string(),
            split_ends: pair(m, b.split_ends),
            four_end: b.four_end.map(|g| label(m, g)),
            distinguished_pair: pair(m, b.distinguished_pair),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasesJson {
    pub schema: u32,
    pub bases: Vec<BaseJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub r: String,
    pub component: Vec<String>,
    #[serde(rename = "type")]
    pub stype: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EligibilityJson {
    pub base: BaseJson,
    pub cond1: Option<bool>,
    pub cond2: Option<bool>,
    pub cond3: Option<bool>,
    pub cond3_witness: Option<WitnessJson>,
    pub cond3_candidates: Vec<String>,
    pub sinks: Vec<String>,
    pub blow_down_eligible: bool,
    pub blow_up_eligible: bool,
    pub blow_up_pivot: Option<String>,
}

impl EligibilityJson {
    pub fn new(m: &CoxeterMatrix, r: &EligibilityReport) -> Self {
        EligibilityJson {
            base: BaseJson::new(m, &r.base),
            cond1: r.cond1,
            cond2: r.cond2,
            cond3: r.cond3,
            cond3_witness: r.cond3_witness.as_ref().map(|w| WitnessJson {
                r: label(m, w.r),
                component: labels(m, &w.component),
                stype: w.component_type.to_string(),
            }),
            cond3_candidates: r.cond3_candidates.iter().map(|&g| label(m, g)).collect(),
            sinks: r.sinks.iter().map(|&g| label(m, g)).collect(),
            blow_down_eligible: r.blow_down_eligible,
            blow_up_eligible: r.blow_up_eligible,
            blow_up_pivot: r.blow_up_pivot.map(|g| label(m, g)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EligibilityTableJson {
    pub schema: u32,
    pub reports: Vec<EligibilityJson>,
}

/// A transform record. `input`/`output` hold `.cox` text; `forward` maps
/// output labels to input words and `backward` input labels to output words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub schema: u32,
    pub kind: TransformKind,
    pub input: String,
    pub output: String,
    pub forward: BTreeMap<String, String>,
    pub backward: BTreeMap<String, String>,
    pub base: Vec<String>,
    pub new_base: Option<Vec<String>>,
    pub sink: Option<String>,
    pub pivot: Option<String>,
    pub split_ends: Option<[String; 2]>,
    pub fresh: Vec<String>,
}

fn substitution_json(domain: &CoxeterMatrix, codomain: &CoxeterMatrix, s: &Substitution) -> BTreeMap<String, String> {
    domain
        .generators()
        .map(|g| (label(domain, g), s.image(g).to_labels(codomain)))
        .collect()
}

fn substitution_from(domain: &CoxeterMatrix, codomain: &CoxeterMatrix, map: &BTreeMap<String, String>, tag: &str) -> Result<Substitution> {
    let rejected = |why: String| Error::CertificationFailed(format!("{tag}: {why}"));
    if let Some(extra) = map.keys().find(|k| !domain.contains_label(k)) {
        return Err(rejected(format!("unexpected generator `{extra}`")));
    }
    let images = domain
        .labels()
        .map(|l| {
            let text = map.get(l).ok_or_else(|| rejected(format!("no image for `{l}`")))?;
            Word::parse(codomain, text).map_err(|e| rejected(format!("image of `{l}`: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Substitution { images })
}

impl RecordJson {
    pub fn new(r: &TransformRecord) -> Self {
        let (i, o) = (&r.input, &r.output);
        RecordJson {
            schema: SCHEMA,
            kind: r.kind,
            input: emit_cox(i),
            output: emit_cox(o),
            forward: substitution_json(o, i, &r.forward),
            backward: substitution_json(i, o, &r.backward),
            base: labels(i, &r.base),
            new_base: r.new_base.as_ref().map(|b| labels(o, b)),
            sink: r.sink.map(|g| label(i, g)),
            pivot: r.pivot.map(|g| label(i, g)),
            split_ends: pair(i, r.split_ends),
            fresh: r.fresh.iter().map(|&g| label(o, g)).collect(),
        }
    }

    /// Re-derives both presentations and maps. Malformed `.cox` text is a
    /// parse error; maps that do not fit the presentations are rejected as
    /// certificates.
    pub fn decode(&self) -> Result<(CoxeterMatrix, CoxeterMatrix, Substitution, Substitution)> {
        let input = parse_cox(&self.input)?;
        let output = parse_cox(&self.output)?;
        let fwd = substitution_from(&output, &input, &self.forward, "forward")?;
        let bwd = substitution_from(&input, &output, &self.backward, "backward")?;
        Ok((input, output, fwd, bwd))
    }

    /// `None` when the certificate holds, else the reason it fails.
    pub fn check(&self) -> Result<Option<String>> {
        if self.schema != SCHEMA {
            return Err(Error::BadEntry(format!("unsupported schema {}", self.schema)));
        }
        match self.decode() {
            Ok((i, o, f, b)) => match check_isomorphism(&i, &o, &f, &b) {
                Ok(v) => Ok(v),
                // A word the engine cannot decide within its caps does not
                // certify anything.
                Err(e) => Ok(Some(e.to_string())),
            },
            Err(Error::CertificationFailed(why)) => Ok(Some(why)),
            Err(e) => Err(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedJson {
    pub base: Vec<String>,
    pub sink: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub schema: u32,
    pub rank: usize,
    pub k: usize,
    pub l: usize,
    /// `[min, max]`.
    pub spectrum: [usize; 2],
    pub matching: Vec<MatchedJson>,
    pub blow_up_bases: Vec<Vec<String>>,
    pub min_script: Vec<RecordJson>,
    pub max_script: Vec<RecordJson>,
}

impl SpectrumJson {
    pub fn new(m: &CoxeterMatrix, s: &RankSpectrum) -> Self {
        SpectrumJson {
            schema: SCHEMA,
            rank: s.base_rank,
            k: s.k,
            l: s.l,
            spectrum: [s.min_rank(), s.max_rank()],
            matching: s
                .matching
                .iter()
                .map(|p| MatchedJson {
                    base: labels(m, &p.base.members),
                    sink: label(m, p.sink),
                })
                .collect(),
            blow_up_bases: s.blow_up_bases.iter().map(|b| labels(m, &b.members)).collect(),
            min_script: s.min_script.iter().map(RecordJson::new).collect(),
            max_script: s.max_script.iter().map(RecordJson::new).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{find_base, SphericalType};
    use crate::transforms::blow_up_base;

    fn c3_d23() -> CoxeterMatrix {
        CoxeterMatrix::direct_product(&[&SphericalType::c(3).matrix("c"), &SphericalType::d2(3).matrix("d")]).unwrap()
    }

    fn blow_up_record() -> RecordJson {
        let m = c3_d23();
        let b = find_base(&m, &m.subset(&["c1", "c2", "c3"]).unwrap()).unwrap();
        RecordJson::new(&blow_up_base(&m, &b).unwrap())
    }

    #[test]
    fn record_round_trips_and_checks() {
        let rec = blow_up_record();
        let text = serde_json::to_string_pretty(&rec).unwrap();
        assert!(text.contains("\"schema\": 1"));
        let back: RecordJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.check().unwrap(), None);
    }

    #[test]
    fn tampering_is_rejected() {
        let rec = blow_up_record();
        let mut dropped = rec.clone();
        let key = dropped.backward.keys().next().unwrap().clone();
        dropped.backward.remove(&key);
        assert!(dropped.check().unwrap().is_some());

        let mut swapped = rec.clone();
        let img = swapped.forward.values().next().unwrap().clone();
        for v in swapped.forward.values_mut() {
            *v = img.clone();
        }
        assert!(swapped.check().unwrap().is_some());

        let mut garbage = rec;
        garbage.input = "not a cox file".into();
        assert!(garbage.check().is_err());
    }

    #[test]
    fn classify_report() {
        let j = ClassifyJson::new(&c3_d23());
        let types: Vec<_> = j.components.iter().map(|c| c.stype.clone().unwrap()).collect();
        assert_eq!(types, vec!["C3", "D2(3)"]);
    }
}
