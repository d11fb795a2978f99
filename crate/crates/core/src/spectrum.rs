//! k, ℓ and the rank spectrum, with scripts reaching both extremes.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{find_base, Base};
use crate::eligibility::{blow_up_pivot, report, reports, EligibilityReport};
use crate::error::{Error, Result};
use crate::matching::maximum_matching;
use crate::matrix::{CoxeterMatrix, Gen, Subset};
use crate::transforms::{blow_down_oriented, blow_up, normalize_for_blow_down, TransformRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub base: Base,
    pub sink: Gen,
}

#[derive(Clone, Debug)]
pub struct RankSpectrum {
    pub base_rank: usize,
    pub k: usize,
    pub l: usize,
    pub matching: Vec<MatchedPair>,
    pub blow_up_bases: Vec<Base>,
    pub min_script: Vec<TransformRecord>,
    pub max_script: Vec<TransformRecord>,
}

impl RankSpectrum {
    pub fn min_rank(&self) -> usize {
        self.base_rank - self.k
    }

    pub fn max_rank(&self) -> usize {
        self.base_rank + self.l
    }

    pub fn ranks(&self) -> std::ops::RangeInclusive<usize> {
        self.min_rank()..=self.max_rank()
    }

    /// One-line summary, e.g. `k=1 l=1 spectrum=[4,6]`.
    pub fn summary(&self) -> String {
        format!("k={} l={} spectrum=[{},{}]", self.k, self.l, self.min_rank(), self.max_rank())
    }
}

fn matching_from(reports: &[EligibilityReport]) -> Vec<MatchedPair> {
    let eligible: Vec<&EligibilityReport> = reports.iter().filter(|r| r.contracts()).collect();
    let mut sinks: Vec<Gen> = eligible.iter().flat_map(|r| r.sinks.iter().copied()).collect();
    sinks.sort();
    sinks.dedup();
    let index: BTreeMap<Gen, usize> = sinks.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let adj: Vec<Vec<usize>> = eligible
        .iter()
        .map(|r| r.sinks.iter().map(|s| index[s]).collect())
        .collect();
    maximum_matching(&adj, sinks.len())
        .into_iter()
        .zip(eligible)
        .filter_map(|(m, r)| {
            m.map(|i| MatchedPair {
                base: r.base.clone(),
                sink: sinks[i],
            })
        })
        .collect()
}

/// Size of a maximum matching between blow-down-eligible bases and their
/// sinks, with one witness matching.
pub fn compute_k(m: &CoxeterMatrix) -> (usize, Vec<MatchedPair>) {
    let pairs = matching_from(&reports(m));
    (pairs.len(), pairs)
}

/// Bases along which the system can be blown up.
pub fn compute_l(m: &CoxeterMatrix) -> (usize, Vec<Base>) {
    let bases: Vec<Base> = reports(m)
        .into_iter()
        .filter(|r| r.blow_up_eligible)
        .map(|r| r.base)
        .collect();
    (bases.len(), bases)
}

pub fn spectrum(m: &CoxeterMatrix) -> Result<RankSpectrum> {
    spectrum_with_seed(m, None)
}

fn inconsistency(what: String) -> Error {
    Error::InternalInconsistency(what)
}

/// Follows `a` through every record; the caller's subset must survive.
fn track(script: &[TransformRecord], a: &Subset) -> Option<BTreeMap<Gen, Gen>> {
    let mut map: BTreeMap<Gen, Gen> = a.iter().map(|&g| (g, g)).collect();
    for rec in script {
        let cur: Subset = map.values().copied().collect();
        let step = rec.track_map(&cur)?;
        for v in map.values_mut() {
            *v = step[v];
        }
    }
    Some(map)
}

fn current<'a>(start: &'a CoxeterMatrix, script: &'a [TransformRecord]) -> &'a CoxeterMatrix {
    script.last().map_or(start, |r| &r.output)
}

/// As [`spectrum`]; with a seed, the order in which matched pairs and
/// blow-up bases are processed is shuffled.
pub fn spectrum_with_seed(m: &CoxeterMatrix, seed: Option<u64>) -> Result<RankSpectrum> {
    let all = reports(m);
    let matching = matching_from(&all);
    let blow_up_bases: Vec<Base> = all.iter().filter(|r| r.blow_up_eligible).map(|r| r.base.clone()).collect();

    let mut down_order: Vec<usize> = (0..matching.len()).collect();
    let mut up_order: Vec<usize> = (0..blow_up_bases.len()).collect();
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        down_order.shuffle(&mut rng);
        up_order.shuffle(&mut rng);
    }

    let mut min_script: Vec<TransformRecord> = Vec::new();
    for &i in &down_order {
        let pair = &matching[i];
        let mut with_sink = pair.base.members.clone();
        with_sink.insert(pair.sink);
        let map = track(&min_script, &with_sink).ok_or_else(|| {
            inconsistency(format!("matched base {:?} did not survive earlier blow-downs", m.subset_labels(&pair.base.members)))
        })?;
        let cur = current(m, &min_script).clone();
        let members: Subset = pair.base.members.iter().map(|g| map[g]).collect();
        let sink = map[&pair.sink];
        let base = find_base(&cur, &members)
            .ok_or_else(|| inconsistency(format!("{:?} is no longer a base", cur.subset_labels(&members))))?;
        let rep = report(&cur, &base);
        if !rep.blow_down_eligible || !rep.sinks.contains(&sink) {
            return Err(inconsistency(format!(
                "base {:?} lost eligibility or its sink {}",
                cur.subset_labels(&members),
                cur.label(sink)
            )));
        }
        let norm = normalize_for_blow_down(&cur, &base)?;
        let sink = match &norm.record {
            Some(rec) => *rec
                .track_map(&Subset::from([sink]))
                .and_then(|mp| mp.get(&sink).copied())
                .as_ref()
                .ok_or_else(|| inconsistency("sink lost by normalization".into()))?,
            None => sink,
        };
        let down = blow_down_oriented(&norm.matrix, &norm.base, sink, norm.x, norm.y)?;
        min_script.extend(norm.record);
        min_script.push(down);
    }

    let mut max_script: Vec<TransformRecord> = Vec::new();
    for &i in &up_order {
        let b = &blow_up_bases[i];
        let map = track(&max_script, &b.members)
            .ok_or_else(|| inconsistency(format!("base {:?} did not survive earlier blow-ups", m.subset_labels(&b.members))))?;
        let cur = current(m, &max_script).clone();
        let members: Subset = b.members.iter().map(|g| map[g]).collect();
        let base = find_base(&cur, &members)
            .ok_or_else(|| inconsistency(format!("{:?} is no longer a base", cur.subset_labels(&members))))?;
        let pivot = blow_up_pivot(&cur, &base)
            .ok_or_else(|| inconsistency(format!("{:?} is no longer blow-up eligible", cur.subset_labels(&members))))?;
        max_script.push(blow_up(&cur, &base, pivot)?);
    }

    let result = RankSpectrum {
        base_rank: m.rank(),
        k: matching.len(),
        l: blow_up_bases.len(),
        matching,
        blow_up_bases,
        min_script,
        max_script,
    };
    if current(m, &result.min_script).rank() != result.min_rank() || current(m, &result.max_script).rank() != result.max_rank() {
        return Err(inconsistency("script does not reach the predicted rank".into()));
    }
    Ok(result)
}

/// Final matrix after running a script from `start`.
pub fn script_result<'a>(start: &'a CoxeterMatrix, script: &'a [TransformRecord]) -> &'a CoxeterMatrix {
    current(start, script)
}
