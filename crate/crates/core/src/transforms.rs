//! Presentation moves: elementary twist, blow-down and blow-up. Every record
//! leaves this module only after its substitution maps have been certified.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::classify::{basic_subsets, is_spherical, Base};
use crate::eligibility::{blow_up_pivot, condition1, condition2, sinks_of, split_reach};
use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, DiagramKind, Gen, Order, Subset};
use crate::word::{certify, Substitution, Word, WordEngine, CERTIFICATION_CAP, DEFAULT_ENUMERATION_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TransformKind {
    Twist,
    BlowDown,
    BlowUp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistData {
    pub s1: Subset,
    pub s2: Subset,
    /// Longest element of the twisting subset, over the input generators.
    pub ell: Word,
    /// v ↦ ℓ v ℓ⁻¹ on S1 ∩ S2.
    pub sigma: BTreeMap<Gen, Gen>,
    /// Input t ∈ S2 − S1 ↦ its output copy ℓ t ℓ⁻¹.
    pub renamed: BTreeMap<Gen, Gen>,
}

/// One certified move. `forward` sends output generators to input words,
/// `backward` sends input generators to output words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformRecord {
    pub kind: TransformKind,
    pub input: CoxeterMatrix,
    pub output: CoxeterMatrix,
    pub forward: Substitution,
    pub backward: Substitution,
    /// The base (blow-down/up) or twisting subset, in the input.
    pub base: Subset,
    /// The resulting base, in the output.
    pub new_base: Option<Subset>,
    pub sink: Option<Gen>,
    pub pivot: Option<Gen>,
    /// (x, y) in the input, y being the end that is removed or normalized.
    pub split_ends: Option<(Gen, Gen)>,
    /// Output generators introduced by the move.
    pub fresh: Vec<Gen>,
    pub twist: Option<TwistData>,
}

impl TransformRecord {
    /// Same-label image of an input generator, if it survives the move.
    pub fn persisting(&self, g: Gen) -> Option<Gen> {
        self.output.gen(self.input.label(g)).ok()
    }

    /// Element-wise image of an input subset that lies on one side of the
    /// move: unchanged generators keep their labels, twisted ones are
    /// conjugated. `None` when some member does not survive.
    pub fn track_map(&self, a: &Subset) -> Option<BTreeMap<Gen, Gen>> {
        let image = |g: &Gen| -> Option<Gen> {
            match &self.twist {
                Some(t) if !a.is_subset(&t.s1) => match t.sigma.get(g) {
                    Some(&v) => self.persisting(v),
                    None => t.renamed.get(g).copied(),
                },
                _ => self.persisting(*g),
            }
        };
        if let Some(t) = &self.twist {
            if !a.is_subset(&t.s1) && !a.is_subset(&t.s2) {
                return None;
            }
        }
        a.iter().map(|g| image(g).map(|h| (*g, h))).collect()
    }

    pub fn track_subset(&self, a: &Subset) -> Option<Subset> {
        self.track_map(a).map(|m| m.into_values().collect())
    }

    pub fn certify(&self) -> Result<()> {
        certify(&self.input, &self.output, &self.forward, &self.backward)
    }
}

/// Rewrites a word over `from` into `to` by label.
fn transfer(w: &Word, from: &CoxeterMatrix, to: &CoxeterMatrix) -> Result<Word> {
    w.0.iter()
        .map(|&g| to.gen(from.label(g)))
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

fn build(labels: &[String], entry: impl Fn(usize, usize) -> Order) -> Result<CoxeterMatrix> {
    let mut b = CoxeterMatrix::builder().generators(labels.iter().cloned());
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            b = b.edge(labels[i].clone(), labels[j].clone(), entry(i, j));
        }
    }
    b.build()
}

fn fresh(m: &CoxeterMatrix, root: &str, taken: &mut BTreeSet<String>) -> String {
    let l = m.fresh_label(root, taken);
    taken.insert(l.clone());
    l
}

fn labels_of(m: &CoxeterMatrix, a: &Subset) -> BTreeSet<String> {
    m.subset_labels(a).into_iter().collect()
}

fn base_label_sets(m: &CoxeterMatrix) -> BTreeSet<BTreeSet<String>> {
    basic_subsets(m).iter().map(|b| labels_of(m, &b.members)).collect()
}

fn inconsistency(what: impl Into<String>) -> Error {
    Error::InternalInconsistency(what.into())
}

/// Elementary twist (S1, ℓ, S2) with ℓ the longest element of ⟨B⟩.
pub fn twist(m: &CoxeterMatrix, s1: &Subset, s2: &Subset, b: &Subset) -> Result<TransformRecord> {
    let invalid = |why: &str| Error::TwistInvalid(why.to_string());
    if s1.union(s2).copied().collect::<Subset>() != m.all() {
        return Err(invalid("S1 ∪ S2 must be the whole generating set"));
    }
    let s0: Subset = s1.intersection(s2).copied().collect();
    for &u in s1.difference(&s0) {
        for &v in s2.difference(&s0) {
            if m.m(u, v).is_finite() {
                return Err(invalid(&format!(
                    "m({}, {}) must be infinite",
                    m.label(u),
                    m.label(v)
                )));
            }
        }
    }
    if !b.is_subset(&s0) {
        return Err(invalid("the twisting subset must lie in S1 ∩ S2"));
    }
    if !is_spherical(m, b) {
        return Err(invalid("the twisting subset must be spherical"));
    }
    let engine = WordEngine::new(m).with_cap(CERTIFICATION_CAP);
    let ell = engine.longest_element(b)?;
    let sigma = engine
        .conjugation_permutation(&ell, &s0)?
        .ok_or_else(|| invalid("the longest element does not permute S1 ∩ S2"))?;

    let moved: Vec<Gen> = s2.difference(&s0).copied().collect();
    let kept: Vec<Gen> = m.generators().filter(|g| s1.contains(g)).collect();
    let mut taken = BTreeSet::new();
    let mut labels: Vec<String> = kept.iter().map(|&g| m.label(g).to_string()).collect();
    labels.extend(moved.iter().map(|&t| fresh(m, m.label(t), &mut taken)));

    // Origin of each output generator: Ok(kept input gen) or Err(moved input gen).
    let origin: Vec<std::result::Result<Gen, Gen>> =
        kept.iter().map(|&g| Ok(g)).chain(moved.iter().map(|&t| Err(t))).collect();
    let output = build(&labels, |i, j| match (origin[i], origin[j]) {
        (Ok(u), Ok(v)) => m.m(u, v),
        (Err(t), Err(u)) => m.m(t, u),
        (Ok(v), Err(t)) | (Err(t), Ok(v)) => match sigma.get(&v) {
            Some(&sv) => m.m(sv, t),
            None => Order::Infinity,
        },
    })?;

    let ell_out = transfer(&ell, m, &output)?;
    let forward = Substitution {
        images: origin
            .iter()
            .map(|o| match *o {
                Ok(g) => Word::letter(g),
                Err(t) => Word::product([&ell, &Word::letter(t), &ell.inverse()]),
            })
            .collect(),
    };
    let renamed: BTreeMap<Gen, Gen> = moved
        .iter()
        .enumerate()
        .map(|(k, &t)| (t, Gen(kept.len() + k)))
        .collect();
    let backward = Substitution {
        images: m
            .generators()
            .map(|g| match renamed.get(&g) {
                Some(&t2) => Ok(Word::product([&ell_out, &Word::letter(t2), &ell_out.inverse()])),
                None => output.gen(m.label(g)).map(Word::letter),
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let record = TransformRecord {
        kind: TransformKind::Twist,
        input: m.clone(),
        new_base: Some(output.subset_from_list(&m.subset_labels(b).join(","))?),
        output,
        forward,
        backward,
        base: b.clone(),
        sink: None,
        pivot: None,
        split_ends: None,
        fresh: renamed.values().copied().collect(),
        twist: Some(TwistData {
            s1: s1.clone(),
            s2: s2.clone(),
            ell,
            sigma,
            renamed,
        }),
    };
    record.certify()?;
    Ok(record)
}

/// Twist triples (S1, S2, B) available at each base B: S0 = B ∪ B⊥ and S2
/// adds one P-diagram component of the rest.
pub fn twist_candidates(m: &CoxeterMatrix) -> Vec<(Subset, Subset, Subset)> {
    let mut out = Vec::new();
    for b in basic_subsets(m) {
        let s0: Subset = b.members.union(&m.perp(&b.members)).copied().collect();
        let rest: Subset = m.all().difference(&s0).copied().collect();
        for c in m.components_of(&rest, DiagramKind::Presentation) {
            let s1: Subset = m.all().difference(&c).copied().collect();
            let s2: Subset = s0.union(&c).copied().collect();
            out.push((s1, s2, b.members.clone()));
        }
    }
    out
}

/// Result of [`normalize_for_blow_down`]: the (possibly twisted) matrix, the
/// base inside it and the orientation with N(y) = B ∪ B⊥.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub record: Option<TransformRecord>,
    pub matrix: CoxeterMatrix,
    pub base: Base,
    pub x: Gen,
    pub y: Gen,
}

fn full_neighborhood(m: &CoxeterMatrix, b: &Subset, g: Gen) -> bool {
    let perp = m.perp(b);
    m.neighborhood(g) == b.union(&perp).copied().collect()
}

pub fn normalize_for_blow_down(m: &CoxeterMatrix, b: &Base) -> Result<Normalization> {
    let pre = |why: &str| Error::NormalizePrecondition(why.to_string());
    if !condition1(m, b).map_err(|_| pre("base type has no split ends"))? {
        return Err(pre("condition (1) fails"));
    }
    if !condition2(m, b)? {
        return Err(pre("condition (2) fails"));
    }
    let (x, y) = b.split_ends.expect("condition1 checked the type");
    let (tx, ty) = split_reach(m, b)?;
    let identity = |x: Gen, y: Gen| Normalization {
        record: None,
        matrix: m.clone(),
        base: b.clone(),
        x,
        y,
    };
    if ty.is_empty() {
        return Ok(identity(x, y));
    }
    if tx.is_empty() {
        return Ok(identity(y, x));
    }
    let s1: Subset = m.all().difference(&ty).copied().collect();
    let perp = m.perp(&b.members);
    let s2: Subset = b.members.iter().chain(&perp).chain(&ty).copied().collect();
    let record = twist(m, &s1, &s2, &b.members)?;
    let out = &record.output;
    let members = record.new_base.clone().expect("twist records the subset");
    let base = Base::describe(out, &members).ok_or_else(|| inconsistency("base lost by normalizing twist"))?;
    let (x2, y2) = (out.gen(m.label(x))?, out.gen(m.label(y))?);
    if !full_neighborhood(out, &members, y2) {
        return Err(inconsistency("N(y) ≠ B ∪ B⊥ after normalizing twist"));
    }
    Ok(Normalization {
        matrix: out.clone(),
        record: Some(record),
        base,
        x: x2,
        y: y2,
    })
}

/// Blow-down at `b` with sink `r`; the split end with N(y) = B ∪ B⊥ is
/// chosen automatically (the later one in generator order when both qualify).
pub fn blow_down(m: &CoxeterMatrix, b: &Base, r: Gen) -> Result<TransformRecord> {
    let (x, y) = b
        .split_ends
        .filter(|_| b.stype.is_blow_down_type())
        .ok_or_else(|| Error::IneligibleType(b.stype.to_string()))?;
    if full_neighborhood(m, &b.members, y) {
        blow_down_oriented(m, b, r, x, y)
    } else if full_neighborhood(m, &b.members, x) {
        blow_down_oriented(m, b, r, y, x)
    } else {
        Err(Error::BlowDownPrecondition(
            "no split end has N(y) = B ∪ B⊥; normalize first".into(),
        ))
    }
}

pub fn blow_down_oriented(m: &CoxeterMatrix, b: &Base, r: Gen, x: Gen, y: Gen) -> Result<TransformRecord> {
    let pre = |why: String| Error::BlowDownPrecondition(why);
    let ends = b.split_ends.filter(|_| b.stype.is_blow_down_type());
    let Some(ends) = ends else {
        return Err(Error::IneligibleType(b.stype.to_string()));
    };
    if ends != (x, y) && ends != (y, x) {
        return Err(pre("x, y must be the split ends".into()));
    }
    if !sinks_of(m, b).contains(&r) {
        return Err(pre(format!("{} is not a sink for the base", m.label(r))));
    }
    if !full_neighborhood(m, &b.members, y) {
        return Err(pre(format!("N({}) ≠ B ∪ B⊥; normalize first", m.label(y))));
    }
    let new_type = b.stype.blown_down().expect("blow-down type");
    let xa = match b.stype.odd_dihedral() {
        Some(q) => 4 * q + 2,
        None => 4,
    };
    let perp = m.perp(&b.members);
    let engine = WordEngine::new(m).with_cap(CERTIFICATION_CAP);
    let ell = engine.longest_element(&b.members)?;

    let kept: Vec<Gen> = m.generators().filter(|&g| g != r && g != y).collect();
    let mut labels: Vec<String> = kept.iter().map(|&g| m.label(g).to_string()).collect();
    labels.push(fresh(m, "a", &mut BTreeSet::new()));
    let a_idx = kept.len();
    let a_entry = |g: Gen| -> Order {
        if g == x {
            Order::Finite(xa)
        } else if b.members.contains(&g) || perp.contains(&g) {
            Order::Finite(2)
        } else {
            Order::Infinity
        }
    };
    let output = build(&labels, |i, j| match (i == a_idx, j == a_idx) {
        (false, false) => m.m(kept[i], kept[j]),
        (true, _) => a_entry(kept[j]),
        (_, true) => a_entry(kept[i]),
    })?;
    let a = Gen(a_idx);

    let forward = Substitution {
        images: kept
            .iter()
            .map(|&g| Word::letter(g))
            .chain([Word::letter(r).concat(&ell)])
            .collect(),
    };
    let out_engine = WordEngine::new(&output).with_cap(CERTIFICATION_CAP);
    let x_out = output.gen(m.label(x))?;
    let y_image = Word(vec![a, x_out, a]);
    let ell_out = Word::product(
        ell.0
            .iter()
            .map(|&g| if g == y { Ok(y_image.clone()) } else { output.gen(m.label(g)).map(Word::letter) })
            .collect::<Result<Vec<_>>>()?
            .iter(),
    );
    let r_image = out_engine.reduce(&Word::letter(a).concat(&ell_out))?.word;
    let backward = Substitution {
        images: m
            .generators()
            .map(|g| {
                if g == y {
                    Ok(y_image.clone())
                } else if g == r {
                    Ok(r_image.clone())
                } else {
                    output.gen(m.label(g)).map(Word::letter)
                }
            })
            .collect::<Result<Vec<_>>>()?,
    };

    let new_members: Subset = b
        .members
        .iter()
        .filter(|&&g| g != y)
        .map(|&g| output.gen(m.label(g)))
        .chain([Ok(a)])
        .collect::<Result<_>>()?;
    let record = TransformRecord {
        kind: TransformKind::BlowDown,
        input: m.clone(),
        output,
        forward,
        backward,
        base: b.members.clone(),
        new_base: Some(new_members.clone()),
        sink: Some(r),
        pivot: None,
        split_ends: Some((x, y)),
        fresh: vec![a],
        twist: None,
    };
    record.certify()?;

    // Postconditions of the construction.
    let out = &record.output;
    let new_base = Base::describe(out, &new_members).ok_or_else(|| inconsistency("B′ is not irreducible spherical"))?;
    if !new_base.stype.same_system(new_type) {
        return Err(inconsistency(format!("B′ has type {} instead of {new_type}", new_base.stype)));
    }
    let mut expected_perp = labels_of(m, &perp);
    expected_perp.remove(m.label(r));
    if labels_of(out, &out.perp(&new_members)) != expected_perp {
        return Err(inconsistency("(B′)⊥ ≠ B⊥ − {r}"));
    }
    if !full_neighborhood(out, &new_members, a) {
        return Err(inconsistency("N(a) ≠ B′ ∪ (B′)⊥"));
    }
    let mut expected = base_label_sets(m);
    expected.remove(&labels_of(m, &b.members));
    expected.insert(labels_of(out, &new_members));
    if base_label_sets(out) != expected {
        return Err(inconsistency("bases other than B changed under blow-down"));
    }
    Ok(record)
}

/// Blow-up at `b` with pivot `a` (see [`blow_up_pivot`]).
pub fn blow_up(m: &CoxeterMatrix, b: &Base, a: Gen) -> Result<TransformRecord> {
    let pre = |why: String| Error::BlowUpPrecondition(why);
    if !b.stype.is_blow_up_type() {
        return Err(pre(format!("type {} cannot be blown up", b.stype)));
    }
    let pivot_ok = match b.four_end {
        Some(end) => end == a,
        None => b.members.contains(&a),
    } && full_neighborhood(m, &b.members, a);
    if !pivot_ok {
        return Err(pre(format!("{} is not an admissible pivot", m.label(a))));
    }
    let new_type = b.stype.blown_up().expect("blow-up type");
    let bb = *b
        .members
        .iter()
        .find(|&&s| matches!(m.m(a, s), Order::Finite(v) if v > 2))
        .ok_or_else(|| inconsistency("pivot has no neighbor in its base"))?;
    let m_ab = m.m(a, bb).finite().expect("checked finite");
    let perp = m.perp(&b.members);
    let engine = WordEngine::new(m).with_cap(CERTIFICATION_CAP);
    let z_word = engine.longest_element(&b.members)?;

    let kept: Vec<Gen> = m.generators().filter(|&g| g != a).collect();
    let mut taken = BTreeSet::new();
    let mut labels: Vec<String> = kept.iter().map(|&g| m.label(g).to_string()).collect();
    labels.push(fresh(m, "d", &mut taken));
    labels.push(fresh(m, "z", &mut taken));
    let (d_idx, z_idx) = (kept.len(), kept.len() + 1);
    let in_base_or_perp = |g: Gen| b.members.contains(&g) || perp.contains(&g);
    let d_entry = |g: Gen| -> Order {
        if g == bb {
            Order::Finite(m_ab / 2)
        } else if b.members.contains(&g) {
            m.m(g, bb)
        } else if perp.contains(&g) {
            Order::Finite(2)
        } else {
            Order::Infinity
        }
    };
    let z_entry = |g: Gen| -> Order {
        if in_base_or_perp(g) {
            Order::Finite(2)
        } else {
            Order::Infinity
        }
    };
    let output = build(&labels, |i, j| {
        let (i, j) = (i.min(j), i.max(j));
        match (i, j) {
            (i, j) if j < d_idx => m.m(kept[i], kept[j]),
            (i, j) if i < d_idx && j == d_idx => d_entry(kept[i]),
            (i, j) if i < d_idx && j == z_idx => z_entry(kept[i]),
            _ => Order::Finite(2), // d, z
        }
    })?;
    let (d, z) = (Gen(d_idx), Gen(z_idx));

    let forward = Substitution {
        images: kept
            .iter()
            .map(|&g| Word::letter(g))
            .chain([Word(vec![a, bb, a]), z_word.clone()])
            .collect(),
    };
    let new_members: Subset = b
        .members
        .iter()
        .filter(|&&g| g != a)
        .map(|&g| output.gen(m.label(g)))
        .chain([Ok(d)])
        .collect::<Result<_>>()?;

    // Recover a inside ⟨B′ ∪ {z}⟩ by searching the finite subgroup.
    let out_engine = WordEngine::new(&output).with_cap(CERTIFICATION_CAP);
    let mut search: Subset = new_members.clone();
    search.insert(z);
    let target = Word::letter(a);
    let mut a_image = None;
    for el in out_engine.enumerate_elements(&search, DEFAULT_ENUMERATION_CAP)? {
        if engine.equal(&forward.apply(&el.word), &target)? {
            a_image = Some(el.word);
            break;
        }
    }
    let a_image = a_image.ok_or_else(|| Error::CertificationFailed("no preimage of the pivot in ⟨B′, z⟩".into()))?;
    let backward = Substitution {
        images: m
            .generators()
            .map(|g| if g == a { Ok(a_image.clone()) } else { output.gen(m.label(g)).map(Word::letter) })
            .collect::<Result<Vec<_>>>()?,
    };
    let record = TransformRecord {
        kind: TransformKind::BlowUp,
        input: m.clone(),
        output,
        forward,
        backward,
        base: b.members.clone(),
        new_base: Some(new_members.clone()),
        sink: None,
        pivot: Some(a),
        split_ends: None,
        fresh: vec![d, z],
        twist: None,
    };
    record.certify()?;

    let out = &record.output;
    let new_base = Base::describe(out, &new_members).ok_or_else(|| inconsistency("B′ is not irreducible spherical"))?;
    if !new_base.stype.same_system(new_type) {
        return Err(inconsistency(format!("B′ has type {} instead of {new_type}", new_base.stype)));
    }
    let mut expected = base_label_sets(m);
    expected.remove(&labels_of(m, &b.members));
    expected.insert(labels_of(out, &new_members));
    if base_label_sets(out) != expected {
        return Err(inconsistency("bases other than B changed under blow-up"));
    }
    Ok(record)
}

/// Blow-up at `b` using its own pivot.
pub fn blow_up_base(m: &CoxeterMatrix, b: &Base) -> Result<TransformRecord> {
    let a = blow_up_pivot(m, b)
        .ok_or_else(|| Error::BlowUpPrecondition("base is not blow-up eligible".into()))?;
    blow_up(m, b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{find_base, system_type, SphericalType};
    use crate::graph_iso::matrices_isomorphic;

    fn product(parts: &[CoxeterMatrix]) -> CoxeterMatrix {
        let refs: Vec<&CoxeterMatrix> = parts.iter().collect();
        CoxeterMatrix::direct_product(&refs).unwrap()
    }

    fn base(m: &CoxeterMatrix, labels: &[&str]) -> Base {
        find_base(m, &m.subset(labels).unwrap()).expect("is a base")
    }

    fn a1(l: &str) -> CoxeterMatrix {
        SphericalType::a(1).matrix(l)
    }

    #[test]
    fn worked_chain() {
        let m = product(&[SphericalType::c(3).matrix("c"), SphericalType::d2(3).matrix("x")]);
        let up = blow_up_base(&m, &base(&m, &["c1", "c2", "c3"])).unwrap();
        assert_eq!(up.output.rank(), 6);
        let expect = product(&[SphericalType::b(3).matrix("b"), a1("r"), SphericalType::d2(3).matrix("y")]);
        assert!(matrices_isomorphic(&up.output, &expect));

        let out = &up.output;
        let d = base(out, &["x1", "x2"]);
        let sinks = sinks_of(out, &d);
        assert_eq!(sinks.len(), 1);
        assert_eq!(out.label(sinks[0]), "z!1");
        let down = blow_down(out, &d, sinks[0]).unwrap();
        let expect = product(&[SphericalType::b(3).matrix("b"), SphericalType::d2(6).matrix("y")]);
        assert!(matrices_isomorphic(&down.output, &expect));
    }

    #[test]
    fn a1_a1_d23_down() {
        let m = product(&[a1("p"), a1("q"), SphericalType::d2(3).matrix("x")]);
        let b = base(&m, &["x1", "x2"]);
        let rec = blow_down(&m, &b, m.gen("p1").unwrap()).unwrap();
        assert_eq!(rec.output.rank(), 3);
        assert_eq!(system_type(&rec.output).unwrap(), vec![SphericalType::a(1), SphericalType::d2(6)]);
    }

    #[test]
    fn b3_a1_down_is_c3() {
        let m = product(&[SphericalType::b(3).matrix("b"), a1("r")]);
        let b = base(&m, &["b1", "b2", "b3"]);
        let rec = blow_down(&m, &b, m.gen("r1").unwrap()).unwrap();
        assert_eq!(system_type(&rec.output).unwrap(), vec![SphericalType::c(3)]);
        let (x, _) = rec.split_ends.unwrap();
        let xo = rec.output.gen(m.label(x)).unwrap();
        assert_eq!(rec.output.m(xo, rec.fresh[0]), Order::Finite(4));
    }

    #[test]
    fn dihedral_twelve_up() {
        let m = SphericalType::d2(6).matrix("e");
        let rec = blow_up_base(&m, &base(&m, &["e1", "e2"])).unwrap();
        assert_eq!(system_type(&rec.output).unwrap(), vec![SphericalType::a(1), SphericalType::d2(3)]);
    }

    #[test]
    fn twist_moves_pendant() {
        let m = CoxeterMatrix::from_edges(&["x", "y", "t"], &[("x", "y", 3), ("y", "t", 3)]).unwrap();
        let s1 = m.subset(&["x", "y"]).unwrap();
        let rec = twist(&m, &s1, &m.all(), &s1).unwrap();
        let o = &rec.output;
        let t2 = o.gen("t!1").unwrap();
        assert_eq!(o.m(o.gen("x").unwrap(), t2), Order::Finite(3));
        assert_eq!(o.m(o.gen("y").unwrap(), t2), Order::Infinity);

        let trivial = twist(&m, &m.all(), &s1, &s1).unwrap();
        assert_eq!(trivial.output, m);
    }

    #[test]
    fn twist_rejects_bad_triples() {
        let m = CoxeterMatrix::from_edges(&["x", "y", "t", "u"], &[("x", "y", 3), ("y", "t", 3), ("t", "u", 3)]).unwrap();
        let s1 = m.subset(&["x", "y", "u"]).unwrap();
        let s2 = m.subset(&["x", "y", "t"]).unwrap();
        let b = m.subset(&["x", "y"]).unwrap();
        assert!(matches!(twist(&m, &s1, &s2, &b), Err(Error::TwistInvalid(_))));
        let half = m.subset(&["x", "y"]).unwrap();
        assert!(matches!(twist(&m, &half, &half, &b), Err(Error::TwistInvalid(_))));
    }

    #[test]
    fn normalize_swaps_or_twists() {
        // Pendant on y only: swapping the ends suffices.
        let m = CoxeterMatrix::from_edges(
            &["x", "y", "r", "t"],
            &[("x", "y", 3), ("x", "r", 2), ("y", "r", 2), ("y", "t", 3)],
        )
        .unwrap();
        let b = base(&m, &["x", "y"]);
        let n = normalize_for_blow_down(&m, &b).unwrap();
        assert!(n.record.is_none());
        assert_eq!(n.matrix.label(n.y), "x");

        // Pendants on both ends: a twist is needed.
        let m = CoxeterMatrix::from_edges(
            &["x", "y", "r", "t", "u"],
            &[("x", "y", 3), ("x", "r", 2), ("y", "r", 2), ("y", "t", 3), ("x", "u", 5)],
        )
        .unwrap();
        let b = base(&m, &["x", "y"]);
        let n = normalize_for_blow_down(&m, &b).unwrap();
        let rec = n.record.as_ref().unwrap();
        assert_eq!(rec.kind, TransformKind::Twist);
        assert!(full_neighborhood(&n.matrix, &n.base.members, n.y));
        let down = blow_down(&n.matrix, &n.base, n.matrix.gen("r").unwrap()).unwrap();
        assert_eq!(down.output.rank(), 4);
    }

    #[test]
    fn preconditions() {
        let m = product(&[SphericalType::c(3).matrix("c"), SphericalType::d2(3).matrix("x")]);
        let d = base(&m, &["x1", "x2"]);
        assert!(matches!(blow_down(&m, &d, m.gen("c3").unwrap()), Err(Error::BlowDownPrecondition(_))));
        let c = base(&m, &["c1", "c2", "c3"]);
        assert!(matches!(blow_up(&m, &c, m.gen("c1").unwrap()), Err(Error::BlowUpPrecondition(_))));
        assert!(matches!(blow_up(&m, &d, m.gen("x1").unwrap()), Err(Error::BlowUpPrecondition(_))));
    }

    #[test]
    fn down_then_up_round_trips() {
        let m = product(&[a1("r"), SphericalType::b(5).matrix("b")]);
        let b = base(&m, &["b1", "b2", "b3", "b4", "b5"]);
        let down = blow_down(&m, &b, m.gen("r1").unwrap()).unwrap();
        assert_eq!(system_type(&down.output).unwrap(), vec![SphericalType::c(5)]);
        let out = &down.output;
        let nb = Base::describe(out, down.new_base.as_ref().unwrap()).unwrap();
        let up = blow_up_base(out, &nb).unwrap();
        assert!(matrices_isomorphic(&up.output, &m));
    }
}
