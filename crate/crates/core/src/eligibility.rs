//! Per-base verdicts: the three blow-down conditions, sinks, contractibility
//! and blow-up eligibility.

use crate::classify::{basic_subsets, recognize, Base, SphericalType};
use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Gen, Subset};
use crate::par;

fn base_and_perp(m: &CoxeterMatrix, b: &Base) -> (Subset, Subset) {
    let perp = m.perp(&b.members);
    let union = b.members.union(&perp).copied().collect();
    (perp, union)
}

fn split_ends(b: &Base) -> Result<(Gen, Gen)> {
    match (b.stype.is_blow_down_type(), b.split_ends) {
        (true, Some(ends)) => Ok(ends),
        _ => Err(Error::IneligibleType(b.stype.to_string())),
    }
}

/// N(x) ∩ N(y) = B ∪ B⊥ for the split ends x, y.
pub fn condition1(m: &CoxeterMatrix, b: &Base) -> Result<bool> {
    let (x, y) = split_ends(b)?;
    let (_, union) = base_and_perp(m, b);
    let common: Subset = m.neighborhood(x).intersection(&m.neighborhood(y)).copied().collect();
    Ok(common == union)
}

/// Generators of T = S − (B ∪ B⊥) reachable from `start` by a path of finite
/// edges whose vertices after `start` all lie in T.
pub fn reach_outside(m: &CoxeterMatrix, b: &Base, start: Gen) -> Subset {
    let (_, union) = base_and_perp(m, b);
    let outside: Subset = m.generators().filter(|g| !union.contains(g)).collect();
    let mut seen = Subset::new();
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &t in &outside {
            if !seen.contains(&t) && t != u && m.m(u, t).is_finite() {
                seen.insert(t);
                stack.push(t);
            }
        }
    }
    seen
}

/// (T_x, T_y) for the split ends in generator order.
pub fn split_reach(m: &CoxeterMatrix, b: &Base) -> Result<(Subset, Subset)> {
    let (x, y) = split_ends(b)?;
    Ok((reach_outside(m, b, x), reach_outside(m, b, y)))
}

/// T_x ∩ T_y = ∅. Meaningful only when condition (1) holds.
pub fn condition2(m: &CoxeterMatrix, b: &Base) -> Result<bool> {
    let (tx, ty) = split_reach(m, b)?;
    Ok(tx.is_disjoint(&ty))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cond3Witness {
    pub r: Gen,
    pub component: Subset,
    pub component_type: SphericalType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition3 {
    /// First admissible witness in generator order.
    pub witness: Option<Cond3Witness>,
    /// Every admissible r.
    pub candidates: Vec<Gen>,
}

impl Condition3 {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
    }
}

fn admissible_r(m: &CoxeterMatrix, perp: &Subset, union: &Subset, r: Gen) -> Option<Cond3Witness> {
    if &m.neighborhood(r) != union || m.odd_component(r) != Subset::from([r]) {
        return None;
    }
    let component = m.components(perp).into_iter().find(|c| c.contains(&r))?;
    let (component_type, _) = recognize(m, &component)?;
    component_type.is_witness_component_type().then_some(Cond3Witness {
        r,
        component,
        component_type,
    })
}

pub fn condition3(m: &CoxeterMatrix, b: &Base) -> Result<Condition3> {
    split_ends(b)?;
    let (perp, union) = base_and_perp(m, b);
    let witnesses: Vec<Cond3Witness> = perp
        .iter()
        .filter_map(|&r| admissible_r(m, &perp, &union, r))
        .collect();
    Ok(Condition3 {
        candidates: witnesses.iter().map(|w| w.r).collect(),
        witness: witnesses.into_iter().next(),
    })
}

/// r ∈ B⊥ with N(r) = B ∪ B⊥ and {r} a component of B⊥.
pub fn sinks_of(m: &CoxeterMatrix, b: &Base) -> Vec<Gen> {
    let (perp, union) = base_and_perp(m, b);
    let components = m.components(&perp);
    perp.iter()
        .copied()
        .filter(|&r| m.neighborhood(r) == union && components.iter().any(|c| c.len() == 1 && c.contains(&r)))
        .collect()
}

/// The pivot when the base can be blown up.
pub fn blow_up_pivot(m: &CoxeterMatrix, b: &Base) -> Option<Gen> {
    if !b.stype.is_blow_up_type() {
        return None;
    }
    let (_, union) = base_and_perp(m, b);
    let full = |a: &Gen| m.neighborhood(*a) == union;
    match b.four_end {
        Some(a) => full(&a).then_some(a),
        None => b.members.iter().copied().find(full),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EligibilityReport {
    pub base: Base,
    /// `None` when the type is not B(2p+1)/D2(2p+1).
    pub cond1: Option<bool>,
    /// `None` when not evaluated (condition (1) failed or wrong type).
    pub cond2: Option<bool>,
    pub cond3: Option<bool>,
    pub cond3_witness: Option<Cond3Witness>,
    pub cond3_candidates: Vec<Gen>,
    pub sinks: Vec<Gen>,
    pub blow_down_eligible: bool,
    pub blow_up_eligible: bool,
    pub blow_up_pivot: Option<Gen>,
}

impl EligibilityReport {
    /// Eligible for blow-down and carrying at least one sink.
    pub fn contracts(&self) -> bool {
        self.blow_down_eligible && !self.sinks.is_empty()
    }
}

pub fn report(m: &CoxeterMatrix, b: &Base) -> EligibilityReport {
    let sinks = sinks_of(m, b);
    let blow_up_pivot = blow_up_pivot(m, b);
    let mut r = EligibilityReport {
        base: b.clone(),
        cond1: None,
        cond2: None,
        cond3: None,
        cond3_witness: None,
        cond3_candidates: Vec::new(),
        sinks,
        blow_down_eligible: false,
        blow_up_eligible: blow_up_pivot.is_some(),
        blow_up_pivot,
    };
    if !b.stype.is_blow_down_type() {
        return r;
    }
    let c1 = condition1(m, b).expect("type checked above");
    r.cond1 = Some(c1);
    if c1 {
        r.cond2 = Some(condition2(m, b).expect("type checked above"));
    }
    let c3 = condition3(m, b).expect("type checked above");
    r.cond3 = Some(c3.holds());
    r.cond3_candidates = c3.candidates;
    r.cond3_witness = c3.witness;
    r.blow_down_eligible = c1 && r.cond2 == Some(true) && r.cond3 == Some(true);
    r
}

/// One report per base, in base order.
pub fn reports(m: &CoxeterMatrix) -> Vec<EligibilityReport> {
    let bases = basic_subsets(m);
    par::map(&bases, |b| report(m, b))
}

/// A base satisfying the blow-down conditions together with one of its
/// sinks, if the rank can be lowered.
pub fn is_contractible(m: &CoxeterMatrix) -> Option<(Base, Gen)> {
    reports(m)
        .into_iter()
        .find(|r| r.contracts())
        .map(|r| (r.base, r.sinks[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::find_base;

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
    fn c3_times_d23() {
        let m = product(&[SphericalType::c(3).matrix("c"), SphericalType::d2(3).matrix("d")]);
        let d = base(&m, &["d1", "d2"]);
        assert!(condition1(&m, &d).unwrap());
        assert!(condition2(&m, &d).unwrap());
        let c3 = condition3(&m, &d).unwrap();
        let w = c3.witness.unwrap();
        assert_eq!(w.r, m.gen("c3").unwrap());
        assert_eq!(w.component_type, SphericalType::c(3));
        assert!(sinks_of(&m, &d).is_empty());
        assert!(report(&m, &d).blow_down_eligible);
        assert!(is_contractible(&m).is_none());

        let c = base(&m, &["c1", "c2", "c3"]);
        assert_eq!(blow_up_pivot(&m, &c), Some(m.gen("c3").unwrap()));
        assert!(matches!(condition1(&m, &c), Err(Error::IneligibleType(_))));
    }

    #[test]
    fn condition1_counterexample() {
        let m = CoxeterMatrix::from_edges(&["x", "y", "s"], &[("x", "y", 3), ("s", "x", 3), ("s", "y", 3)]).unwrap();
        // {x,y,s} is affine, so {x,y} is a base.
        let b = base(&m, &["x", "y"]);
        assert!(!condition1(&m, &b).unwrap());
        assert_eq!(report(&m, &b).cond2, None);

        let alone = SphericalType::d2(3).matrix("x");
        let b = base(&alone, &["x1", "x2"]);
        assert!(condition1(&alone, &b).unwrap());
        assert!(!condition3(&alone, &b).unwrap().holds());
    }

    #[test]
    fn condition2_examples() {
        let m = CoxeterMatrix::from_edges(
            &["x", "y", "u", "v"],
            &[("x", "y", 3), ("x", "u", 3), ("u", "y", 3), ("y", "v", 3), ("v", "x", 3)],
        )
        .unwrap();
        // x-u-y-v square plus the base edge: u, v adjacent to both ends.
        let b = base(&m, &["x", "y"]);
        assert!(!condition2(&m, &b).unwrap());

        let m = CoxeterMatrix::from_edges(&["x", "y", "u", "w"], &[("x", "y", 3), ("x", "u", 3), ("u", "w", 3), ("w", "y", 3)]).unwrap();
        let b = base(&m, &["x", "y"]);
        let (tx, ty) = split_reach(&m, &b).unwrap();
        assert_eq!(tx, ty);
        assert!(!condition2(&m, &b).unwrap());
    }

    #[test]
    fn sink_examples() {
        let m = product(&[a1("p"), a1("q"), SphericalType::d2(3).matrix("x")]);
        assert_eq!(sinks_of(&m, &base(&m, &["x1", "x2"])).len(), 2);

        let m = product(&[a1("r"), SphericalType::d2(3).matrix("x"), SphericalType::d2(3).matrix("y")]);
        let r = m.gen("r1").unwrap();
        assert_eq!(sinks_of(&m, &base(&m, &["x1", "x2"])), vec![r]);
        assert_eq!(sinks_of(&m, &base(&m, &["y1", "y2"])), vec![r]);

        let m = product(&[a1("r"), SphericalType::d2(3).matrix("x")]);
        assert_eq!(is_contractible(&m).map(|(_, s)| s), Some(m.gen("r1").unwrap()));
        assert!(is_contractible(&SphericalType::a(2).matrix("x")).is_none());
    }

    #[test]
    fn dihedral_blow_up_and_down() {
        let m = product(&[a1("r"), SphericalType::d2(3).matrix("x"), SphericalType::d2(6).matrix("e")]);
        let e = report(&m, &base(&m, &["e1", "e2"]));
        assert!(e.blow_up_eligible && !e.blow_down_eligible && e.cond1.is_none());
        let x = report(&m, &base(&m, &["x1", "x2"]));
        assert!(x.blow_down_eligible && x.contracts());

        // y only sees the base, so it pivots; once s also touches y neither end does.
        let m = CoxeterMatrix::from_edges(&["x", "y", "s"], &[("x", "y", 6), ("s", "x", 3)]).unwrap();
        assert_eq!(blow_up_pivot(&m, &base(&m, &["x", "y"])), m.gen("y").ok());
        let m = CoxeterMatrix::from_edges(&["x", "y", "s"], &[("x", "y", 6), ("s", "x", 3), ("s", "y", 3)]).unwrap();
        assert_eq!(blow_up_pivot(&m, &base(&m, &["x", "y"])), None);
    }

    #[test]
    fn sinks_are_candidates() {
        let m = product(&[a1("p"), a1("q"), SphericalType::d2(5).matrix("x")]);
        let r = report(&m, &base(&m, &["x1", "x2"]));
        for s in &r.sinks {
            assert!(r.cond3_candidates.contains(s));
        }
    }
}
