//! Recognition of finite irreducible Coxeter systems in Coxeter's naming
//! (A_n, B_n, C_n, D_2(k), E_6..E_8, F_4, G_3, G_4) and enumeration of bases.
//!
//! Note the naming: `B_n` here is the Y-shaped diagram with two short arms
//! (the even-signed hyperoctahedral group), `C_n` is the linear diagram ending
//! in a 4. `B_3` coincides with `A_3`, `D_2(3)` with `A_2` and `D_2(4)` with
//! `C_2`; classification reports `A3`, `D2(3)` and `D2(4)` for those.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_iso::{find_isomorphism, LabeledGraph};
use crate::matrix::{CoxeterMatrix, DiagramKind, Gen, Order, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D2,
    E6,
    E7,
    E8,
    F4,
    G3,
    G4,
}

/// A finite irreducible Coxeter type. `param` is the rank for A/B/C, the
/// dihedral label for D2, and the rank for the exceptional families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SphericalType {
    pub family: Family,
    pub param: u32,
}

impl SphericalType {
    pub fn a(n: u32) -> Self {
        assert!(n >= 1);
        Self { family: Family::A, param: n }
    }

    pub fn b(n: u32) -> Self {
        assert!(n >= 3);
        Self { family: Family::B, param: n }
    }

    pub fn c(n: u32) -> Self {
        assert!(n >= 2);
        Self { family: Family::C, param: n }
    }

    pub fn d2(k: u32) -> Self {
        assert!(k >= 3);
        Self { family: Family::D2, param: k }
    }

    pub fn exceptional(family: Family) -> Self {
        let param = match family {
            Family::E6 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
            Family::F4 => 4,
            Family::G3 => 3,
            Family::G4 => 4,
            _ => panic!("{family:?} is not exceptional"),
        };
        Self { family, param }
    }

    /// The alias this type is identified with, if any.
    pub fn alias(self) -> Option<SphericalType> {
        match (self.family, self.param) {
            (Family::B, 3) => Some(Self::a(3)),
            (Family::A, 3) => Some(Self::b(3)),
            (Family::D2, 3) => Some(Self::a(2)),
            (Family::D2, 4) => Some(Self::c(2)),
            (Family::A, 2) => Some(Self::d2(3)),
            (Family::C, 2) => Some(Self::d2(4)),
            _ => None,
        }
    }

    /// The form classification reports: rank-2 types as D2(k), B3 as A3.
    pub fn canonical(self) -> SphericalType {
        match (self.family, self.param) {
            (Family::B, 3) => Self::a(3),
            (Family::A, 2) => Self::d2(3),
            (Family::C, 2) => Self::d2(4),
            _ => self,
        }
    }

    pub fn same_system(self, other: SphericalType) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn rank(self) -> usize {
        match self.family {
            Family::D2 => 2,
            _ => self.param as usize,
        }
    }

    /// |W| for this type.
    pub fn order(self) -> u128 {
        let fact = |n: u32| (1..=n as u128).product::<u128>();
        let n = self.param;
        match self.family {
            Family::A => fact(n + 1),
            Family::B => (1u128 << (n - 1)) * fact(n),
            Family::C => (1u128 << n) * fact(n),
            Family::D2 => 2 * n as u128,
            Family::E6 => 51_840,
            Family::E7 => 2_903_040,
            Family::E8 => 696_729_600,
            Family::F4 => 1_152,
            Family::G3 => 120,
            Family::G4 => 14_400,
        }
    }

    /// Length of the longest element (number of positive roots).
    pub fn positive_roots(self) -> usize {
        let n = self.param as usize;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B => n * n - n,
            Family::C => n * n,
            Family::D2 => n,
            Family::E6 => 36,
            Family::E7 => 63,
            Family::E8 => 120,
            Family::F4 => 24,
            Family::G3 => 15,
            Family::G4 => 60,
        }
    }

    /// `Some(q)` when the type is B_{2q+1} (A3 counts as B3).
    pub fn odd_b(self) -> Option<u32> {
        match (self.family, self.param) {
            (Family::A, 3) => Some(1),
            (Family::B, n) if n % 2 == 1 => Some((n - 1) / 2),
            _ => None,
        }
    }

    /// `Some(q)` when the type is D2(2q+1).
    pub fn odd_dihedral(self) -> Option<u32> {
        match (self.family, self.param) {
            (Family::D2, k) if k % 2 == 1 => Some((k - 1) / 2),
            _ => None,
        }
    }

    /// B_{2p+1} or D_2(2p+1): the types a base can be blown down from.
    pub fn is_blow_down_type(self) -> bool {
        self.odd_b().is_some() || self.odd_dihedral().is_some()
    }

    /// C_{2q+1} or D_2(4q+2): the types a base can be blown up from.
    pub fn is_blow_up_type(self) -> bool {
        match (self.family, self.param) {
            (Family::C, n) => n >= 3 && n % 2 == 1,
            (Family::D2, k) => k % 4 == 2,
            _ => false,
        }
    }

    /// A_1, C_{2q+1} or D_2(4q+2): admissible types for the perp component
    /// containing the condition-(3) witness.
    pub fn is_witness_component_type(self) -> bool {
        self == Self::a(1) || self.is_blow_up_type()
    }

    /// The type obtained by blowing this base down (order doubles).
    pub fn blown_down(self) -> Option<SphericalType> {
        if let Some(q) = self.odd_b() {
            Some(Self::c(2 * q + 1))
        } else {
            self.odd_dihedral().map(|q| Self::d2(4 * q + 2))
        }
    }

    /// The type obtained by blowing this base up (order halves).
    pub fn blown_up(self) -> Option<SphericalType> {
        if !self.is_blow_up_type() {
            return None;
        }
        match self.family {
            Family::C if self.param == 3 => Some(Self::a(3)),
            Family::C => Some(Self::b(self.param)),
            _ => Some(Self::d2(self.param / 2)),
        }
    }

    /// The canonical C-diagram: vertex count and edges (m > 2 only).
    pub fn template(self) -> (usize, Vec<(usize, usize, u32)>) {
        let path = |n: usize, labels: &[u32]| -> Vec<(usize, usize, u32)> {
            (0..n - 1).map(|i| (i, i + 1, labels[i])).collect()
        };
        let n = self.rank();
        let edges = match self.family {
            Family::A => path(n, &vec![3; n.saturating_sub(1)]),
            Family::B => {
                // b_1 - ... - b_{n-2}, with b_{n-1} and b_n both on b_{n-2}.
                let mut e = path(n - 1, &vec![3; n - 2]);
                e.push((n - 3, n - 1, 3));
                e
            }
            Family::C => {
                let mut labels = vec![3; n - 1];
                labels[n - 2] = 4;
                path(n, &labels)
            }
            Family::D2 => vec![(0, 1, self.param)],
            Family::E6 | Family::E7 | Family::E8 => {
                // Long chain 0..n-2 with vertex n-1 attached to vertex 2.
                let mut e = path(n - 1, &vec![3; n - 2]);
                e.push((2, n - 1, 3));
                e
            }
            Family::F4 => path(4, &[3, 4, 3]),
            Family::G3 => path(3, &[5, 3]),
            Family::G4 => path(4, &[5, 3, 3]),
        };
        (n, edges)
    }

    /// Template indices of the split ends, for B types (A3 included).
    fn template_split_ends(self) -> Option<(usize, usize)> {
        match (self.family, self.param) {
            (Family::A, 3) => Some((0, 2)),
            (Family::B, n) => Some((n as usize - 2, n as usize - 1)),
            _ => None,
        }
    }

    /// The diagram as a matrix on labels `{prefix}1..{prefix}n`, all other
    /// pairs commuting.
    pub fn matrix(self, prefix: &str) -> CoxeterMatrix {
        let (n, edges) = self.template();
        let labels: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        let mut b = CoxeterMatrix::builder().generators(labels.iter().cloned());
        for i in 0..n {
            for j in (i + 1)..n {
                let m = edges
                    .iter()
                    .find(|&&(u, v, _)| (u, v) == (i, j) || (u, v) == (j, i))
                    .map_or(2, |e| e.2);
                b = b.finite(labels[i].clone(), labels[j].clone(), m);
            }
        }
        b.build().expect("template labels are valid")
    }

    fn candidates(n: usize, single_label: Option<u32>) -> Vec<SphericalType> {
        let n32 = n as u32;
        match n {
            0 => vec![],
            1 => vec![Self::a(1)],
            2 => single_label.filter(|&k| k >= 3).map(Self::d2).into_iter().collect(),
            _ => {
                let mut c = vec![Self::a(n32), Self::c(n32)];
                if n >= 4 {
                    c.push(Self::b(n32));
                }
                match n {
                    3 => c.push(Self::exceptional(Family::G3)),
                    4 => {
                        c.push(Self::exceptional(Family::F4));
                        c.push(Self::exceptional(Family::G4));
                    }
                    6 => c.push(Self::exceptional(Family::E6)),
                    7 => c.push(Self::exceptional(Family::E7)),
                    8 => c.push(Self::exceptional(Family::E8)),
                    _ => {}
                }
                c
            }
        }
    }
}

impl fmt::Display for SphericalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.param),
            Family::B => write!(f, "B{}", self.param),
            Family::C => write!(f, "C{}", self.param),
            Family::D2 => write!(f, "D2({})", self.param),
            Family::E6 => f.write_str("E6"),
            Family::E7 => f.write_str("E7"),
            Family::E8 => f.write_str("E8"),
            Family::F4 => f.write_str("F4"),
            Family::G3 => f.write_str("G3"),
            Family::G4 => f.write_str("G4"),
        }
    }
}

/// Recognizes the C-diagram induced on an irreducible `a`. Returns the type
/// and, for each template vertex, the matched member.
pub(crate) fn recognize(m: &CoxeterMatrix, a: &Subset) -> Option<(SphericalType, Vec<Gen>)> {
    let (graph, verts) = LabeledGraph::diagram(m, a, DiagramKind::Coxeter);
    // An infinite pair never matches a template; reject early.
    if a.iter().any(|&s| a.iter().any(|&t| !m.m(s, t).is_finite())) {
        return None;
    }
    let single_label = if verts.len() == 2 {
        m.m(verts[0], verts[1]).finite()
    } else {
        None
    };
    for t in SphericalType::candidates(verts.len(), single_label) {
        let (n, edges) = t.template();
        let template = LabeledGraph::from_edges(n, &edges);
        if let Some(map) = find_isomorphism(&template, &graph) {
            return Some((t, map.into_iter().map(|j| verts[j]).collect()));
        }
    }
    None
}

/// The type of an irreducible subset, or `None` when it generates an infinite
/// group.
pub fn classify_irreducible(m: &CoxeterMatrix, a: &Subset) -> Result<Option<SphericalType>> {
    if !m.is_irreducible(a) {
        return Err(Error::NotIrreducible);
    }
    Ok(recognize(m, a).map(|(t, _)| t))
}

/// Every C-diagram component of `a` is of finite type.
pub fn is_spherical(m: &CoxeterMatrix, a: &Subset) -> bool {
    m.components(a).iter().all(|c| recognize(m, c).is_some())
}

/// Each component of the whole diagram with its type (`None` = infinite).
pub fn classify_components(m: &CoxeterMatrix) -> Vec<(Subset, Option<SphericalType>)> {
    m.components(&m.all())
        .into_iter()
        .map(|c| {
            let t = recognize(m, &c).map(|(t, _)| t);
            (c, t)
        })
        .collect()
}

/// Sorted list of component types when the whole system is finite.
pub fn system_type(m: &CoxeterMatrix) -> Option<Vec<SphericalType>> {
    let mut types: Vec<SphericalType> = classify_components(m)
        .into_iter()
        .map(|(_, t)| t)
        .collect::<Option<Vec<_>>>()?;
    types.sort();
    Some(types)
}

pub fn group_order(t: SphericalType) -> u128 {
    t.order()
}

/// A basic subset with its type and distinguished members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base {
    pub members: Subset,
    pub stype: SphericalType,
    /// `(x, y)` in generator order, for B_{2p+1} (A3 included) and D2(2p+1).
    pub split_ends: Option<(Gen, Gen)>,
    /// The endpoint on the label-4 edge, for C_n with n >= 3.
    pub four_end: Option<Gen>,
    /// Both members in generator order, for dihedral types.
    pub distinguished_pair: Option<(Gen, Gen)>,
}

impl Base {
    fn from_recognized(members: Subset, stype: SphericalType, roles: &[Gen]) -> Self {
        let ordered = |a: Gen, b: Gen| if a < b { (a, b) } else { (b, a) };
        let distinguished_pair = (stype.family == Family::D2).then(|| ordered(roles[0], roles[1]));
        let split_ends = if let Some((i, j)) = stype.template_split_ends() {
            stype.odd_b().map(|_| ordered(roles[i], roles[j]))
        } else if stype.odd_dihedral().is_some() {
            distinguished_pair
        } else {
            None
        };
        let four_end = (stype.family == Family::C && stype.param >= 3).then(|| roles[stype.rank() - 1]);
        Base {
            members,
            stype,
            split_ends,
            four_end,
            distinguished_pair,
        }
    }

    /// Builds the base record for `members`, if it is an irreducible spherical
    /// subset with at least two elements (maximality is not checked).
    pub fn describe(m: &CoxeterMatrix, members: &Subset) -> Option<Base> {
        if members.len() < 2 || !m.is_irreducible(members) {
            return None;
        }
        let (t, roles) = recognize(m, members)?;
        Some(Base::from_recognized(members.clone(), t, &roles))
    }

    pub fn labels(&self, m: &CoxeterMatrix) -> Vec<String> {
        m.subset_labels(&self.members)
    }
}

fn finite_c_neighbors(m: &CoxeterMatrix, a: &Subset) -> BTreeSet<Gen> {
    m.generators()
        .filter(|g| !a.contains(g))
        .filter(|&g| {
            a.iter().any(|&s| match m.m(s, g) {
                Order::Finite(v) => v > 2,
                Order::Infinity => false,
            })
        })
        .collect()
}

/// All bases: maximal irreducible spherical subsets with at least two
/// members, sorted by member list.
pub fn basic_subsets(m: &CoxeterMatrix) -> Vec<Base> {
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut stack: Vec<Subset> = m.generators().map(|g| Subset::from([g])).collect();
    let mut maximal = Vec::new();
    for s in &stack {
        seen.insert(s.clone());
    }
    while let Some(a) = stack.pop() {
        let mut extended = false;
        for v in finite_c_neighbors(m, &a) {
            let mut b = a.clone();
            b.insert(v);
            if recognize(m, &b).is_some() {
                extended = true;
                if seen.insert(b.clone()) {
                    stack.push(b);
                }
            }
        }
        if !extended && a.len() >= 2 {
            maximal.push(a);
        }
    }
    let mut bases: Vec<Base> = maximal
        .into_iter()
        .filter_map(|a| Base::describe(m, &a))
        .collect();
    bases.sort_by(|x, y| x.members.iter().cmp(y.members.iter()));
    bases
}

/// The base with exactly these members, if it is one.
pub fn find_base(m: &CoxeterMatrix, members: &Subset) -> Option<Base> {
    basic_subsets(m).into_iter().find(|b| &b.members == members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify_labels(m: &CoxeterMatrix) -> Option<SphericalType> {
        classify_irreducible(m, &m.all()).unwrap()
    }

    #[test]
    fn linear_three_four_is_c3() {
        let m = CoxeterMatrix::from_edges(&["a", "b", "c"], &[("a", "b", 3), ("b", "c", 4), ("a", "c", 2)]).unwrap();
        assert_eq!(classify_labels(&m), Some(SphericalType::c(3)));
    }

    #[test]
    fn single_edge_is_dihedral() {
        let m = CoxeterMatrix::from_edges(&["a", "b"], &[("a", "b", 5)]).unwrap();
        assert_eq!(classify_labels(&m), Some(SphericalType::d2(5)));
    }

    #[test]
    fn y_shape_is_b5() {
        let m = SphericalType::b(5).matrix("b");
        assert_eq!(classify_labels(&m), Some(SphericalType::b(5)));
        // Relabeled and reordered still B5.
        let order: Vec<Gen> = [4, 2, 0, 3, 1].into_iter().map(Gen).collect();
        let r = m.reordered(&order).unwrap();
        assert_eq!(classify_labels(&r), Some(SphericalType::b(5)));
    }

    #[test]
    fn every_template_round_trips() {
        let mut types = vec![SphericalType::a(1), SphericalType::a(4), SphericalType::c(5), SphericalType::b(4), SphericalType::b(6), SphericalType::d2(7)];
        types.extend([Family::E6, Family::E7, Family::E8, Family::F4, Family::G3, Family::G4].map(SphericalType::exceptional));
        for t in types {
            assert_eq!(classify_labels(&t.matrix("s")), Some(t), "{t}");
        }
        // Aliased forms come back in canonical spelling.
        assert_eq!(classify_labels(&SphericalType::b(3).matrix("s")), Some(SphericalType::a(3)));
        assert_eq!(classify_labels(&SphericalType::c(2).matrix("s")), Some(SphericalType::d2(4)));
    }

    #[test]
    fn affine_and_hyperbolic_are_not_spherical() {
        // Affine A~2: triangle of 3s.
        let m = CoxeterMatrix::from_edges(&["a", "b", "c"], &[("a", "b", 3), ("b", "c", 3), ("a", "c", 3)]).unwrap();
        assert_eq!(classify_labels(&m), None);
        // 4-4 path is affine C~2.
        let m = CoxeterMatrix::from_edges(&["a", "b", "c"], &[("a", "b", 4), ("b", "c", 4), ("a", "c", 2)]).unwrap();
        assert_eq!(classify_labels(&m), None);
        let inf = CoxeterMatrix::from_edges(&["x", "y"], &[]).unwrap();
        assert!(!is_spherical(&inf, &inf.all()));
        assert!(is_spherical(&inf, &Subset::new()));
    }

    #[test]
    fn reducible_input_is_rejected() {
        let m = CoxeterMatrix::from_edges(&["x", "y"], &[("x", "y", 2)]).unwrap();
        assert!(matches!(classify_irreducible(&m, &m.all()), Err(Error::NotIrreducible)));
    }

    #[test]
    fn bases_of_products() {
        let a1 = SphericalType::a(1).matrix("r");
        let d3 = SphericalType::d2(3).matrix("x");
        let d6 = SphericalType::d2(6).matrix("e");
        let m = CoxeterMatrix::direct_product(&[&a1, &d3, &d6]).unwrap();
        let types: Vec<SphericalType> = basic_subsets(&m).iter().map(|b| b.stype).collect();
        assert_eq!(types, vec![SphericalType::d2(3), SphericalType::d2(6)]);

        let c3 = SphericalType::c(3).matrix("c");
        let m = CoxeterMatrix::direct_product(&[&c3, &d3]).unwrap();
        let bases = basic_subsets(&m);
        assert_eq!(bases.len(), 2);
        assert_eq!(bases[0].stype, SphericalType::c(3));
        assert_eq!(bases[0].four_end, Some(m.gen("c3").unwrap()));
        assert_eq!(bases[1].split_ends, Some((m.gen("x1").unwrap(), m.gen("x2").unwrap())));

        assert!(basic_subsets(&a1).is_empty());
    }

    #[test]
    fn split_ends_of_a3_are_endpoints() {
        let m = SphericalType::a(3).matrix("b");
        let base = &basic_subsets(&m)[0];
        assert_eq!(base.split_ends, Some((m.gen("b1").unwrap(), m.gen("b3").unwrap())));
        let b5 = SphericalType::b(5).matrix("b");
        let base = &basic_subsets(&b5)[0];
        assert_eq!(base.split_ends, Some((b5.gen("b4").unwrap(), b5.gen("b5").unwrap())));
    }

    #[test]
    fn overlapping_bases() {
        // x -6- y -6- z: {x,y,z} is affine, {x,y} and {y,z} are both bases.
        let m = CoxeterMatrix::from_edges(&["x", "y", "z"], &[("x", "y", 6), ("y", "z", 6), ("x", "z", 2)]).unwrap();
        let bases = basic_subsets(&m);
        assert_eq!(bases.len(), 2);
        assert!(bases.iter().all(|b| b.stype == SphericalType::d2(6)));
    }

    #[test]
    fn orders() {
        assert_eq!(SphericalType::d2(3).order(), 6);
        assert_eq!(SphericalType::c(3).order(), 48);
        assert_eq!(SphericalType::b(3).order(), 24);
        assert_eq!(SphericalType::a(3).order(), 24);
        assert_eq!(SphericalType::exceptional(Family::G3).order(), 120);
        for q in 1..5 {
            let b = SphericalType::b(2 * q + 1);
            let c = SphericalType::c(2 * q + 1);
            assert_eq!(b.order() * 2, c.order());
            assert_eq!(SphericalType::d2(2 * q + 1).order() * 2, SphericalType::d2(4 * q + 2).order());
        }
    }
}
