//! Isomorphism of small complete edge-labeled graphs by census pruning and
//! backtracking. Diagrams here have at most a few dozen vertices.

use crate::matrix::{CoxeterMatrix, DiagramKind, Gen, Order, Subset};

/// Complete graph with a `u32` label on every unordered pair. Label 0 is
/// conventionally "no edge".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    labels: Vec<u32>,
}

const INFINITY_CODE: u32 = u32::MAX;

fn order_code(m: Order) -> u32 {
    match m {
        Order::Finite(v) => v,
        Order::Infinity => INFINITY_CODE,
    }
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            labels: vec![0; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Self {
        let mut g = Self::empty(n);
        for &(i, j, l) in edges {
            g.set(i, j, l);
        }
        g
    }

    pub fn set(&mut self, i: usize, j: usize, label: u32) {
        self.labels[i * self.n + j] = label;
        self.labels[j * self.n + i] = label;
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn label(&self, i: usize, j: usize) -> u32 {
        self.labels[i * self.n + j]
    }

    /// Every entry of the matrix on `a` (including 2 and infinity).
    pub fn full(m: &CoxeterMatrix, a: &Subset) -> (Self, Vec<Gen>) {
        let verts: Vec<Gen> = a.iter().copied().collect();
        let mut g = Self::empty(verts.len());
        for (i, &s) in verts.iter().enumerate() {
            for (j, &t) in verts.iter().enumerate().skip(i + 1) {
                g.set(i, j, order_code(m.m(s, t)));
            }
        }
        (g, verts)
    }

    /// The diagram of `kind` induced on `a`; non-edges get label 0.
    pub fn diagram(m: &CoxeterMatrix, a: &Subset, kind: DiagramKind) -> (Self, Vec<Gen>) {
        let verts: Vec<Gen> = a.iter().copied().collect();
        let mut g = Self::empty(verts.len());
        for (i, &s) in verts.iter().enumerate() {
            for (j, &t) in verts.iter().enumerate().skip(i + 1) {
                let e = m.m(s, t);
                if kind.has_edge(e) {
                    g.set(i, j, order_code(e));
                }
            }
        }
        (g, verts)
    }

    /// Sorted nonzero labels at vertex `i`.
    fn vertex_census(&self, i: usize) -> Vec<u32> {
        let mut c: Vec<u32> = (0..self.n)
            .filter(|&j| j != i)
            .map(|j| self.label(i, j))
            .filter(|&l| l != 0)
            .collect();
        c.sort_unstable();
        c
    }

    /// Sorted multiset of vertex censuses; equal for isomorphic graphs.
    pub fn census(&self) -> Vec<Vec<u32>> {
        let mut c: Vec<Vec<u32>> = (0..self.n).map(|i| self.vertex_census(i)).collect();
        c.sort();
        c
    }
}

/// Returns `map` with `map[i]` the vertex of `b` matched to vertex `i` of
/// `a`, or `None` when the graphs are not isomorphic.
pub fn find_isomorphism(a: &LabeledGraph, b: &LabeledGraph) -> Option<Vec<usize>> {
    if a.n != b.n || a.census() != b.census() {
        return None;
    }
    let n = a.n;
    let ca: Vec<Vec<u32>> = (0..n).map(|i| a.vertex_census(i)).collect();
    let cb: Vec<Vec<u32>> = (0..n).map(|i| b.vertex_census(i)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| ca[i] == cb[j]).collect())
        .collect();

    // Most constrained vertices first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if backtrack(a, b, &order, 0, &candidates, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn backtrack(
    a: &LabeledGraph,
    b: &LabeledGraph,
    order: &[usize],
    depth: usize,
    candidates: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| a.label(u, v) == b.label(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if backtrack(a, b, order, depth + 1, candidates, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Isomorphism of Coxeter matrices up to relabeling, comparing every entry.
/// Returns the generator correspondence `a -> b`.
pub fn matrix_isomorphism(a: &CoxeterMatrix, b: &CoxeterMatrix) -> Option<Vec<(Gen, Gen)>> {
    let (ga, va) = LabeledGraph::full(a, &a.all());
    let (gb, vb) = LabeledGraph::full(b, &b.all());
    find_isomorphism(&ga, &gb).map(|map| {
        map.iter()
            .enumerate()
            .map(|(i, &j)| (va[i], vb[j]))
            .collect()
    })
}

pub fn matrices_isomorphic(a: &CoxeterMatrix, b: &CoxeterMatrix) -> bool {
    matrix_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_with_different_label_positions() {
        // 3-4 path vs 4-3 path: isomorphic by reversal.
        let p = LabeledGraph::from_edges(3, &[(0, 1, 3), (1, 2, 4)]);
        let q = LabeledGraph::from_edges(3, &[(0, 1, 4), (1, 2, 3)]);
        let map = find_isomorphism(&p, &q).unwrap();
        assert_eq!(map, vec![2, 1, 0]);
        // F4 (3,4,3) vs C4 (3,3,4): same census of labels, not isomorphic.
        let f4 = LabeledGraph::from_edges(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]);
        let c4 = LabeledGraph::from_edges(4, &[(0, 1, 3), (1, 2, 3), (2, 3, 4)]);
        assert!(find_isomorphism(&f4, &c4).is_none());
    }

    #[test]
    fn star_vs_path() {
        let star = LabeledGraph::from_edges(4, &[(0, 1, 3), (0, 2, 3), (0, 3, 3)]);
        let path = LabeledGraph::from_edges(4, &[(0, 1, 3), (1, 2, 3), (2, 3, 3)]);
        assert!(find_isomorphism(&star, &path).is_none());
        assert!(find_isomorphism(&star, &star).is_some());
    }

    #[test]
    fn matrices_up_to_relabeling() {
        let a = CoxeterMatrix::from_edges(&["x", "y", "z"], &[("x", "y", 3), ("y", "z", 2)]).unwrap();
        let b = CoxeterMatrix::from_edges(&["p", "q", "r"], &[("q", "r", 3), ("p", "q", 2)]).unwrap();
        assert!(matrices_isomorphic(&a, &b));
        let c = CoxeterMatrix::from_edges(&["p", "q", "r"], &[("q", "r", 3), ("p", "r", 2)]).unwrap();
        assert!(matrices_isomorphic(&a, &c));
        let d = CoxeterMatrix::from_edges(&["p", "q", "r"], &[("q", "r", 3)]).unwrap();
        assert!(!matrices_isomorphic(&a, &d));
    }
}
