//! Exhaustive search for chord-free (induced) cycles of the P-diagram.
//!
//! Exponential; this exists as a small-instance oracle for the reachability
//! form of the cycle condition in [`crate::eligibility`].

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Gen};

pub const DEFAULT_SEARCH_CAP: usize = 16;

/// All chord-free cycles of length (vertex count) at least `min_len` that
/// pass through both `x` and `y`. Each cycle is reported once, as the
/// lexicographically least rotation/reflection of its label sequence, and the
/// list is sorted.
pub fn chord_free_cycles_through(
    m: &CoxeterMatrix,
    x: Gen,
    y: Gen,
    min_len: usize,
) -> Result<Vec<Vec<Gen>>> {
    chord_free_cycles_through_capped(m, x, y, min_len, DEFAULT_SEARCH_CAP)
}

pub fn chord_free_cycles_through_capped(
    m: &CoxeterMatrix,
    x: Gen,
    y: Gen,
    min_len: usize,
    cap: usize,
) -> Result<Vec<Vec<Gen>>> {
    if m.rank() > cap {
        return Err(Error::SearchCapExceeded {
            generators: m.rank(),
            cap,
        });
    }
    assert!(x != y, "cycle search needs two distinct generators");
    assert!(min_len >= 3, "cycles have at least three vertices");

    let n = m.rank();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && m.m(Gen(i), Gen(j)).is_finite()).collect())
        .collect();

    let mut found: Vec<Vec<Gen>> = Vec::new();
    let mut path = vec![x.0];
    let mut on_path = vec![false; n];
    on_path[x.0] = true;
    extend(&adj, &mut path, &mut on_path, &mut |cycle: &[usize]| {
        // Each cycle is met twice (once per direction); keep one.
        if cycle.len() >= min_len && cycle.contains(&y.0) && cycle[1] < cycle[cycle.len() - 1] {
            found.push(cycle.iter().map(|&i| Gen(i)).collect());
        }
    });

    let mut out: Vec<Vec<Gen>> = found.into_iter().map(|c| canonical_rotation(m, &c)).collect();
    out.sort_by(|a, b| labels_of(m, a).cmp(&labels_of(m, b)));
    Ok(out)
}

fn extend(adj: &[Vec<bool>], path: &mut Vec<usize>, on_path: &mut [bool], emit: &mut impl FnMut(&[usize])) {
    let last = *path.last().unwrap();
    let start = path[0];
    for v in 0..adj.len() {
        if on_path[v] || !adj[last][v] {
            continue;
        }
        // v may touch only `last` among the interior of the path.
        let interior = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
        if interior.iter().any(|&p| adj[p][v]) {
            continue;
        }
        if path.len() >= 2 && adj[start][v] {
            path.push(v);
            emit(path);
            path.pop();
            continue;
        }
        path.push(v);
        on_path[v] = true;
        extend(adj, path, on_path, emit);
        on_path[v] = false;
        path.pop();
    }
}

fn labels_of<'a>(m: &'a CoxeterMatrix, c: &[Gen]) -> Vec<&'a str> {
    c.iter().map(|&g| m.label(g)).collect()
}

fn canonical_rotation(m: &CoxeterMatrix, cycle: &[Gen]) -> Vec<Gen> {
    let len = cycle.len();
    let mut best: Option<Vec<Gen>> = None;
    for start in 0..len {
        for dir in [false, true] {
            let cand: Vec<Gen> = (0..len)
                .map(|k| {
                    let i = if dir { (start + len - k) % len } else { (start + k) % len };
                    cycle[i]
                })
                .collect();
            let better = match &best {
                None => true,
                Some(b) => labels_of(m, &cand) < labels_of(m, b),
            };
            if better {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Checks the chord-free cycle property directly from the definition.
pub fn is_chord_free_cycle(m: &CoxeterMatrix, cycle: &[Gen]) -> bool {
    let n = cycle.len();
    if n < 3 {
        return false;
    }
    let distinct: std::collections::BTreeSet<_> = cycle.iter().collect();
    if distinct.len() != n {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let finite = m.m(cycle[i], cycle[j]).is_finite();
            if adjacent != finite {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_square() {
        let m = CoxeterMatrix::from_edges(
            &["x", "u", "y", "v"],
            &[("x", "u", 3), ("u", "y", 3), ("y", "v", 3), ("v", "x", 3)],
        )
        .unwrap();
        let x = m.gen("x").unwrap();
        let y = m.gen("y").unwrap();
        let cycles = chord_free_cycles_through(&m, x, y, 4).unwrap();
        assert_eq!(cycles.len(), 1);
        let labels: Vec<&str> = cycles[0].iter().map(|&g| m.label(g)).collect();
        assert_eq!(labels, vec!["u", "x", "v", "y"]);
        assert!(is_chord_free_cycle(&m, &cycles[0]));
    }

    #[test]
    fn complete_graph_has_no_long_induced_cycles() {
        let labels = ["a", "b", "c", "d", "e"];
        let mut b = CoxeterMatrix::builder().generators(labels);
        for i in 0..5 {
            for j in (i + 1)..5 {
                b = b.finite(labels[i], labels[j], 2);
            }
        }
        let m = b.build().unwrap();
        let a = m.gen("a").unwrap();
        let c = m.gen("c").unwrap();
        assert!(chord_free_cycles_through(&m, a, c, 4).unwrap().is_empty());
        // Triangles are chord-free: a, c plus one of three others.
        assert_eq!(chord_free_cycles_through(&m, a, c, 3).unwrap().len(), 3);
    }

    #[test]
    fn path_is_acyclic() {
        let m = CoxeterMatrix::from_edges(&["a", "b", "c", "d"], &[("a", "b", 3), ("b", "c", 4), ("c", "d", 2)]).unwrap();
        let a = m.gen("a").unwrap();
        let d = m.gen("d").unwrap();
        assert!(chord_free_cycles_through(&m, a, d, 3).unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let labels: Vec<String> = (0..5).map(|i| format!("g{i}")).collect();
        let m = CoxeterMatrix::builder().generators(labels).build().unwrap();
        let err = chord_free_cycles_through_capped(&m, Gen(0), Gen(1), 4, 4).unwrap_err();
        assert!(matches!(err, Error::SearchCapExceeded { generators: 5, cap: 4 }));
    }
}
