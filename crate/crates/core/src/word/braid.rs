//! Tits' solution of the word problem: explore the braid class of a word,
//! cancel any adjacent equal pair that appears, repeat. Exponential in the
//! worst case; used as a fallback and as a test oracle.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Gen};

pub const DEFAULT_VISIT_CAP: usize = 200_000;

/// Words obtained from `w` by a single braid move.
fn braid_neighbors(m: &CoxeterMatrix, w: &[Gen]) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        let (s, t) = (w[i], w[i + 1]);
        if s == t {
            continue;
        }
        let Some(k) = m.m(s, t).finite() else {
            continue;
        };
        let k = k as usize;
        if i + k > w.len() {
            continue;
        }
        let alternating = (0..k).all(|j| w[i + j] == if j % 2 == 0 { s } else { t });
        if alternating {
            let mut v = w.to_vec();
            for j in 0..k {
                v[i + j] = if j % 2 == 0 { t } else { s };
            }
            out.push(v);
        }
    }
    out
}

fn cancel_pair(w: &[Gen]) -> Option<Vec<Gen>> {
    let i = w.windows(2).position(|p| p[0] == p[1])?;
    let mut v = w[..i].to_vec();
    v.extend_from_slice(&w[i + 2..]);
    Some(v)
}

/// The shortlex-least reduced word equal to `w`.
pub fn tits_reduce(m: &CoxeterMatrix, w: &[Gen], visit_cap: usize) -> Result<Vec<Gen>> {
    let mut current = w.to_vec();
    let mut visited_total = 0usize;
    'outer: loop {
        if let Some(v) = cancel_pair(&current) {
            current = v;
            continue;
        }
        let mut seen: HashSet<Vec<Gen>> = HashSet::from([current.clone()]);
        let mut queue = VecDeque::from([current.clone()]);
        let mut best = current.clone();
        while let Some(u) = queue.pop_front() {
            visited_total += 1;
            if visited_total > visit_cap {
                return Err(Error::BraidSearchExhausted(visit_cap));
            }
            for v in braid_neighbors(m, &u) {
                if seen.contains(&v) {
                    continue;
                }
                if let Some(shorter) = cancel_pair(&v) {
                    current = shorter;
                    continue 'outer;
                }
                if v < best {
                    best = v.clone();
                }
                seen.insert(v.clone());
                queue.push_back(v);
            }
        }
        return Ok(best);
    }
}
