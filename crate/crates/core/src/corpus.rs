//! Seeded random diagrams for property tests, acceptance runs and benches.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::SphericalType;
use crate::matrix::{CoxeterMatrix, Order};

/// {2,3,4,5,6,∞}.
pub const CORPUS_LABELS: [Order; 6] = [
    Order::Finite(2),
    Order::Finite(3),
    Order::Finite(4),
    Order::Finite(5),
    Order::Finite(6),
    Order::Infinity,
];

fn build(labels: &[String], mut entry: impl FnMut(usize, usize) -> Order) -> CoxeterMatrix {
    let mut b = CoxeterMatrix::builder().generators(labels.iter().cloned());
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            b = b.edge(labels[i].clone(), labels[j].clone(), entry(i, j));
        }
    }
    b.build().expect("generated labels are valid")
}

/// Uniform labels from `palette` on `n` generators `s1..sn`.
pub fn random_diagram(rng: &mut impl Rng, n: usize, palette: &[Order]) -> CoxeterMatrix {
    let labels: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    build(&labels, |_, _| *palette.choose(rng).unwrap())
}

const PIECES: [(SphericalType, usize); 8] = [
    (SphericalType { family: crate::classify::Family::A, param: 1 }, 1),
    (SphericalType { family: crate::classify::Family::A, param: 1 }, 1),
    (SphericalType { family: crate::classify::Family::D2, param: 3 }, 2),
    (SphericalType { family: crate::classify::Family::D2, param: 5 }, 2),
    (SphericalType { family: crate::classify::Family::D2, param: 6 }, 2),
    (SphericalType { family: crate::classify::Family::D2, param: 4 }, 2),
    (SphericalType { family: crate::classify::Family::A, param: 3 }, 3),
    (SphericalType { family: crate::classify::Family::C, param: 3 }, 3),
];

/// Product of small spherical pieces, with each cross pair turned to ∞
/// (or, rarely, another label) with probability `noise`.
pub fn structured_diagram(rng: &mut impl Rng, max_gens: usize, noise: f64) -> CoxeterMatrix {
    let mut parts = Vec::new();
    let mut used = 0;
    let target = rng.gen_range(2..=max_gens.max(2));
    while used < target {
        let fitting: Vec<_> = PIECES.iter().filter(|(_, r)| used + r <= max_gens).collect();
        let Some(&&(t, r)) = fitting.choose(rng) else { break };
        let prefix = ((b'a' + parts.len() as u8) as char).to_string();
        parts.push(t.matrix(&prefix));
        used += r;
    }
    let refs: Vec<&CoxeterMatrix> = parts.iter().collect();
    let product = CoxeterMatrix::direct_product(&refs).expect("distinct prefixes");
    let labels: Vec<String> = product.labels().map(str::to_string).collect();
    let piece = |l: &str| l.as_bytes()[0];
    build(&labels, |i, j| {
        let m = product.m(crate::matrix::Gen(i), crate::matrix::Gen(j));
        if piece(&labels[i]) == piece(&labels[j]) || !rng.gen_bool(noise) {
            m
        } else if rng.gen_bool(0.8) {
            Order::Infinity
        } else {
            *CORPUS_LABELS[1..5].choose(rng).unwrap()
        }
    })
}

/// An odd dihedral or A3 base on the first generators, a few generators
/// commuting with it, and a random remainder that mostly avoids the base.
pub fn planted_diagram(rng: &mut impl Rng, max_gens: usize) -> CoxeterMatrix {
    let base = if rng.gen_bool(0.7) { 2 } else { 3 };
    let n = rng.gen_range(base + 1..=max_gens.max(base + 1));
    let perp = rng.gen_range(0..=(n - base).min(2));
    let labels: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let odd = *[3u32, 5].choose(rng).unwrap();
    build(&labels, |i, j| {
        let in_base = |k: usize| k < base;
        let in_perp = |k: usize| (base..base + perp).contains(&k);
        match (in_base(i), in_base(j)) {
            (true, true) if base == 2 => Order::Finite(odd),
            (true, true) => Order::Finite(if j == i + 1 { 3 } else { 2 }),
            (true, false) if in_perp(j) => Order::Finite(2),
            (true, false) => {
                if rng.gen_bool(0.7) {
                    Order::Infinity
                } else {
                    *CORPUS_LABELS[..5].choose(rng).unwrap()
                }
            }
            _ => *CORPUS_LABELS.choose(rng).unwrap(),
        }
    })
}

/// A base {x, y} (odd dihedral) or x-m-y (A3) with a sink, a few commuting
/// generators, and pendants that each hang off exactly one split end.
pub fn sink_diagram(rng: &mut impl Rng, max_gens: usize) -> CoxeterMatrix {
    let base = if rng.gen_bool(0.7) { 2 } else { 3 };
    let n = rng.gen_range(base + 1..=max_gens.max(base + 1));
    let extra = n - base - 1;
    let perp = rng.gen_range(0..=extra.min(1));
    let labels: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let odd = *[3u32, 5].choose(rng).unwrap();
    let (x, y) = (0, base - 1);
    let r = base;
    let in_perp = |k: usize| (base + 1..base + 1 + perp).contains(&k);
    let side: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
    let finite = |rng: &mut dyn rand::RngCore| *CORPUS_LABELS[..5].choose(rng).unwrap();
    build(&labels, |i, j| {
        let in_base = |k: usize| k < base;
        match (i, j) {
            _ if in_base(i) && in_base(j) => match base {
                2 => Order::Finite(odd),
                _ => Order::Finite(if j == i + 1 { 3 } else { 2 }),
            },
            _ if in_base(i) && (j == r || in_perp(j)) => Order::Finite(2),
            (_, _) if i == r => {
                if in_perp(j) {
                    Order::Finite(2)
                } else {
                    Order::Infinity
                }
            }
            _ if in_base(i) => {
                let end = if side[j] == 0 { x } else { y };
                if i == end {
                    finite(rng)
                } else {
                    Order::Infinity
                }
            }
            _ if !in_perp(i) && side[i] != side[j] => Order::Infinity,
            _ => {
                if rng.gen_bool(0.5) {
                    Order::Infinity
                } else {
                    finite(rng)
                }
            }
        }
    })
}

/// `count` diagrams with at most `max_gens` generators, cycling through the
/// structured, planted, sink and uniform generators.
pub fn corpus(seed: u64, count: usize, max_gens: usize) -> Vec<CoxeterMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| match i % 5 {
            0 | 1 => structured_diagram(&mut rng, max_gens, 0.15),
            2 => planted_diagram(&mut rng, max_gens),
            3 => sink_diagram(&mut rng, max_gens),
            _ => {
                let n = rng.gen_range(2..=max_gens);
                random_diagram(&mut rng, n, &CORPUS_LABELS)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eligibility::reports;

    #[test]
    fn deterministic_and_bounded() {
        let a = corpus(7, 40, 6);
        assert_eq!(a, corpus(7, 40, 6));
        for m in &a {
            assert!((1..=6).contains(&m.rank()));
            for (_, _, o) in m.pairs() {
                assert!(CORPUS_LABELS.contains(&o));
            }
        }
    }

    #[test]
    fn corpus_is_not_trivial() {
        let c = corpus(1, 80, 6);
        let eligible = c.iter().filter(|m| reports(m).iter().any(|r| r.blow_down_eligible)).count();
        let up = c.iter().filter(|m| reports(m).iter().any(|r| r.blow_up_eligible)).count();
        assert!(eligible >= 10 && up >= 10, "{eligible} {up}");
    }
}
