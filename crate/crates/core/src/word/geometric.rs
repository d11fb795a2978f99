//! Floating-point geometric representation, kept independent of the exact
//! engine so the two can be compared.

use crate::matrix::{CoxeterMatrix, Gen, Order};

pub const GEOMETRIC_TOLERANCE: f64 = 1e-9;
pub const GEOMETRIC_MAX_LEN: usize = 128;

fn form(m: Order) -> f64 {
    match m {
        Order::Finite(1) => 1.0,
        Order::Finite(v) => -(std::f64::consts::PI / v as f64).cos(),
        Order::Infinity => -1.0,
    }
}

/// Row-major n×n matrix of the word acting on the root space.
pub fn representation(m: &CoxeterMatrix, w: &[Gen]) -> Vec<f64> {
    let n = m.rank();
    let mut acc = vec![0.0; n * n];
    for i in 0..n {
        acc[i * n + i] = 1.0;
    }
    for &s in w {
        // acc ← acc · σ_s, σ_s(e_j) = e_j − 2B(e_s, e_j) e_s.
        let coeffs: Vec<f64> = (0..n).map(|j| -2.0 * form(m.m(s, Gen(j)))).collect();
        for row in 0..n {
            let ps = acc[row * n + s.0];
            for (j, &c) in coeffs.iter().enumerate() {
                if j != s.0 {
                    acc[row * n + j] += c * ps;
                }
            }
            acc[row * n + s.0] = -ps;
        }
    }
    acc
}

/// Entrywise comparison of the two representing matrices with relative
/// tolerance [`GEOMETRIC_TOLERANCE`] (absolute below magnitude 1).
pub fn geometric_check(m: &CoxeterMatrix, u: &[Gen], v: &[Gen]) -> bool {
    assert!(
        u.len() <= GEOMETRIC_MAX_LEN && v.len() <= GEOMETRIC_MAX_LEN,
        "geometric check is limited to words of length {GEOMETRIC_MAX_LEN}"
    );
    let a = representation(m, u);
    let b = representation(m, v);
    a.iter()
        .zip(&b)
        .all(|(&x, &y)| (x - y).abs() <= GEOMETRIC_TOLERANCE * 1f64.max(x.abs()).max(y.abs()))
}
