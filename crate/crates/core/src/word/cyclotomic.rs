//! Exact arithmetic in Z[ζ_N] for the coordinates of roots in the geometric
//! representation. Every off-diagonal coefficient 2cos(π/m) lives in this ring
//! once N is a multiple of 2m; labels 2, 3 and infinity give the integers 0,
//! 1 and 2 and need no extension.

use std::collections::BTreeMap;

use crate::matrix::{CoxeterMatrix, Order};

/// An element of Z[x]/Φ_N, coefficients low degree first.
pub(crate) type Elem = Vec<i128>;

#[derive(Clone, Debug)]
pub(crate) enum Coef {
    Zero,
    Int(i128),
    /// Index into [`RootField::tables`].
    Alg(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct RootField {
    degree: usize,
    /// cos(2πi/N) for i < degree.
    cosines: Vec<f64>,
    /// Row-major degree×degree multiplication matrices.
    tables: Vec<Vec<i128>>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Coefficients of the N-th cyclotomic polynomial, low degree first.
pub(crate) fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i128; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = exact_div(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn exact_div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i128; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

impl RootField {
    /// The smallest field holding 2cos(π/m) for every finite label m ≥ 4 of
    /// the matrix.
    pub(crate) fn for_matrix(m: &CoxeterMatrix) -> (Self, BTreeMap<u32, Coef>) {
        let labels: Vec<u32> = m.finite_labels().into_iter().filter(|&v| v >= 4).collect();
        let n = labels.iter().fold(1u64, |acc, &v| {
            let t = 2 * v as u64;
            acc / gcd(acc, t) * t
        }) as usize;
        let phi = cyclotomic_polynomial(n);
        let degree = phi.len() - 1;

        // x^j mod Φ_N for 0 ≤ j < N.
        let mut powers: Vec<Elem> = Vec::with_capacity(n);
        let mut cur = vec![0i128; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            let mut next = vec![0i128; degree + 1];
            next[1..].copy_from_slice(&cur);
            let top = next[degree];
            for i in 0..degree {
                next[i] -= top * phi[i];
            }
            next.truncate(degree);
            cur = next;
        }

        let mut tables = Vec::new();
        let mut coefs = BTreeMap::new();
        for &v in &labels {
            let k = n / (2 * v as usize);
            let mut t = vec![0i128; degree * degree];
            for col in 0..degree {
                let a = &powers[(col + k) % n];
                let b = &powers[(col + n - k) % n];
                for row in 0..degree {
                    t[row * degree + col] = a[row] + b[row];
                }
            }
            coefs.insert(v, Coef::Alg(tables.len()));
            tables.push(t);
        }
        coefs.insert(2, Coef::Zero);
        coefs.insert(3, Coef::Int(1));

        let cosines = (0..degree)
            .map(|i| (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos())
            .collect();
        (
            RootField {
                degree,
                cosines,
                tables,
            },
            coefs,
        )
    }

    pub(crate) fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn coef_for(coefs: &BTreeMap<u32, Coef>, order: Order) -> Coef {
        match order {
            Order::Infinity => Coef::Int(2),
            Order::Finite(v) => coefs.get(&v).cloned().unwrap_or(Coef::Zero),
        }
    }

    /// `acc += c * x`, or `None` on overflow.
    pub(crate) fn mul_add(&self, c: &Coef, x: &[i128], acc: &mut [i128]) -> Option<()> {
        match c {
            Coef::Zero => {}
            Coef::Int(k) => {
                for (a, &v) in acc.iter_mut().zip(x) {
                    *a = a.checked_add(k.checked_mul(v)?)?;
                }
            }
            Coef::Alg(idx) => {
                let t = &self.tables[*idx];
                let d = self.degree;
                for (col, &v) in x.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    for row in 0..d {
                        let e = t[row * d + col];
                        if e != 0 {
                            acc[row] = acc[row].checked_add(e.checked_mul(v)?)?;
                        }
                    }
                }
            }
        }
        Some(())
    }

    /// Floating value with a conservative absolute error bound.
    pub(crate) fn approx(&self, x: &[i128]) -> (f64, f64) {
        let mut value = 0.0;
        let mut mass = 0.0;
        for (&a, &c) in x.iter().zip(&self.cosines) {
            let af = a as f64;
            value += af * c;
            mass += af.abs();
        }
        let bound = mass * (self.degree as f64 + 4.0) * 4.0 * f64::EPSILON;
        (value, bound)
    }
}
