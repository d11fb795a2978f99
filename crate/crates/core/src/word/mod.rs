//! Words, normal forms and the word problem.
//!
//! [`WordEngine::reduce`] computes the shortlex-least reduced word by reading
//! left descents off the exact geometric representation: `s` is a left
//! descent of `w` iff `w⁻¹(e_s)` is a negative root. Root coordinates are kept
//! exactly in a cyclotomic ring; only the sign of one coordinate per root is
//! read through floating point, and only when the error bound certifies it.
//! When a sign cannot be certified or a coefficient overflows, the engine
//! falls back to braid-class exploration ([`braid::tits_reduce`]).

pub mod braid;
mod cyclotomic;
pub mod geometric;
pub mod verify;

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;


use crate::classify::{is_spherical, recognize};
use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Gen, Subset};

use cyclotomic::{Coef, Elem, RootField};

pub use braid::{tits_reduce, DEFAULT_VISIT_CAP};
pub use geometric::{geometric_check, GEOMETRIC_TOLERANCE};
pub use verify::{certify, check_isomorphism, verify_isomorphism, Substitution, CERTIFICATION_CAP};

pub const DEFAULT_WORD_CAP: usize = 64;
pub const DEFAULT_ENUMERATION_CAP: usize = 50_000;

/// A word over the generators of one matrix; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    /// Inverse of a product of involutions: the reversed word.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn product<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        Word(parts.into_iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    /// Whitespace-separated labels; the empty string is the identity.
    pub fn parse(m: &CoxeterMatrix, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|l| m.gen(l))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn display<'a>(&'a self, m: &'a CoxeterMatrix) -> WordDisplay<'a> {
        WordDisplay { word: self, m }
    }

    pub fn to_labels(&self, m: &CoxeterMatrix) -> String {
        self.display(m).to_string()
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    m: &'a CoxeterMatrix,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &g) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.m.label(g))?;
        }
        Ok(())
    }
}

/// Shortlex-least reduced representative of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub word: Word,
    pub length: usize,
}

/// Word-problem solver bound to one matrix.
#[derive(Clone, Debug)]
pub struct WordEngine<'m> {
    m: &'m CoxeterMatrix,
    field: RootField,
    /// Row-major rank×rank coefficients c_st = 2cos(π/m(s,t)), diagonal unused.
    coefs: Vec<Coef>,
    cap: usize,
    visit_cap: usize,
}

/// σ(w⁻¹) as an n×n matrix of ring elements; column s is w⁻¹(e_s).
struct RootMatrix {
    n: usize,
    d: usize,
    data: Vec<i128>,
}

impl RootMatrix {
    fn identity(n: usize, d: usize) -> Self {
        let mut data = vec![0i128; n * n * d];
        for i in 0..n {
            data[(i * n + i) * d] = 1;
        }
        RootMatrix { n, d, data }
    }

    fn entry(&self, row: usize, col: usize) -> &[i128] {
        let at = (row * self.n + col) * self.d;
        &self.data[at..at + self.d]
    }

    fn is_identity(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.entry(i, j)
                    .iter()
                    .enumerate()
                    .all(|(k, &c)| c == if i == j && k == 0 { 1 } else { 0 })
            })
        })
    }
}

enum Sign {
    Positive,
    Negative,
    Uncertain,
}

impl<'m> WordEngine<'m> {
    pub fn new(m: &'m CoxeterMatrix) -> Self {
        let (field, table) = RootField::for_matrix(m);
        let n = m.rank();
        let mut coefs = Vec::with_capacity(n * n);
        for s in m.generators() {
            for t in m.generators() {
                coefs.push(if s == t {
                    Coef::Zero
                } else {
                    RootField::coef_for(&table, m.m(s, t))
                });
            }
        }
        WordEngine {
            m,
            field,
            coefs,
            cap: DEFAULT_WORD_CAP,
            visit_cap: DEFAULT_VISIT_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_visit_cap(mut self, visit_cap: usize) -> Self {
        self.visit_cap = visit_cap;
        self
    }

    pub fn matrix(&self) -> &'m CoxeterMatrix {
        self.m
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_len(&self, w: &Word) -> Result<()> {
        if w.len() > self.cap {
            Err(Error::WordTooLong {
                len: w.len(),
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// `p ← p · σ_s`. `None` on overflow.
    fn right_multiply(&self, p: &mut RootMatrix, s: Gen) -> Option<()> {
        let (n, d) = (p.n, p.d);
        let s = s.0;
        let mut col_s: Vec<Elem> = (0..n).map(|i| p.entry(i, s).to_vec()).collect();
        for j in 0..n {
            let c = &self.coefs[s * n + j];
            if j == s || matches!(c, Coef::Zero) {
                continue;
            }
            for (i, src) in col_s.iter().enumerate() {
                let at = (i * n + j) * d;
                self.field.mul_add(c, src, &mut p.data[at..at + d])?;
            }
        }
        for (i, src) in col_s.iter_mut().enumerate() {
            let at = (i * n + s) * d;
            for (dst, v) in p.data[at..at + d].iter_mut().zip(src.iter_mut()) {
                *dst = v.checked_neg()?;
            }
        }
        Some(())
    }

    fn root_matrix_of_inverse(&self, w: &Word) -> Option<RootMatrix> {
        let mut p = RootMatrix::identity(self.m.rank(), self.field.degree());
        for &s in w.0.iter().rev() {
            self.right_multiply(&mut p, s)?;
        }
        Some(p)
    }

    fn column_sign(&self, p: &RootMatrix, s: usize) -> Sign {
        let mut best = (0.0f64, 0.0f64);
        for row in 0..p.n {
            let (v, err) = self.field.approx(p.entry(row, s));
            if v.abs() > best.0.abs() {
                best = (v, err);
            }
        }
        if best.0.abs() <= best.1 {
            Sign::Uncertain
        } else if best.0 > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// Exact root-based normal form; `None` when the fast path cannot decide.
    fn reduce_by_roots(&self, w: &Word) -> Option<Vec<Gen>> {
        let mut p = self.root_matrix_of_inverse(w)?;
        let mut out = Vec::new();
        'emit: loop {
            for s in 0..p.n {
                match self.column_sign(&p, s) {
                    Sign::Positive => continue,
                    Sign::Uncertain => return None,
                    Sign::Negative => {
                        out.push(Gen(s));
                        if out.len() > w.len() {
                            return None;
                        }
                        self.right_multiply(&mut p, Gen(s))?;
                        continue 'emit;
                    }
                }
            }
            break;
        }
        Some(out)
    }

    pub fn reduce(&self, w: &Word) -> Result<CanonicalForm> {
        self.check_len(w)?;
        self.reduce_uncapped(w)
    }

    /// Internal callers build words whose length is bounded by the group, not
    /// by the user-facing cap.
    fn reduce_uncapped(&self, w: &Word) -> Result<CanonicalForm> {
        let letters = match self.reduce_by_roots(w) {
            Some(v) => v,
            None => tits_reduce(self.m, &w.0, self.visit_cap)?,
        };
        Ok(CanonicalForm {
            length: letters.len(),
            word: Word(letters),
        })
    }

    pub fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.reduce(w)?.length)
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        self.check_len(w)?;
        match self.root_matrix_of_inverse(w) {
            Some(p) => Ok(p.is_identity()),
            None => Ok(tits_reduce(self.m, &w.0, self.visit_cap)?.is_empty()),
        }
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.reduce(u)?.word == self.reduce(v)?.word)
    }

    /// Longest element of the parabolic subgroup on `a`, by greedy ascent.
    pub fn longest_element(&self, a: &Subset) -> Result<Word> {
        if !is_spherical(self.m, a) {
            return Err(Error::NotSpherical);
        }
        let mut w = Word::identity();
        'grow: loop {
            for &s in a {
                let next = w.concat(&Word::letter(s));
                let reduced = self.reduce_uncapped(&next)?;
                if reduced.length > w.len() {
                    w = reduced.word;
                    continue 'grow;
                }
            }
            break;
        }
        let expected: usize = self
            .m
            .components(a)
            .iter()
            .map(|c| recognize(self.m, c).map_or(0, |(t, _)| t.positive_roots()))
            .sum();
        if w.len() != expected {
            return Err(Error::InternalInconsistency(format!(
                "longest element has length {} but the type predicts {expected}",
                w.len()
            )));
        }
        Ok(w)
    }

    /// All elements of the parabolic subgroup on `a`, as canonical forms.
    pub fn enumerate_elements(&self, a: &Subset, cap: usize) -> Result<BTreeSet<CanonicalForm>> {
        if !is_spherical(self.m, a) {
            return Err(Error::NotSpherical);
        }
        let start = CanonicalForm {
            word: Word::identity(),
            length: 0,
        };
        let mut seen: HashSet<Word> = HashSet::from([Word::identity()]);
        let mut out = BTreeSet::from([start]);
        let mut queue = VecDeque::from([Word::identity()]);
        while let Some(w) = queue.pop_front() {
            for &s in a {
                let next = self.reduce_uncapped(&w.concat(&Word::letter(s)))?;
                if seen.insert(next.word.clone()) {
                    if seen.len() > cap {
                        return Err(Error::EnumerationCap(cap));
                    }
                    queue.push_back(next.word.clone());
                    out.insert(next);
                }
            }
        }
        Ok(out)
    }

    /// If `x · s · x⁻¹` is a generator in `a` for every `s` in `a`, the induced
    /// permutation of `a`.
    pub fn conjugation_permutation(&self, x: &Word, a: &Subset) -> Result<Option<BTreeMap<Gen, Gen>>> {
        let mut perm = BTreeMap::new();
        for &s in a {
            let conj = Word::product([x, &Word::letter(s), &x.inverse()]);
            let r = self.reduce_uncapped(&conj)?;
            match r.word.0.as_slice() {
                [t] if a.contains(t) => {
                    perm.insert(s, *t);
                }
                _ => return Ok(None),
            }
        }
        Ok(Some(perm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::SphericalType;

    fn w(m: &CoxeterMatrix, s: &str) -> Word {
        Word::parse(m, s).unwrap()
    }

    #[test]
    fn involution_cancels() {
        let m = CoxeterMatrix::from_edges(&["x", "y"], &[("x", "y", 3)]).unwrap();
        let e = WordEngine::new(&m);
        assert_eq!(e.reduce(&w(&m, "x x")).unwrap().length, 0);
        assert_eq!(e.reduce(&w(&m, "x y x y")).unwrap().word, w(&m, "y x"));
        assert!(e.equal(&w(&m, "x y x"), &w(&m, "y x y")).unwrap());
    }

    #[test]
    fn dihedral_relators_vanish() {
        for k in [4u32, 5, 6, 7, 10] {
            let m = CoxeterMatrix::from_edges(&["x", "y"], &[("x", "y", k)]).unwrap();
            let e = WordEngine::new(&m);
            let rel = w(&m, "x y").pow(k as usize);
            assert!(e.is_identity(&rel).unwrap(), "k={k}");
            assert_eq!(e.reduce(&rel).unwrap().length, 0);
            assert!(!e.is_identity(&w(&m, "x y").pow(k as usize - 1)).unwrap());
        }
    }

    #[test]
    fn infinite_pair_is_free() {
        let m = CoxeterMatrix::from_edges(&["x", "y"], &[]).unwrap();
        let e = WordEngine::new(&m);
        assert!(!e.equal(&w(&m, "x"), &w(&m, "y")).unwrap());
        assert_eq!(e.reduce(&w(&m, "x y x y x y")).unwrap().length, 6);
    }

    #[test]
    fn cap_is_enforced() {
        let m = CoxeterMatrix::from_edges(&["x"], &[]).unwrap();
        let e = WordEngine::new(&m).with_cap(4);
        assert!(matches!(e.reduce(&w(&m, "x x x x x")), Err(Error::WordTooLong { len: 5, cap: 4 })));
    }

    #[test]
    fn longest_elements() {
        let a1 = SphericalType::a(1).matrix("x");
        assert_eq!(WordEngine::new(&a1).longest_element(&a1.all()).unwrap(), w(&a1, "x1"));
        let a2 = SphericalType::a(2).matrix("x");
        assert_eq!(WordEngine::new(&a2).longest_element(&a2.all()).unwrap().len(), 3);
        let c3 = SphericalType::c(3).matrix("c");
        let e = WordEngine::new(&c3);
        let l = e.longest_element(&c3.all()).unwrap();
        assert_eq!(l.len(), 9);
        assert!(e.is_identity(&l.pow(2)).unwrap());

        let inf = CoxeterMatrix::from_edges(&["x", "y"], &[]).unwrap();
        assert!(matches!(WordEngine::new(&inf).longest_element(&inf.all()), Err(Error::NotSpherical)));
    }

    #[test]
    fn enumeration_sizes() {
        for (t, n) in [(SphericalType::d2(3), 6), (SphericalType::d2(6), 12), (SphericalType::c(3), 48), (SphericalType::b(3), 24)] {
            let m = t.matrix("s");
            let e = WordEngine::new(&m);
            assert_eq!(e.enumerate_elements(&m.all(), DEFAULT_ENUMERATION_CAP).unwrap().len(), n, "{t}");
        }
        let c3 = SphericalType::c(3).matrix("s");
        assert!(matches!(WordEngine::new(&c3).enumerate_elements(&c3.all(), 10), Err(Error::EnumerationCap(10))));
    }

    #[test]
    fn b_generators_inside_c3() {
        // b_{n-1} b_n = (c_{n-1} c_n)^2 with b_n = c_n c_{n-1} c_n and b_{n-1} = c_{n-1}.
        let m = SphericalType::c(3).matrix("c");
        let e = WordEngine::new(&m);
        let lhs = w(&m, "c2 c3 c2 c3");
        let rhs = w(&m, "c2 c3").pow(2);
        assert!(e.equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn longest_element_permutes_generators() {
        let m = SphericalType::a(3).matrix("a");
        let e = WordEngine::new(&m);
        let l = e.longest_element(&m.all()).unwrap();
        let perm = e.conjugation_permutation(&l, &m.all()).unwrap().unwrap();
        assert_eq!(perm[&m.gen("a1").unwrap()], m.gen("a3").unwrap());
        assert_eq!(perm[&m.gen("a2").unwrap()], m.gen("a2").unwrap());
    }
}
