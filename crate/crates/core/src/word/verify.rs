//! Isomorphism certificates between two Coxeter presentations.

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Gen};

use super::{Word, WordEngine};

/// Word cap used while certifying; relator images are much longer than
/// interactive words.
pub const CERTIFICATION_CAP: usize = 1024;

/// Generator substitution: `images[g]` is the word for generator `g` of the
/// domain, written over the generators of the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub images: Vec<Word>,
}

impl Substitution {
    pub fn identity(m: &CoxeterMatrix) -> Self {
        Substitution {
            images: m.generators().map(Word::letter).collect(),
        }
    }

    pub fn image(&self, g: Gen) -> &Word {
        &self.images[g.0]
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word::product(w.0.iter().map(|&g| &self.images[g.0]))
    }

    /// `self` then `next`: a word over the domain of `self` is rewritten
    /// through `self`, then through `next`.
    pub fn then(&self, next: &Substitution) -> Substitution {
        Substitution {
            images: self.images.iter().map(|w| next.apply(w)).collect(),
        }
    }

    fn is_total(&self, domain: &CoxeterMatrix, codomain: &CoxeterMatrix) -> bool {
        self.images.len() == domain.rank()
            && self.images.iter().all(|w| w.0.iter().all(|g| g.0 < codomain.rank()))
    }
}

/// Checks that `map` (over the generators of `src`, with images in `dst`)
/// sends every defining relator of `src` to the identity of `dst`.
fn relators_hold(src: &CoxeterMatrix, dst: &WordEngine, map: &Substitution, tag: &str) -> Result<Option<String>> {
    for s in src.generators() {
        let img = map.image(s);
        if !dst.is_identity(&img.pow(2))? {
            return Ok(Some(format!("{tag}: relator {0} {0} fails", src.label(s))));
        }
    }
    for (s, t, m) in src.pairs() {
        let Some(k) = m.finite() else { continue };
        let rel = map.image(s).concat(map.image(t)).pow(k as usize);
        if !dst.is_identity(&rel)? {
            return Ok(Some(format!(
                "{tag}: relator ({} {})^{k} fails",
                src.label(s),
                src.label(t)
            )));
        }
    }
    Ok(None)
}

fn round_trip(m: &CoxeterMatrix, engine: &WordEngine, there: &Substitution, back: &Substitution, tag: &str) -> Result<Option<String>> {
    for s in m.generators() {
        let w = back.apply(there.image(s));
        if !engine.equal(&w, &Word::letter(s))? {
            return Ok(Some(format!("{tag}: {} does not return to itself", m.label(s))));
        }
    }
    Ok(None)
}

/// `fwd` maps output generators to words over the input; `bwd` maps input
/// generators to words over the output. Returns the first failing clause, or
/// `None` when the certificate holds.
pub fn check_isomorphism(
    input: &CoxeterMatrix,
    output: &CoxeterMatrix,
    fwd: &Substitution,
    bwd: &Substitution,
) -> Result<Option<String>> {
    if !fwd.is_total(output, input) {
        return Ok(Some("forward map is not total on the output generators".into()));
    }
    if !bwd.is_total(input, output) {
        return Ok(Some("backward map is not total on the input generators".into()));
    }
    let ein = WordEngine::new(input).with_cap(CERTIFICATION_CAP);
    let eout = WordEngine::new(output).with_cap(CERTIFICATION_CAP);
    let checks = [
        relators_hold(output, &ein, fwd, "forward")?,
        relators_hold(input, &eout, bwd, "backward")?,
        // s ↦ bwd(s) ↦ fwd(bwd(s)) in the input.
        round_trip(input, &ein, bwd, fwd, "input round trip")?,
        round_trip(output, &eout, fwd, bwd, "output round trip")?,
    ];
    Ok(checks.into_iter().flatten().next())
}

pub fn verify_isomorphism(
    input: &CoxeterMatrix,
    output: &CoxeterMatrix,
    fwd: &Substitution,
    bwd: &Substitution,
) -> Result<bool> {
    Ok(check_isomorphism(input, output, fwd, bwd)?.is_none())
}

/// As [`verify_isomorphism`], with a failed certificate turned into
/// [`Error::CertificationFailed`].
pub fn certify(input: &CoxeterMatrix, output: &CoxeterMatrix, fwd: &Substitution, bwd: &Substitution) -> Result<()> {
    match check_isomorphism(input, output, fwd, bwd)? {
        None => Ok(()),
        Some(reason) => Err(Error::CertificationFailed(reason)),
    }
}
