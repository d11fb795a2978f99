//! Spectra over many diagrams at once.

use crate::error::Result;
use crate::matrix::CoxeterMatrix;
use crate::par;
use crate::spectrum::{spectrum, RankSpectrum};

/// One spectrum per input, in input order. Runs on the rayon pool when the
/// `parallel` feature is enabled.
pub fn spectra(ms: &[CoxeterMatrix]) -> Vec<Result<RankSpectrum>> {
    par::map(ms, spectrum)
}

/// Same results as [`spectra`], iterating the inputs on the calling thread.
/// Per-base work inside each spectrum still follows the `parallel` feature.
pub fn spectra_sequential(ms: &[CoxeterMatrix]) -> Vec<Result<RankSpectrum>> {
    ms.iter().map(spectrum).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus;

    #[test]
    fn parallel_matches_sequential() {
        let c = corpus(3, 24, 5);
        let key = |r: &Result<RankSpectrum>| r.as_ref().map(|s| (s.k, s.l, s.min_script.len(), s.max_script.len())).ok();
        let a: Vec<_> = spectra(&c).iter().map(key).collect();
        let b: Vec<_> = spectra_sequential(&c).iter().map(key).collect();
        assert_eq!(a, b);
    }
}
