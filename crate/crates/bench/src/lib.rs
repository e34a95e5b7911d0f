//! Shared workloads for the criterion benches in `benches/`.

use gueo_core::strata::{self, StratumClass};
use gueo_core::WeylElement;

/// `(w_{k,l}, w'_{k,l})` for every label of class `NotDl`.
pub fn reduction_pairs(n: usize) -> Vec<(WeylElement, WeylElement)> {
    strata::labels(n)
        .into_iter()
        .filter(|s| strata::classify(n, s.k, s.l).ok() == Some(StratumClass::NotDl))
        .map(|s| {
            let t = strata::w_prime(n, s.k, s.l).expect("NotDl label");
            (
                strata::w_kl(n, s.k, s.l).expect("valid label"),
                strata::w_kl(n, t.k, t.l).expect("valid label"),
            )
        })
        .collect()
}
