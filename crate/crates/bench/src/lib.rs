//! Shared inputs for the benchmarks.

use psi_pascal::AdmissibleSequence;

/// The four built-in sequences with their selector names.
pub fn sequences() -> Vec<(&'static str, AdmissibleSequence)> {
    ["classical", "q", "q=2", "fibonomial"]
        .into_iter()
        .map(|s| (s, AdmissibleSequence::from_selector(s).expect("built-in selector")))
        .collect()
}
