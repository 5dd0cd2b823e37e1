#![allow(dead_code)]

use anomaly_scheme::codebook::{admissible_pairs, AlphabetSize, Codebook};
use proptest::prelude::*;

/// Valid codebooks: a random nonempty subset of admissible pairs, shuffled,
/// each kept or inverted at random. `s` in {3, 5}, `k` in `2..=max_k`.
pub fn valid_codebook(max_k: usize) -> impl Strategy<Value = Codebook> {
    (prop_oneof![Just(3u32), Just(5u32)], 2..=max_k)
        .prop_flat_map(|(s, k)| {
            let s = AlphabetSize::new(s).unwrap();
            let pool = admissible_pairs(s, k).unwrap();
            let m = pool.len();
            (
                Just(s),
                Just(k),
                proptest::sample::subsequence(pool, 1..=m).prop_shuffle(),
                proptest::collection::vec(any::<bool>(), m),
            )
        })
        .prop_map(|(s, k, codes, flips)| {
            let codes = codes
                .into_iter()
                .zip(flips)
                .map(|(c, flip)| if flip { c.invert() } else { c })
                .collect();
            Codebook::new(s, k, codes, false).unwrap()
        })
}

/// Same as [`valid_codebook`] but three-state only.
pub fn valid_three_state_codebook(max_k: usize) -> impl Strategy<Value = Codebook> {
    valid_codebook(max_k).prop_filter("three-state", |cb| cb.states() == AlphabetSize::THREE)
}
