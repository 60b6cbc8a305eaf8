//! Shared inputs for the benchmarks.

use dyck_core::{enumerate_words, is_two_sided_member, PairedAlphabet, Word};

/// Every word of `length` over two pairs.
pub fn all_words(length: usize) -> Vec<Word> {
    enumerate_words(&PairedAlphabet::two_pairs(), length, u128::MAX)
        .expect("uncapped")
        .collect()
}

/// Two-sided members of `length` over two pairs.
pub fn members(length: usize) -> Vec<Word> {
    all_words(length)
        .into_iter()
        .filter(|w| is_two_sided_member(w))
        .collect()
}

/// Non-members of `length` over two pairs.
pub fn non_members(length: usize) -> Vec<Word> {
    all_words(length)
        .into_iter()
        .filter(|w| !is_two_sided_member(w))
        .collect()
}
