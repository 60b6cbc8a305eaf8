//! One-sided and two-sided Dyck languages over a free monoid, with
//! certificates for both directions of the closure statement: every
//! two-sided Dyck word is congruent to a one-sided one modulo any finite
//! quotient ([`approximation`]), and every other word is separated from the
//! one-sided language by some finite quotient ([`separation`]).
//!
//! ```
//! use dyck_core::{approximate, is_one_sided_member, separate, FiniteQuotient, Notation, PairedAlphabet};
//!
//! let alphabet = PairedAlphabet::two_pairs();
//! let notation = Notation::letters(alphabet);
//!
//! let q = FiniteQuotient::cyclic_three(alphabet);
//! let witness = approximate(&q, &notation.parse("Aa").unwrap()).unwrap();
//! assert_eq!(notation.format(&witness), "aaAAaaAA");
//! assert!(is_one_sided_member(&witness));
//!
//! let cert = separate(alphabet, &notation.parse("aab").unwrap()).unwrap();
//! assert_eq!(cert.quotient.degree(), 4);
//! ```

pub mod approximation;
pub mod dyck;
pub mod error;
pub mod free_group;
pub mod oracle;
pub mod quotients;
pub mod separation;
pub mod words;

pub use approximation::{
    approximate, approximate_with, build_gadgets, verify_approximation, ApproximationReport,
    GadgetSet, PairGadget, WitnessReport,
};
pub use dyck::{
    for_each_one_sided_word, is_one_sided, is_one_sided_member, is_two_sided, is_two_sided_member,
    noncrossing_matching, reduce_trace, MatchingCertificate, OneSidedVerdict, Orientation,
    ReductionTrace, TwoSidedVerdict,
};
pub use error::{Error, Result};
pub use free_group::{free_multiply, kernel_member, phi, GroupWord};
pub use oracle::{
    bfs_minimal_witness, count_members, exhaustive_equivalence, quotient_suite, CountKind,
    CountTable, EquivalenceReport,
};
pub use quotients::{permutation_order, random_quotient, FiniteQuotient, Permutation};
pub use separation::{
    residual_witness, separate, verify_separation, SeparationCertificate, SeparationReport,
};
pub use words::{
    enumerate_words, format_word, parse_word, DisplayMode, Letter, Notation, PairedAlphabet, Word,
    DEFAULT_ENUMERATION_CAP,
};
