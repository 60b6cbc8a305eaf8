//! Recognizers for the one-sided and two-sided Dyck languages.
//!
//! The one-sided language is the usual bracket discipline: a closer must
//! match the most recent unmatched opener of its own pair. In the two-sided
//! language opener and closer are formal inverses, so both `aA` and `Aa`
//! cancel; a word is a member iff repeatedly deleting adjacent inverse
//! couples empties it. Both recognizers return a non-crossing perfect
//! matching of the positions as a certificate.

use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::words::{Letter, Notation, PairedAlphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// The left position holds the opener.
    Opening,
    /// The left position holds the closer.
    Closing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchedPair {
    pub left: usize,
    pub right: usize,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    PositionOutOfRange(usize),
    NotPerfect(usize),
    Unordered(usize, usize),
    Crossing(MatchedPair, MatchedPair),
    NotInverse(MatchedPair),
    WrongOrientation(MatchedPair),
    NotOneSided(MatchedPair),
}

/// A perfect non-crossing matching of a word's positions, sorted by `left`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingCertificate {
    pairs: Vec<MatchedPair>,
}

impl MatchingCertificate {
    /// Builds a certificate from position pairs, deriving orientations from
    /// the letters of `word`.
    pub fn from_positions(
        word: &[Letter],
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut pairs: Vec<MatchedPair> = positions
            .into_iter()
            .map(|(i, j)| {
                let (left, right) = (i.min(j), i.max(j));
                let orientation = if word[left].is_opener() {
                    Orientation::Opening
                } else {
                    Orientation::Closing
                };
                MatchedPair {
                    left,
                    right,
                    orientation,
                }
            })
            .collect();
        pairs.sort_by_key(|p| p.left);
        MatchingCertificate { pairs }
    }

    pub fn pairs(&self) -> &[MatchedPair] {
        &self.pairs
    }

    pub fn is_one_sided(&self) -> bool {
        self.pairs
            .iter()
            .all(|p| p.orientation == Orientation::Opening)
    }

    /// `partner[i]` is the position matched with `i`.
    pub fn partners(&self, len: usize) -> Vec<usize> {
        let mut partner = vec![usize::MAX; len];
        for p in &self.pairs {
            partner[p.left] = p.right;
            partner[p.right] = p.left;
        }
        partner
    }

    /// Checks every certificate invariant against `word` by direct pairwise
    /// inspection, without reusing either recognizer.
    pub fn validate(&self, word: &[Letter], one_sided: bool) -> Result<(), CertificateViolation> {
        let mut covered = vec![false; word.len()];
        for p in &self.pairs {
            if p.left >= p.right {
                return Err(CertificateViolation::Unordered(p.left, p.right));
            }
            for pos in [p.left, p.right] {
                match covered.get_mut(pos) {
                    None => return Err(CertificateViolation::PositionOutOfRange(pos)),
                    Some(c) if *c => return Err(CertificateViolation::NotPerfect(pos)),
                    Some(c) => *c = true,
                }
            }
            let (l, r) = (word[p.left], word[p.right]);
            if l.partner() != r {
                return Err(CertificateViolation::NotInverse(*p));
            }
            let expected = if l.is_opener() {
                Orientation::Opening
            } else {
                Orientation::Closing
            };
            if p.orientation != expected {
                return Err(CertificateViolation::WrongOrientation(*p));
            }
            if one_sided && p.orientation != Orientation::Opening {
                return Err(CertificateViolation::NotOneSided(*p));
            }
        }
        if let Some(pos) = covered.iter().position(|c| !c) {
            return Err(CertificateViolation::NotPerfect(pos));
        }
        for (k, p) in self.pairs.iter().enumerate() {
            for q in &self.pairs[k + 1..] {
                let crosses = (p.left < q.left && q.left < p.right && p.right < q.right)
                    || (q.left < p.left && p.left < q.right && q.right < p.right);
                if crosses {
                    return Err(CertificateViolation::Crossing(*p, *q));
                }
            }
        }
        Ok(())
    }

    /// One `i j O|C` line per pair, sorted by `i`.
    pub fn to_text(&self) -> String {
        self.pairs
            .iter()
            .map(|p| {
                let tag = match p.orientation {
                    Orientation::Opening => 'O',
                    Orientation::Closing => 'C',
                };
                format!("{} {} {}\n", p.left, p.right, tag)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneSidedVerdict {
    Accepted(MatchingCertificate),
    /// Position of the first unmatchable closer, or of the first opener
    /// left unmatched at the end.
    Rejected {
        position: usize,
    },
}

impl OneSidedVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, OneSidedVerdict::Accepted(_))
    }
}

pub fn is_one_sided(word: &[Letter]) -> OneSidedVerdict {
    let mut stack: Vec<usize> = Vec::new();
    let mut pairs = Vec::with_capacity(word.len() / 2);
    for (pos, &l) in word.iter().enumerate() {
        if l.is_opener() {
            stack.push(pos);
            continue;
        }
        match stack.last() {
            Some(&top) if word[top] == l.partner() => {
                stack.pop();
                pairs.push((top, pos));
            }
            _ => return OneSidedVerdict::Rejected { position: pos },
        }
    }
    match stack.first() {
        Some(&pos) => OneSidedVerdict::Rejected { position: pos },
        None => OneSidedVerdict::Accepted(MatchingCertificate::from_positions(word, pairs)),
    }
}

/// Allocation-light membership test for the one-sided language.
pub fn is_one_sided_member(word: &[Letter]) -> bool {
    if word.len() % 2 == 1 {
        return false;
    }
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if l.is_opener() {
            stack.push(l);
        } else if stack.pop() != Some(l.partner()) {
            return false;
        }
    }
    stack.is_empty()
}

/// One deletion of an adjacent inverse couple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeletionStep {
    /// Position of the couple's left letter in the word as it stood
    /// just before this deletion.
    pub position: usize,
    pub left: Letter,
    pub right: Letter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    steps: Vec<DeletionStep>,
    /// Original positions of each deleted couple, in step order.
    origins: Vec<(usize, usize)>,
    residual: Word,
}

impl ReductionTrace {
    pub fn steps(&self) -> &[DeletionStep] {
        &self.steps
    }

    pub fn residual(&self) -> &Word {
        &self.residual
    }

    pub fn is_member(&self) -> bool {
        self.residual.is_empty()
    }

    /// The deleted couples traced back to positions of the input word.
    pub fn matching(&self, word: &[Letter]) -> MatchingCertificate {
        MatchingCertificate::from_positions(word, self.origins.iter().copied())
    }

    /// Re-applies the steps to `word`, checking each one deletes an adjacent
    /// inverse couple at the stated position, and returns the result.
    pub fn replay(&self, word: &[Letter]) -> Option<Word> {
        let mut current = word.to_vec();
        for s in &self.steps {
            let (l, r) = (*current.get(s.position)?, *current.get(s.position + 1)?);
            if l != s.left || r != s.right || l.partner() != r {
                return None;
            }
            current.drain(s.position..s.position + 2);
        }
        Some(Word::from_letters(current))
    }

    /// `step k: delete (x,y) at p`, one line per step, `k` counted from 1.
    pub fn to_text(&self, notation: &Notation) -> String {
        self.steps
            .iter()
            .enumerate()
            .map(|(k, s)| {
                format!(
                    "step {}: delete ({},{}) at {}\n",
                    k + 1,
                    notation.symbol(s.left),
                    notation.symbol(s.right),
                    s.position
                )
            })
            .collect()
    }
}

/// Leftmost-innermost free cancellation. The processed prefix is kept on a
/// stack; whenever the incoming letter is the partner of the stack top the
/// two are deleted. The stack is exactly the current word's prefix, so the
/// left letter of a deleted couple sits at index `stack.len() - 1`.
pub fn reduce_trace(word: &[Letter]) -> ReductionTrace {
    let mut stack: Vec<(Letter, usize)> = Vec::with_capacity(word.len());
    let mut steps = Vec::new();
    let mut origins = Vec::new();
    for (pos, &l) in word.iter().enumerate() {
        match stack.last() {
            Some(&(top, origin)) if top.partner() == l => {
                steps.push(DeletionStep {
                    position: stack.len() - 1,
                    left: top,
                    right: l,
                });
                origins.push((origin, pos));
                stack.pop();
            }
            _ => stack.push((l, pos)),
        }
    }
    ReductionTrace {
        steps,
        origins,
        residual: stack.into_iter().map(|(l, _)| l).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoSidedVerdict {
    Accepted(MatchingCertificate),
    Rejected { residual: Word },
}

impl TwoSidedVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, TwoSidedVerdict::Accepted(_))
    }
}

pub fn is_two_sided(word: &[Letter]) -> TwoSidedVerdict {
    let trace = reduce_trace(word);
    if trace.is_member() {
        TwoSidedVerdict::Accepted(trace.matching(word))
    } else {
        TwoSidedVerdict::Rejected {
            residual: trace.residual,
        }
    }
}

/// Membership in the two-sided language; odd lengths are rejected
/// without scanning.
pub fn is_two_sided_member(word: &[Letter]) -> bool {
    if word.len() % 2 == 1 {
        return false;
    }
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if stack.last() == Some(&l.partner()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack.is_empty()
}

pub fn noncrossing_matching(word: &[Letter]) -> Result<MatchingCertificate> {
    match is_two_sided(word) {
        TwoSidedVerdict::Accepted(cert) => Ok(cert),
        TwoSidedVerdict::Rejected { residual } => Err(Error::NotTwoSided { residual }),
    }
}

/// Calls `visit` on every one-sided word of `length` over `alphabet`, in
/// lexicographic order. Stops early if `visit` breaks.
pub fn for_each_one_sided_word<B>(
    alphabet: &PairedAlphabet,
    length: usize,
    mut visit: impl FnMut(&[Letter]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if length % 2 == 1 {
        return ControlFlow::Continue(());
    }
    let mut buf = Vec::with_capacity(length);
    let mut open = Vec::with_capacity(length / 2);
    one_sided_rec(alphabet, length, &mut buf, &mut open, &mut visit)
}

fn one_sided_rec<B>(
    alphabet: &PairedAlphabet,
    length: usize,
    buf: &mut Vec<Letter>,
    open: &mut Vec<Letter>,
    visit: &mut impl FnMut(&[Letter]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if buf.len() == length {
        return visit(buf);
    }
    let remaining = length - buf.len();
    for l in alphabet.letters() {
        if l.is_opener() {
            if open.len() + 1 > remaining - 1 {
                continue;
            }
            buf.push(l);
            open.push(l);
            one_sided_rec(alphabet, length, buf, open, visit)?;
            open.pop();
            buf.pop();
        } else if open.last() == Some(&l.partner()) {
            buf.push(l);
            open.pop();
            one_sided_rec(alphabet, length, buf, open, visit)?;
            open.push(l.partner());
            buf.pop();
        }
    }
    ControlFlow::Continue(())
}

impl fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateViolation::PositionOutOfRange(p) => write!(f, "position {p} out of range"),
            CertificateViolation::NotPerfect(p) => {
                write!(f, "position {p} not matched exactly once")
            }
            CertificateViolation::Unordered(i, j) => write!(f, "pair ({i}, {j}) is not ordered"),
            CertificateViolation::Crossing(p, q) => write!(
                f,
                "pairs ({}, {}) and ({}, {}) cross",
                p.left, p.right, q.left, q.right
            ),
            CertificateViolation::NotInverse(p) => {
                write!(f, "pair ({}, {}) is not an inverse couple", p.left, p.right)
            }
            CertificateViolation::WrongOrientation(p) => {
                write!(
                    f,
                    "pair ({}, {}) has the wrong orientation",
                    p.left, p.right
                )
            }
            CertificateViolation::NotOneSided(p) => {
                write!(f, "pair ({}, {}) is closing-order", p.left, p.right)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::seq::IndexedRandom;
    use rand::SeedableRng;

    use super::*;
    use crate::words::{enumerate_words, DisplayMode, DEFAULT_ENUMERATION_CAP};

    fn two() -> PairedAlphabet {
        PairedAlphabet::two_pairs()
    }

    fn word(s: &str) -> Word {
        Notation::letters(two()).parse(s).unwrap()
    }

    fn brackets(pairs: usize, s: &str) -> Word {
        Notation::new(PairedAlphabet::new(pairs).unwrap(), DisplayMode::Bracket)
            .unwrap()
            .parse(s)
            .unwrap()
    }

    fn pair_set(cert: &MatchingCertificate) -> Vec<(usize, usize)> {
        cert.pairs().iter().map(|p| (p.left, p.right)).collect()
    }

    #[test]
    fn one_sided_examples() {
        let w = brackets(3, "([()()]{}[])()");
        match is_one_sided(&w) {
            OneSidedVerdict::Accepted(cert) => cert.validate(&w, true).unwrap(),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            is_one_sided(&brackets(2, ")(")),
            OneSidedVerdict::Rejected { position: 0 }
        );
        match is_one_sided(&word("aAbB")) {
            OneSidedVerdict::Accepted(cert) => assert_eq!(pair_set(&cert), vec![(0, 1), (2, 3)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_sided_failure_positions() {
        assert_eq!(
            is_one_sided(&word("aB")),
            OneSidedVerdict::Rejected { position: 1 }
        );
        assert_eq!(
            is_one_sided(&word("aaA")),
            OneSidedVerdict::Rejected { position: 0 }
        );
        assert_eq!(
            is_one_sided(&word("abBab")),
            OneSidedVerdict::Rejected { position: 0 }
        );
        assert!(is_one_sided(&Word::empty()).is_accepted());
    }

    #[test]
    fn reduce_examples() {
        let w = brackets(2, ")()(][)( ");
        let trace = reduce_trace(&w);
        assert!(trace.is_member());
        assert_eq!(trace.replay(&w), Some(Word::empty()));

        let w = word("AabB");
        let trace = reduce_trace(&w);
        assert!(trace.is_member());
        assert_eq!(trace.steps().len(), 2);

        let w = word("abAB");
        let trace = reduce_trace(&w);
        assert_eq!(trace.residual(), &w);
        assert!(trace.steps().is_empty());
    }

    #[test]
    fn trace_text_form() {
        let trace = reduce_trace(&word("aBbA"));
        let n = Notation::letters(two());
        assert_eq!(
            trace.to_text(&n),
            "step 1: delete (B,b) at 1\nstep 2: delete (a,A) at 0\n"
        );
    }

    #[test]
    fn two_sided_examples() {
        match is_two_sided(&brackets(2, ")(")) {
            TwoSidedVerdict::Accepted(cert) => {
                assert_eq!(cert.pairs().len(), 1);
                assert_eq!(cert.pairs()[0].orientation, Orientation::Closing);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            is_two_sided(&word("aAa")),
            TwoSidedVerdict::Rejected {
                residual: word("a")
            }
        );
        assert!(!is_two_sided_member(&word("aAa")));
    }

    #[test]
    fn two_sided_single_pair_length_four() {
        let one = PairedAlphabet::new(1).unwrap();
        let accepted: Vec<String> = enumerate_words(&one, 4, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .filter(|w| is_two_sided(w).is_accepted())
            .map(|w| w.to_string())
            .collect();
        assert_eq!(accepted, ["aaAA", "aAaA", "aAAa", "AaaA", "AaAa", "AAaa"]);
        // the equal-count criterion for a single pair
        for w in enumerate_words(&one, 4, DEFAULT_ENUMERATION_CAP).unwrap() {
            let opens = w.iter().filter(|l| l.is_opener()).count();
            assert_eq!(is_two_sided_member(&w), opens == 2, "{w}");
        }
    }

    #[test]
    fn noncrossing_examples() {
        let cert = noncrossing_matching(&word("Aa")).unwrap();
        assert_eq!(
            cert.pairs(),
            &[MatchedPair {
                left: 0,
                right: 1,
                orientation: Orientation::Closing
            }]
        );
        let cert = noncrossing_matching(&word("aAbB")).unwrap();
        assert_eq!(pair_set(&cert), vec![(0, 1), (2, 3)]);
        assert!(cert.is_one_sided());

        let w = brackets(2, ")()(][)( ");
        let cert = noncrossing_matching(&w).unwrap();
        assert_eq!(cert.pairs().len(), 4);
        cert.validate(&w, false).unwrap();
        assert!(matches!(
            noncrossing_matching(&word("ab")),
            Err(Error::NotTwoSided { .. })
        ));
    }

    #[test]
    fn certificate_text_form() {
        let cert = noncrossing_matching(&word("aBbA")).unwrap();
        assert_eq!(cert.to_text(), "0 3 O\n1 2 C\n");
    }

    #[test]
    fn validator_catches_bad_certificates() {
        let w = word("abBA");
        let crossing = MatchingCertificate::from_positions(&w, [(0, 2), (1, 3)]);
        assert!(crossing.validate(&w, false).is_err());
        let w = word("aAbB");
        let partial = MatchingCertificate::from_positions(&w, [(0, 1)]);
        assert_eq!(
            partial.validate(&w, false),
            Err(CertificateViolation::NotPerfect(2))
        );
        let mismatched = MatchingCertificate::from_positions(&w, [(0, 3), (1, 2)]);
        assert!(matches!(
            mismatched.validate(&w, false),
            Err(CertificateViolation::NotInverse(_))
        ));
        let w = word("Aa");
        let cert = noncrossing_matching(&w).unwrap();
        assert!(matches!(
            cert.validate(&w, true),
            Err(CertificateViolation::NotOneSided(_))
        ));
    }

    #[test]
    fn exhaustive_certificates_and_inclusion() {
        for len in 0..=10 {
            let mut it = enumerate_words(&two(), len, DEFAULT_ENUMERATION_CAP).unwrap();
            while it
                .next_with(|w| {
                    let one = is_one_sided(w);
                    let two_v = is_two_sided(w);
                    assert_eq!(one.is_accepted(), is_one_sided_member(w));
                    assert_eq!(two_v.is_accepted(), is_two_sided_member(w));
                    if let OneSidedVerdict::Accepted(cert) = &one {
                        assert!(two_v.is_accepted());
                        cert.validate(w, true).unwrap();
                    }
                    if let TwoSidedVerdict::Accepted(cert) = &two_v {
                        cert.validate(w, false).unwrap();
                    }
                    let trace = reduce_trace(w);
                    assert_eq!(trace.replay(w).as_ref(), Some(trace.residual()));
                    assert!(trace.residual().windows(2).all(|p| p[0].partner() != p[1]));
                })
                .is_some()
            {}
        }
    }

    #[test]
    fn membership_is_independent_of_deletion_order() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
        let mut members = Vec::new();
        let mut len = 0;
        while members.len() < 1000 {
            len = (len + 2) % 22;
            members.push(random_member(&mut rng, len));
        }
        for w in members {
            assert!(is_two_sided_member(&w));
            let mut current = w.into_letters();
            while !current.is_empty() {
                let spots: Vec<usize> = (0..current.len() - 1)
                    .filter(|&i| current[i].partner() == current[i + 1])
                    .collect();
                let &i = spots
                    .choose(&mut rng)
                    .expect("a member always has a couple");
                current.drain(i..i + 2);
            }
        }
    }

    // Insert random inverse couples at random gaps.
    fn random_member(rng: &mut impl rand::Rng, len: usize) -> Word {
        let mut letters = Vec::new();
        for _ in 0..len / 2 {
            let l = Letter::from_index(rng.random_range(0..4));
            let at = rng.random_range(0..=letters.len());
            letters.splice(at..at, [l, l.partner()]);
        }
        Word::from_letters(letters)
    }

    #[test]
    fn one_sided_generator_matches_filtered_enumeration() {
        for n in 1..=3 {
            let alpha = PairedAlphabet::new(n).unwrap();
            for len in 0..=8 {
                if n == 3 && len > 6 {
                    continue;
                }
                let expected: Vec<Word> = enumerate_words(&alpha, len, DEFAULT_ENUMERATION_CAP)
                    .unwrap()
                    .filter(|w| is_one_sided_member(w))
                    .collect();
                let mut got = Vec::new();
                let _ = for_each_one_sided_word::<()>(&alpha, len, |w| {
                    got.push(Word::from(w));
                    ControlFlow::Continue(())
                });
                assert_eq!(got, expected, "n={n} len={len}");
            }
        }
    }

    #[test]
    fn insertion_at_any_gap_preserves_one_sidedness() {
        let mut hosts = Vec::new();
        let mut inserts = Vec::new();
        for len in [0, 2, 4, 6] {
            let _ = for_each_one_sided_word::<()>(&two(), len, |w| {
                hosts.push(Word::from(w));
                ControlFlow::Continue(())
            });
        }
        for len in [0, 2, 4] {
            let _ = for_each_one_sided_word::<()>(&two(), len, |w| {
                inserts.push(Word::from(w));
                ControlFlow::Continue(())
            });
        }
        for h in &hosts {
            for u in &inserts {
                for gap in 0..=h.len() {
                    let mut letters = h.letters().to_vec();
                    letters.splice(gap..gap, u.iter().copied());
                    assert!(is_one_sided_member(&letters));
                }
            }
        }
    }
}
