//! Finite-quotient certificates that a word lies outside the closure of the
//! one-sided Dyck language.
//!
//! For a word `w` outside the two-sided language, `r = phi(w)` is a
//! nontrivial reduced word of the free group. Reading `r` along the path
//! `0 -> 1 -> ... -> |r|` defines partial injections for each generator;
//! completing them to permutations yields a representation of the free
//! group in which `r` moves `0` to `|r|`. Pulling it back along `phi` (closer
//! `i` maps to the inverse of opener `i`) gives a quotient that kills every
//! two-sided, hence every one-sided, Dyck word but not `w`.

use std::ops::ControlFlow;

use crate::dyck::for_each_one_sided_word;
use crate::error::{Error, Result};
use crate::free_group::{phi, GroupWord, Sign};
use crate::quotients::{FiniteQuotient, Permutation};
use crate::words::{Notation, PairedAlphabet, Word};

/// One permutation per generator `x_0 .. x_{rank-1}`, on `|r| + 1` points,
/// under which `r` sends `0` to `|r|`.
pub fn residual_witness(r: &GroupWord, rank: usize) -> Result<Vec<Permutation>> {
    if r.is_identity() {
        return Err(Error::EmptyWord);
    }
    assert!(r.is_reduced(), "residual witness needs a reduced word");
    assert!(
        r.rank_used() <= rank,
        "word uses generators beyond rank {rank}"
    );
    let points = r.len() + 1;
    let mut forward: Vec<Vec<Option<u32>>> = vec![vec![None; points]; rank];
    for (k, e) in r.entries().iter().enumerate() {
        let (from, to) = match e.sign {
            Sign::Positive => (k, k + 1),
            Sign::Negative => (k + 1, k),
        };
        let slot = &mut forward[e.generator][from];
        debug_assert!(
            slot.is_none_or(|t| t as usize == to),
            "reduced words never conflict"
        );
        *slot = Some(to as u32);
    }
    forward.into_iter().map(complete_ascending).collect()
}

// Pairs unused domain points with unused codomain points, both ascending.
fn complete_ascending(partial: Vec<Option<u32>>) -> Result<Permutation> {
    let mut hit = vec![false; partial.len()];
    for t in partial.iter().flatten() {
        hit[*t as usize] = true;
    }
    let mut free_targets = (0..partial.len() as u32).filter(|&t| !hit[t as usize]);
    let images = partial
        .into_iter()
        .map(|t| {
            t.or_else(|| free_targets.next())
                .expect("counts of free points agree")
        })
        .collect();
    Permutation::from_images(images)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub quotient: FiniteQuotient,
    pub moved_point: usize,
    /// Image of `moved_point` under the word's evaluation.
    pub target: usize,
}

impl SeparationCertificate {
    /// Whether every closer's image inverts its opener's, which makes every
    /// two-sided Dyck word evaluate to the identity.
    pub fn factors_through_phi(&self) -> bool {
        self.quotient.factors_through_free_group()
    }

    /// Quotient file followed by the trailer lines
    /// `word: ...`, `moved_point: ...`, `image_of_word_moves_point_to: ...`.
    pub fn to_text(&self, word: &Word, notation: &Notation) -> String {
        format!(
            "{}word: {}\nmoved_point: {}\nimage_of_word_moves_point_to: {}\n",
            self.quotient.to_text(),
            notation.format(word),
            self.moved_point,
            self.target
        )
    }

    /// Parses [`to_text`](Self::to_text) output, returning the certificate
    /// and the word it is about. `notation` decides how the word is read;
    /// its alphabet must agree with the quotient's.
    pub fn from_text(text: &str, notation: &Notation) -> Result<(Self, Word)> {
        let lines: Vec<&str> = text.lines().collect();
        let (quotient, used) = FiniteQuotient::parse_lines(&lines)?;
        if quotient.alphabet() != notation.alphabet() {
            return Err(Error::QuotientFormat {
                line: 2,
                message: format!(
                    "certificate has {} pairs, expected {}",
                    quotient.alphabet().pair_count(),
                    notation.alphabet().pair_count()
                ),
            });
        }
        let field = |offset: usize, key: &str| -> Result<&str> {
            let k = used + offset;
            lines
                .get(k)
                .and_then(|l| l.strip_prefix(key))
                .and_then(|l| l.strip_prefix(':'))
                .ok_or_else(|| Error::QuotientFormat {
                    line: k + 1,
                    message: format!("expected \"{key}: ...\""),
                })
        };
        let number = |offset: usize, key: &str| -> Result<usize> {
            field(offset, key)?
                .trim()
                .parse()
                .map_err(|e| Error::QuotientFormat {
                    line: used + offset + 1,
                    message: format!("{e}"),
                })
        };
        let word = notation.parse(field(0, "word")?)?;
        let moved_point = number(1, "moved_point")?;
        let target = number(2, "image_of_word_moves_point_to")?;
        Ok((
            SeparationCertificate {
                quotient,
                moved_point,
                target,
            },
            word,
        ))
    }
}

/// Builds the separating quotient for a word outside the two-sided language.
pub fn separate(alphabet: PairedAlphabet, word: &Word) -> Result<SeparationCertificate> {
    let r = phi(word);
    if r.is_identity() {
        return Err(Error::NotSeparable);
    }
    let generators = residual_witness(&r, alphabet.pair_count())?;
    let quotient = FiniteQuotient::through_free_group(alphabet, &generators)?;
    let target = quotient.evaluate(word).apply(0);
    if target != r.len() {
        return Err(Error::SelfCheck(format!(
            "word sends 0 to {target}, expected {}",
            r.len()
        )));
    }
    Ok(SeparationCertificate {
        quotient,
        moved_point: 0,
        target,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub moves_point: bool,
    pub factors_through_phi: bool,
    /// Number of one-sided words checked, empty word included.
    pub one_sided_checked: u64,
    /// First one-sided word found not to evaluate to the identity.
    pub one_sided_counterexample: Option<Word>,
    pub target_matches: bool,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.moves_point
            && self.factors_through_phi
            && self.one_sided_counterexample.is_none()
            && self.target_matches
    }
}

/// Re-checks a certificate: the word moves the point, the quotient factors
/// through `phi`, and, independently, every one-sided word of length at
/// most `max_len` evaluates to the identity.
pub fn verify_separation(
    cert: &SeparationCertificate,
    word: &Word,
    max_len: usize,
) -> SeparationReport {
    let q = &cert.quotient;
    let image = (cert.moved_point < q.degree()).then(|| q.evaluate(word).apply(cert.moved_point));
    let mut checked = 0u64;
    let mut counterexample = None;
    for len in (0..=max_len).step_by(2) {
        let flow = for_each_one_sided_word(&q.alphabet(), len, |u| {
            checked += 1;
            if q.evaluate(u).is_identity() {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(Word::from(u))
            }
        });
        if let ControlFlow::Break(u) = flow {
            counterexample = Some(u);
            break;
        }
    }
    SeparationReport {
        moves_point: image.is_some_and(|t| t != cert.moved_point),
        factors_through_phi: cert.factors_through_phi(),
        one_sided_checked: checked,
        one_sided_counterexample: counterexample,
        target_matches: image == Some(cert.target),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::is_two_sided_member;
    use crate::words::{enumerate_words, Letter, DEFAULT_ENUMERATION_CAP};

    fn two() -> PairedAlphabet {
        PairedAlphabet::two_pairs()
    }

    fn word(s: &str) -> Word {
        Notation::letters(two()).parse(s).unwrap()
    }

    fn gw(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    fn cycles(degree: usize, c: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(degree, c).unwrap()
    }

    #[test]
    fn residual_witness_single_generator() {
        let ps = residual_witness(&gw("x"), 1).unwrap();
        assert_eq!(ps, vec![cycles(2, &[&[0, 1]])]);
    }

    #[test]
    fn residual_witness_conjugate() {
        let ps = residual_witness(&gw("xyX"), 2).unwrap();
        assert_eq!(ps[0], cycles(4, &[&[0, 1], &[2, 3]]));
        assert_eq!(ps[1], cycles(4, &[&[1, 2]]));
        let end = ps[0].then(&ps[1]).then(&ps[0].inverse()).apply(0);
        assert_eq!(end, 3);
    }

    #[test]
    fn residual_witness_square() {
        let ps = residual_witness(&gw("xx"), 2).unwrap();
        assert_eq!(ps[0], cycles(3, &[&[0, 1, 2]]));
        assert!(ps[1].is_identity());
        assert_eq!(ps[0].then(&ps[0]).apply(0), 2);
        assert_eq!(
            residual_witness(&GroupWord::identity(), 2),
            Err(Error::EmptyWord)
        );
    }

    #[test]
    fn separate_examples() {
        let cert = separate(two(), &word("a")).unwrap();
        assert_eq!(cert.quotient.degree(), 2);
        let t = cycles(2, &[&[0, 1]]);
        assert_eq!(cert.quotient.image(Letter::opener(0)), &t);
        assert_eq!(cert.quotient.image(Letter::closer(0)), &t);
        assert_eq!(cert.quotient.evaluate(&word("a")).apply(0), 1);
        assert!(cert.quotient.evaluate(&word("aA")).is_identity());

        assert_eq!(separate(two(), &word("Aa")), Err(Error::NotSeparable));

        let cert = separate(two(), &word("aab")).unwrap();
        assert_eq!(cert.quotient.degree(), 4);
        assert_eq!(cert.quotient.evaluate(&word("aab")).apply(0), 3);
        assert_eq!(cert.target, 3);
    }

    #[test]
    fn verify_examples() {
        let w = word("a");
        let cert = separate(two(), &w).unwrap();
        let report = verify_separation(&cert, &w, 6);
        assert!(report.passed());
        assert_eq!(report.one_sided_checked, 1 + 2 + 8 + 40);

        let mut images = cert.quotient.images().to_vec();
        images[1] = Permutation::identity(2);
        let tampered = SeparationCertificate {
            quotient: FiniteQuotient::new(two(), images).unwrap(),
            ..cert
        };
        let report = verify_separation(&tampered, &w, 6);
        assert!(!report.factors_through_phi);
        assert!(report.one_sided_counterexample.is_some());
        assert!(!report.passed());

        let w = word("aab");
        assert!(verify_separation(&separate(two(), &w).unwrap(), &w, 4).passed());
    }

    #[test]
    fn certificate_text_round_trip() {
        let n = Notation::letters(two());
        let w = word("aab");
        let cert = separate(two(), &w).unwrap();
        let text = cert.to_text(&w, &n);
        assert!(text.ends_with("word: aab\nmoved_point: 0\nimage_of_word_moves_point_to: 3\n"));
        assert!(text.starts_with("degree 4\npairs 2\n"));
        let (back, back_word) = SeparationCertificate::from_text(&text, &n).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back_word, w);
        assert!(SeparationCertificate::from_text(&cert.quotient.to_text(), &n).is_err());
    }

    #[test]
    fn exhaustive_completeness_and_soundness() {
        for len in 0..=7 {
            for w in enumerate_words(&two(), len, DEFAULT_ENUMERATION_CAP).unwrap() {
                match separate(two(), &w) {
                    Ok(cert) => {
                        assert!(!is_two_sided_member(&w));
                        assert_eq!(cert.quotient.degree(), phi(&w).len() + 1);
                        assert!(cert.quotient.degree() <= w.len() + 1);
                        assert!(verify_separation(&cert, &w, 6).passed(), "{w}");
                    }
                    Err(Error::NotSeparable) => assert!(is_two_sided_member(&w)),
                    Err(e) => panic!("{w}: {e}"),
                }
            }
        }
    }
}
