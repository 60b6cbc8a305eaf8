//! One-sided witnesses for two-sided Dyck words modulo a finite quotient.
//!
//! Fix a quotient `q` and a pair with opener `o` and closer `c`. With
//! `N = lcm(ord q(o), ord q(c))` we have `q(o)^(N-1) = q(o)^-1`, likewise for
//! `c`, so the one-sided block `o^(N-1) c^(N-1)` evaluates to
//! `base = q(o)^-1 q(c)^-1 = (q(c) q(o))^-1`. If `M` is the order of `base`,
//! then `g = (o^(N-1) c^(N-1))^(M-1)` evaluates to `base^-1 = q(c) q(o)`: a
//! one-sided word with the same image as the closing-order couple `c o`.
//! When a closing-order couple encloses material `u`, the wrappers
//! `g1 = g o^(N-1)` (image `q(c)`) and `g2 = c^(N-1) g` (image `q(o)`) are
//! placed around the witness for `u`; the gap between them sits at stack
//! height `N-1`, and inserting a balanced word there keeps everything
//! one-sided.

use crate::dyck::{is_one_sided_member, is_two_sided_member, noncrossing_matching, Orientation};
use crate::error::{Error, Result};
use crate::quotients::FiniteQuotient;
use crate::words::{Letter, Notation, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairGadget {
    pub pair: usize,
    /// `N`, the pair exponent.
    pub exponent: u64,
    /// `M`, the order of `o^(N-1) c^(N-1)` in the quotient.
    pub base_order: u64,
    /// `g`, congruent to the closing-order couple.
    pub gadget: Word,
    /// `g1 = g o^(N-1)`, congruent to the closer.
    pub left_wrapper: Word,
    /// `g2 = c^(N-1) g`, congruent to the opener.
    pub right_wrapper: Word,
}

impl PairGadget {
    fn build(q: &FiniteQuotient, pair: usize) -> Self {
        let (open, close) = (Letter::opener(pair), Letter::closer(pair));
        let exponent = q.pair_exponent(pair);
        let reach = (exponent - 1) as usize;
        let opens = Word::power_of(open, reach);
        let closes = Word::power_of(close, reach);
        let block = opens.concat(&closes);
        let base_order = q.evaluate(&block).order();
        let gadget = block.repeat((base_order - 1) as usize);
        PairGadget {
            pair,
            exponent,
            base_order,
            left_wrapper: gadget.concat(&opens),
            right_wrapper: closes.concat(&gadget),
            gadget,
        }
    }

    /// Checks the gadget identities against `q`; returns a description of
    /// the first one that fails.
    pub fn check(&self, q: &FiniteQuotient) -> Result<(), String> {
        let (open, close) = (Letter::opener(self.pair), Letter::closer(self.pair));
        let (n, m) = (self.exponent as usize, self.base_order as usize);
        if !is_one_sided_member(&self.gadget) {
            return Err(format!("pair {}: gadget is not one-sided", self.pair));
        }
        if self.gadget.len() != 2 * (n - 1) * (m - 1) {
            return Err(format!(
                "pair {}: gadget has length {}",
                self.pair,
                self.gadget.len()
            ));
        }
        if q.evaluate(&self.gadget) != q.evaluate(&[close, open]) {
            return Err(format!(
                "pair {}: gadget image differs from the couple",
                self.pair
            ));
        }
        if q.evaluate(&self.left_wrapper) != *q.image(close) {
            return Err(format!(
                "pair {}: left wrapper image differs from closer",
                self.pair
            ));
        }
        if q.evaluate(&self.right_wrapper) != *q.image(open) {
            return Err(format!(
                "pair {}: right wrapper image differs from opener",
                self.pair
            ));
        }
        if !is_one_sided_member(&self.left_wrapper.concat(&self.right_wrapper)) {
            return Err(format!("pair {}: wrappers do not close up", self.pair));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSet {
    gadgets: Vec<PairGadget>,
}

impl GadgetSet {
    pub fn pair(&self, pair: usize) -> &PairGadget {
        &self.gadgets[pair]
    }

    pub fn iter(&self) -> impl Iterator<Item = &PairGadget> {
        self.gadgets.iter()
    }
}

/// Builds the gadgets for every pair and checks their identities.
pub fn build_gadgets(q: &FiniteQuotient) -> Result<GadgetSet> {
    let gadgets: Vec<PairGadget> = (0..q.alphabet().pair_count())
        .map(|pair| PairGadget::build(q, pair))
        .collect();
    for g in &gadgets {
        g.check(q).map_err(Error::SelfCheck)?;
    }
    Ok(GadgetSet { gadgets })
}

/// A one-sided word with the same image as `word` under `q`.
pub fn approximate(q: &FiniteQuotient, word: &Word) -> Result<Word> {
    approximate_with(q, &build_gadgets(q)?, word)
}

/// As [`approximate`], reusing gadgets already built for `q`.
pub fn approximate_with(q: &FiniteQuotient, gadgets: &GadgetSet, word: &Word) -> Result<Word> {
    let cert = noncrossing_matching(word)?;
    let mut spans = vec![None; word.len()];
    for p in cert.pairs() {
        spans[p.left] = Some((p.right, p.orientation));
    }
    let mut out = Word::empty();
    rewrite(word, &spans, gadgets, 0, word.len(), &mut out);
    if !is_one_sided_member(&out) {
        return Err(Error::SelfCheck(format!("witness {out} is not one-sided")));
    }
    if q.evaluate(&out) != q.evaluate(word) {
        return Err(Error::SelfCheck(format!(
            "witness {out} has a different image"
        )));
    }
    Ok(out)
}

// Walks the matching forest on `word[start..end]` left to right. `spans[i]`
// holds the right end and orientation of the pair whose left end is `i`.
fn rewrite(
    word: &[Letter],
    spans: &[Option<(usize, Orientation)>],
    gadgets: &GadgetSet,
    start: usize,
    end: usize,
    out: &mut Word,
) {
    let mut i = start;
    while i < end {
        let (j, orientation) = spans[i].expect("matching is perfect and non-crossing");
        match orientation {
            Orientation::Opening => {
                out.push(word[i]);
                rewrite(word, spans, gadgets, i + 1, j, out);
                out.push(word[j]);
            }
            Orientation::Closing => {
                let g = gadgets.pair(word[i].pair());
                if j == i + 1 {
                    out.extend_from(&g.gadget);
                } else {
                    out.extend_from(&g.left_wrapper);
                    rewrite(word, spans, gadgets, i + 1, j, out);
                    out.extend_from(&g.right_wrapper);
                }
            }
        }
        i = j + 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApproximationReport {
    pub input_two_sided: bool,
    pub witness_one_sided: bool,
    pub images_agree: bool,
}

impl ApproximationReport {
    pub fn passed(&self) -> bool {
        self.input_two_sided && self.witness_one_sided && self.images_agree
    }
}

pub fn verify_approximation(
    q: &FiniteQuotient,
    word: &Word,
    witness: &Word,
) -> ApproximationReport {
    ApproximationReport {
        input_two_sided: is_two_sided_member(word),
        witness_one_sided: is_one_sided_member(witness),
        images_agree: q.evaluate(word) == q.evaluate(witness),
    }
}

/// Everything needed to re-check an approximation by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub input: Word,
    pub witness: Word,
    /// Where the quotient came from, typically a file path.
    pub quotient_ref: String,
    pub verification: ApproximationReport,
    /// `(pair, N, M)` per pair.
    pub gadget_parameters: Vec<(usize, u64, u64)>,
}

impl WitnessReport {
    pub fn new(
        q: &FiniteQuotient,
        gadgets: &GadgetSet,
        quotient_ref: impl Into<String>,
        input: Word,
        witness: Word,
    ) -> Self {
        WitnessReport {
            verification: verify_approximation(q, &input, &witness),
            gadget_parameters: gadgets
                .iter()
                .map(|g| (g.pair, g.exponent, g.base_order))
                .collect(),
            quotient_ref: quotient_ref.into(),
            input,
            witness,
        }
    }

    pub fn to_text(&self, notation: &Notation) -> String {
        let v = &self.verification;
        let mut out = format!(
            "input: {}\nwitness: {}\nquotient: {}\ninput_two_sided: {}\nwitness_one_sided: {}\nimages_agree: {}\n",
            notation.format(&self.input),
            notation.format(&self.witness),
            self.quotient_ref,
            v.input_two_sided,
            v.witness_one_sided,
            v.images_agree,
        );
        for (pair, n, m) in &self.gadget_parameters {
            out.push_str(&format!("pair {pair}: N={n} M={m}\n"));
        }
        out
    }
}

/// Upper bound on the witness length: every matched pair contributes at
/// most `max(2, |g1| + |g2|)` letters.
pub fn witness_length_bound(gadgets: &GadgetSet, word_len: usize) -> usize {
    let widest = gadgets
        .iter()
        .map(|g| g.left_wrapper.len() + g.right_wrapper.len())
        .max()
        .unwrap_or(0)
        .max(2);
    word_len / 2 * widest
}
