//! Paired alphabets and the free monoid of words over them.
//!
//! An alphabet with `n` pairs has `2n` letters. Letter `2i` is the opener of
//! pair `i` and letter `2i + 1` its closer; the two are tied by a formal
//! involution but are otherwise independent letters. Lexicographic order on
//! words is the order of these letter indices, so for two pairs the order is
//! `a < A < b < B`.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Default cap on the number of words a single enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u128 = 100_000_000;

const MAX_LETTER_PAIRS: usize = 26;
const BRACKETS: [(char, char); 3] = [('(', ')'), ('[', ']'), ('{', '}')];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub fn opener(pair: usize) -> Self {
        Letter((2 * pair) as u16)
    }

    pub fn closer(pair: usize) -> Self {
        Letter((2 * pair + 1) as u16)
    }

    pub fn from_index(index: usize) -> Self {
        Letter(index as u16)
    }

    /// Position of the letter in the alphabet's letter order.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn pair(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_opener(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn is_closer(self) -> bool {
        !self.is_opener()
    }

    /// The formal inverse: opener and closer of the same pair swap.
    pub fn partner(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Symbol in letter mode: `a`, `A`, `b`, `B`, ...
    pub fn letter_symbol(self) -> char {
        let base = if self.is_opener() { b'a' } else { b'A' };
        (base + self.pair() as u8) as char
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairedAlphabet {
    pairs: usize,
}

impl PairedAlphabet {
    pub fn new(pairs: usize) -> Result<Self> {
        if pairs == 0 || pairs > MAX_LETTER_PAIRS {
            return Err(Error::InvalidPairCount {
                got: pairs,
                max: MAX_LETTER_PAIRS,
            });
        }
        Ok(PairedAlphabet { pairs })
    }

    /// The two-pair alphabet `{a, A, b, B}`.
    pub fn two_pairs() -> Self {
        PairedAlphabet { pairs: 2 }
    }

    pub fn pair_count(&self) -> usize {
        self.pairs
    }

    pub fn letter_count(&self) -> usize {
        2 * self.pairs
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.letter_count()).map(Letter::from_index)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.letter_count()
    }
}

impl Default for PairedAlphabet {
    fn default() -> Self {
        Self::two_pairs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DisplayMode {
    /// `a A b B ...`, closers as uppercase.
    #[default]
    Letter,
    /// `() [] {}`, at most three pairs.
    Bracket,
}

/// An alphabet together with a display mode that is valid for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Notation {
    alphabet: PairedAlphabet,
    mode: DisplayMode,
}

impl Notation {
    pub fn new(alphabet: PairedAlphabet, mode: DisplayMode) -> Result<Self> {
        if mode == DisplayMode::Bracket && alphabet.pairs > BRACKETS.len() {
            return Err(Error::BracketModeUnsupported(alphabet.pairs));
        }
        Ok(Notation { alphabet, mode })
    }

    pub fn letters(alphabet: PairedAlphabet) -> Self {
        Notation {
            alphabet,
            mode: DisplayMode::Letter,
        }
    }

    pub fn alphabet(&self) -> PairedAlphabet {
        self.alphabet
    }

    pub fn mode(&self) -> DisplayMode {
        self.mode
    }

    pub fn symbol(&self, letter: Letter) -> char {
        match self.mode {
            DisplayMode::Letter => letter.letter_symbol(),
            DisplayMode::Bracket => {
                let (open, close) = BRACKETS[letter.pair()];
                if letter.is_opener() {
                    open
                } else {
                    close
                }
            }
        }
    }

    fn letter_for(&self, symbol: char) -> Option<Letter> {
        self.alphabet.letters().find(|&l| self.symbol(l) == symbol)
    }

    /// Parses `text`, skipping whitespace. Error positions are character
    /// offsets into `text`.
    pub fn parse(&self, text: &str) -> Result<Word> {
        text.chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(position, symbol)| {
                self.letter_for(symbol)
                    .ok_or(Error::UnknownSymbol { position, symbol })
            })
            .collect()
    }

    pub fn format(&self, word: &Word) -> String {
        word.iter().map(|&l| self.symbol(l)).collect()
    }
}

pub fn parse_word(text: &str, alphabet: PairedAlphabet, mode: DisplayMode) -> Result<Word> {
    Notation::new(alphabet, mode)?.parse(text)
}

pub fn format_word(word: &Word, alphabet: PairedAlphabet, mode: DisplayMode) -> Result<String> {
    Ok(Notation::new(alphabet, mode)?.format(word))
}

/// An element of the free monoid: a finite sequence of letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// `letter` repeated `count` times.
    pub fn power_of(letter: Letter, count: usize) -> Word {
        Word(vec![letter; count])
    }

    pub fn repeat(&self, count: usize) -> Word {
        Word(self.0.repeat(count))
    }

    pub fn is_over(&self, alphabet: &PairedAlphabet) -> bool {
        self.0.iter().all(|&l| alphabet.contains(l))
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

/// Letter-mode rendering; independent of the pair count.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.letter_symbol())?;
        }
        Ok(())
    }
}

/// Number of words of `length` over `alphabet`, or `None` on overflow.
pub fn word_count(alphabet: &PairedAlphabet, length: usize) -> Option<u128> {
    (alphabet.letter_count() as u128).checked_pow(u32::try_from(length).ok()?)
}

pub(crate) fn check_cap(alphabet: &PairedAlphabet, length: usize, cap: u128) -> Result<u128> {
    match word_count(alphabet, length) {
        Some(count) if count <= cap => Ok(count),
        Some(count) => Err(Error::ResourceBound {
            requested: count,
            cap,
        }),
        None => Err(Error::ResourceBound {
            requested: u128::MAX,
            cap,
        }),
    }
}

/// All `(2n)^length` words of the given length in lexicographic order.
pub fn enumerate_words(alphabet: &PairedAlphabet, length: usize, cap: u128) -> Result<WordIter> {
    let remaining = check_cap(alphabet, length, cap)?;
    Ok(WordIter {
        radix: alphabet.letter_count(),
        current: vec![Letter::from_index(0); length],
        remaining,
    })
}

/// Odometer over letter indices; the last position varies fastest.
#[derive(Debug, Clone)]
pub struct WordIter {
    radix: usize,
    current: Vec<Letter>,
    remaining: u128,
}

impl WordIter {
    /// Advances and lends the current letters to `f` without allocating a
    /// [`Word`]. Returns `None` once exhausted.
    pub fn next_with<R>(&mut self, f: impl FnOnce(&[Letter]) -> R) -> Option<R> {
        if self.remaining == 0 {
            return None;
        }
        let out = f(&self.current);
        self.advance();
        Some(out)
    }

    fn advance(&mut self) {
        self.remaining -= 1;
        for l in self.current.iter_mut().rev() {
            let next = l.index() + 1;
            if next < self.radix {
                *l = Letter::from_index(next);
                return;
            }
            *l = Letter::from_index(0);
        }
    }
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        self.next_with(|s| Word::from(s))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use proptest::prelude::*;

    use super::*;

    fn two() -> PairedAlphabet {
        PairedAlphabet::two_pairs()
    }

    #[test]
    fn alphabet_letters_are_distinct_and_paired() {
        for n in 1..=5 {
            let alpha = PairedAlphabet::new(n).unwrap();
            let letters: Vec<_> = alpha.letters().collect();
            assert_eq!(letters.len(), 2 * n);
            let set: HashSet<_> = letters.iter().collect();
            assert_eq!(set.len(), 2 * n);
            for l in letters {
                assert_ne!(l.partner(), l);
                assert_eq!(l.partner().partner(), l);
                assert_eq!(l.partner().pair(), l.pair());
                assert_ne!(l.is_opener(), l.partner().is_opener());
            }
        }
        assert!(PairedAlphabet::new(0).is_err());
        assert!(PairedAlphabet::new(27).is_err());
    }

    #[test]
    fn default_display_symbols() {
        let letters = Notation::letters(two());
        let s: String = two().letters().map(|l| letters.symbol(l)).collect();
        assert_eq!(s, "aAbB");
        let br = Notation::new(PairedAlphabet::new(3).unwrap(), DisplayMode::Bracket).unwrap();
        let s: String = br.alphabet().letters().map(|l| br.symbol(l)).collect();
        assert_eq!(s, "()[]{}");
    }

    #[test]
    fn parse_letter_mode() {
        let w = parse_word("aA", two(), DisplayMode::Letter).unwrap();
        assert_eq!(w.letters(), &[Letter::opener(0), Letter::closer(0)]);
        let w = parse_word(" a A\tb ", two(), DisplayMode::Letter).unwrap();
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn parse_bracket_mode_three_pairs() {
        let alpha = PairedAlphabet::new(3).unwrap();
        let w = parse_word("([()()]{}[])()", alpha, DisplayMode::Bracket).unwrap();
        assert_eq!(w.len(), 14);
        assert!(w.is_over(&alpha));
    }

    #[test]
    fn parse_unknown_symbol() {
        assert_eq!(
            parse_word("c", two(), DisplayMode::Letter),
            Err(Error::UnknownSymbol {
                position: 0,
                symbol: 'c'
            })
        );
        // '{' belongs to pair 2, absent for two pairs
        assert_eq!(
            parse_word("() {", two(), DisplayMode::Bracket),
            Err(Error::UnknownSymbol {
                position: 3,
                symbol: '{'
            })
        );
    }

    #[test]
    fn bracket_mode_needs_at_most_three_pairs() {
        let alpha = PairedAlphabet::new(4).unwrap();
        assert_eq!(
            Notation::new(alpha, DisplayMode::Bracket),
            Err(Error::BracketModeUnsupported(4))
        );
    }

    #[test]
    fn format_examples() {
        assert_eq!(
            format_word(&Word::empty(), two(), DisplayMode::Letter).unwrap(),
            ""
        );
        let w = Word::from_letters(vec![Letter::opener(0), Letter::closer(0)]);
        assert_eq!(format_word(&w, two(), DisplayMode::Letter).unwrap(), "aA");
        let w = Word::from_letters(vec![Letter::closer(0), Letter::opener(0)]);
        assert_eq!(format_word(&w, two(), DisplayMode::Bracket).unwrap(), ")(");
    }

    #[test]
    fn enumeration_sizes_and_order() {
        assert_eq!(
            enumerate_words(&two(), 0, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .count(),
            1
        );
        assert_eq!(
            enumerate_words(&two(), 2, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .count(),
            16
        );
        let one = PairedAlphabet::new(1).unwrap();
        let words: Vec<_> = enumerate_words(&one, 3, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .collect();
        assert_eq!(words.len(), 8);
        assert_eq!(words[0].to_string(), "aaa");
        assert_eq!(words[1].to_string(), "aaA");
        assert_eq!(words[7].to_string(), "AAA");
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn enumeration_cardinality_without_duplicates() {
        for n in 1..=3 {
            let alpha = PairedAlphabet::new(n).unwrap();
            let max_len = if n == 3 { 6 } else { 8 };
            for len in 0..=max_len {
                let words: Vec<_> = enumerate_words(&alpha, len, DEFAULT_ENUMERATION_CAP)
                    .unwrap()
                    .collect();
                let expected = (2 * n).pow(len as u32);
                assert_eq!(words.len(), expected);
                let set: HashSet<_> = words.iter().collect();
                assert_eq!(set.len(), expected);
            }
        }
    }

    #[test]
    fn enumeration_respects_cap() {
        let err = enumerate_words(&two(), 5, 1000).unwrap_err();
        assert_eq!(
            err,
            Error::ResourceBound {
                requested: 1024,
                cap: 1000
            }
        );
        assert!(enumerate_words(&two(), 200, DEFAULT_ENUMERATION_CAP).is_err());
    }

    #[test]
    fn next_with_matches_iterator() {
        let mut a = enumerate_words(&two(), 3, 1000).unwrap();
        let b = enumerate_words(&two(), 3, 1000).unwrap();
        for w in b {
            assert_eq!(a.next_with(|ls| Word::from(ls)).unwrap(), w);
        }
        assert!(a.next_with(|_| ()).is_none());
    }

    fn word_strategy(pairs: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..2 * pairs, 0..=12)
            .prop_map(|v| v.into_iter().map(Letter::from_index).collect())
    }

    proptest! {
        #[test]
        fn letter_mode_round_trip(w in word_strategy(4)) {
            let notation = Notation::letters(PairedAlphabet::new(4).unwrap());
            prop_assert_eq!(notation.parse(&notation.format(&w)).unwrap(), w);
        }

        #[test]
        fn bracket_mode_round_trip(w in word_strategy(3)) {
            let notation =
                Notation::new(PairedAlphabet::new(3).unwrap(), DisplayMode::Bracket).unwrap();
            prop_assert_eq!(notation.parse(&notation.format(&w)).unwrap(), w);
        }
    }
}
