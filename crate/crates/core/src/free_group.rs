//! The free group of rank `n` on generators `x, y, z, ...` and the
//! homomorphism sending opener `i` to generator `i` and closer `i` to its
//! inverse.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

const GENERATOR_SYMBOLS: &[u8; 26] = b"xyzwvutsrqponmlkjihgfedcba";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// A generator raised to `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedGenerator {
    pub generator: usize,
    pub sign: Sign,
}

impl SignedGenerator {
    pub fn new(generator: usize, sign: Sign) -> Self {
        SignedGenerator { generator, sign }
    }

    pub fn inverse(self) -> Self {
        SignedGenerator {
            generator: self.generator,
            sign: self.sign.flip(),
        }
    }

    fn symbol(self) -> char {
        let c = GENERATOR_SYMBOLS[self.generator] as char;
        match self.sign {
            Sign::Positive => c,
            Sign::Negative => c.to_ascii_uppercase(),
        }
    }
}

/// A freely reduced element of the free group. Construction always reduces,
/// so two elements are equal as group elements iff they are `==`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(Vec<SignedGenerator>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        GroupWord(vec![SignedGenerator::new(index, Sign::Positive)])
    }

    /// Reduces an arbitrary sequence of signed generators.
    pub fn reduce<I: IntoIterator<Item = SignedGenerator>>(entries: I) -> Self {
        let mut out = GroupWord::identity();
        for e in entries {
            out.push(e);
        }
        out
    }

    /// Right-multiplies by a single signed generator.
    pub fn push(&mut self, entry: SignedGenerator) {
        if self.0.last() == Some(&entry.inverse()) {
            self.0.pop();
        } else {
            self.0.push(entry);
        }
    }

    pub fn entries(&self) -> &[SignedGenerator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|e| e.inverse()).collect())
    }

    /// Largest generator index used plus one.
    pub fn rank_used(&self) -> usize {
        self.0.iter().map(|e| e.generator + 1).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }
}

pub fn free_multiply(u: &GroupWord, v: &GroupWord) -> GroupWord {
    let mut out = u.clone();
    for &e in &v.0 {
        out.push(e);
    }
    out
}

impl std::ops::Mul for &GroupWord {
    type Output = GroupWord;

    fn mul(self, rhs: &GroupWord) -> GroupWord {
        free_multiply(self, rhs)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{}", e.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(position, symbol)| {
                let lower = symbol.to_ascii_lowercase() as u8;
                let generator = GENERATOR_SYMBOLS
                    .iter()
                    .position(|&g| g == lower)
                    .filter(|_| symbol.is_ascii_alphabetic())
                    .ok_or(Error::UnknownSymbol { position, symbol })?;
                let sign = if symbol.is_ascii_lowercase() {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                Ok(SignedGenerator::new(generator, sign))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupWord::reduce(entries))
    }
}

/// Image of a single letter: opener `i` is `x_i`, closer `i` is `x_i^{-1}`.
pub fn letter_image(letter: Letter) -> SignedGenerator {
    let sign = if letter.is_opener() {
        Sign::Positive
    } else {
        Sign::Negative
    };
    SignedGenerator::new(letter.pair(), sign)
}

/// The reduced image of a word in the rank-`n` free group.
pub fn phi(word: &[Letter]) -> GroupWord {
    GroupWord::reduce(word.iter().map(|&l| letter_image(l)))
}

/// Whether `word` lies in the kernel of [`phi`].
pub fn kernel_member(word: &Word) -> bool {
    phi(word).is_identity()
}
