//! Finite quotients of the free monoid's ambient free group, given as one
//! permutation per letter.
//!
//! Composition is left to right: evaluating a word applies its leftmost
//! letter first, so `evaluate(uv) = evaluate(u).then(&evaluate(v))`. The
//! kernel of a quotient is the finite-index subgroup that the certificates
//! in this crate quantify over.

use std::fmt;

use num_integer::Integer;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::words::{Letter, PairedAlphabet};

/// A bijection of `{0, .., k-1}`; `images[p]` is the image of point `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                Some(_) => return Err(Error::InvalidPermutation(format!("{i} appears twice"))),
                None => {
                    return Err(Error::InvalidPermutation(format!(
                        "{i} out of range for degree {}",
                        images.len()
                    )))
                }
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1], &[2, 3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if p as usize >= degree {
                    return Err(Error::InvalidPermutation(format!("point {p} out of range")));
                }
                images[p as usize] = next;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&p| other.images[p as usize])
                .collect(),
        }
    }

    pub(crate) fn then_in_place(&mut self, other: &Permutation) {
        for p in self.images.iter_mut() {
            *p = other.images[*p as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (p, &q) in self.images.iter().enumerate() {
            images[q as usize] = p as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, exponent: u64) -> Permutation {
        // Square-and-multiply; powers of one permutation commute so the
        // composition order does not matter here.
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &q)| p as u32 == q)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `m >= 1` with `self^m = id`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

pub fn permutation_order(p: &Permutation) -> u64 {
    p.order()
}

/// Cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A homomorphism from the free group on all `2n` letters to `Sym(k)`,
/// given by an independent permutation per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotient {
    alphabet: PairedAlphabet,
    degree: usize,
    images: Vec<Permutation>,
}

impl FiniteQuotient {
    /// `images` is indexed by letter index: `a, A, b, B, ...`.
    pub fn new(alphabet: PairedAlphabet, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != alphabet.letter_count() {
            return Err(Error::InvalidPermutation(format!(
                "expected {} letter images, got {}",
                alphabet.letter_count(),
                images.len()
            )));
        }
        let degree = images[0].degree();
        if degree == 0 {
            return Err(Error::InvalidPermutation(
                "degree must be at least 1".into(),
            ));
        }
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "mixed degrees {degree} and {}",
                p.degree()
            )));
        }
        Ok(FiniteQuotient {
            alphabet,
            degree,
            images,
        })
    }

    /// Every letter maps to the same permutation.
    pub fn uniform(alphabet: PairedAlphabet, image: Permutation) -> Result<Self> {
        Self::new(alphabet, vec![image; alphabet.letter_count()])
    }

    pub fn trivial(alphabet: PairedAlphabet) -> Self {
        Self::uniform(alphabet, Permutation::identity(1)).expect("degree 1 is valid")
    }

    /// Every letter maps to the transposition `(0 1)`.
    pub fn mod_two(alphabet: PairedAlphabet) -> Self {
        Self::uniform(alphabet, Permutation::from_images(vec![1, 0]).unwrap()).unwrap()
    }

    /// Every letter maps to the 3-cycle `(0 1 2)`.
    pub fn cyclic_three(alphabet: PairedAlphabet) -> Self {
        Self::uniform(alphabet, Permutation::from_images(vec![1, 2, 0]).unwrap()).unwrap()
    }

    /// Opener `i` maps to `generator_images[i]`, closer `i` to its inverse.
    /// Such quotients factor through the reduced free group of rank `n`.
    pub fn through_free_group(
        alphabet: PairedAlphabet,
        generator_images: &[Permutation],
    ) -> Result<Self> {
        if generator_images.len() != alphabet.pair_count() {
            return Err(Error::InvalidPermutation(format!(
                "expected {} generator images, got {}",
                alphabet.pair_count(),
                generator_images.len()
            )));
        }
        let images = generator_images
            .iter()
            .flat_map(|p| [p.clone(), p.inverse()])
            .collect();
        Self::new(alphabet, images)
    }

    pub fn alphabet(&self) -> PairedAlphabet {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn image(&self, letter: Letter) -> &Permutation {
        &self.images[letter.index()]
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    /// Product of the letter images in word order. Panics if a letter lies
    /// outside the quotient's alphabet.
    pub fn evaluate(&self, word: &[Letter]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for &l in word {
            acc.then_in_place(self.image(l));
        }
        acc
    }

    pub fn letter_order(&self, letter: Letter) -> u64 {
        self.image(letter).order()
    }

    /// `N = lcm(order(opener), order(closer))`; both letters satisfy
    /// `image^N = id` and so `image^(N-1) = image^(-1)`.
    pub fn pair_exponent(&self, pair: usize) -> u64 {
        self.letter_order(Letter::opener(pair))
            .lcm(&self.letter_order(Letter::closer(pair)))
    }

    /// Whether every closer maps to the inverse of its opener's image.
    pub fn factors_through_free_group(&self) -> bool {
        (0..self.alphabet.pair_count()).all(|i| {
            self.image(Letter::opener(i))
                .then(self.image(Letter::closer(i)))
                .is_identity()
        })
    }

    /// The quotient file form:
    ///
    /// ```text
    /// degree K
    /// pairs N
    /// a: i0 i1 ... i{K-1}
    /// A: ...
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "degree {}\npairs {}\n",
            self.degree,
            self.alphabet.pair_count()
        );
        for (letter, p) in self.alphabet.letters().zip(&self.images) {
            let images: Vec<String> = p.images().iter().map(u32::to_string).collect();
            out.push_str(&format!(
                "{}: {}\n",
                letter.letter_symbol(),
                images.join(" ")
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let (quotient, used) = Self::parse_lines(&lines)?;
        if let Some((k, extra)) = lines
            .iter()
            .enumerate()
            .skip(used)
            .find(|(_, l)| !l.trim().is_empty())
        {
            return Err(Error::QuotientFormat {
                line: k + 1,
                message: format!("unexpected trailing line {extra:?}"),
            });
        }
        Ok(quotient)
    }

    /// Parses a quotient from the head of `lines`, returning it together
    /// with the number of lines consumed.
    pub(crate) fn parse_lines(lines: &[&str]) -> Result<(Self, usize)> {
        let bad = |line: usize, message: String| Error::QuotientFormat { line, message };
        let header = |k: usize, key: &str| -> Result<usize> {
            let line = lines
                .get(k)
                .ok_or_else(|| bad(k + 1, format!("missing \"{key}\" line")))?;
            line.trim()
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix(' '))
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| bad(k + 1, format!("expected \"{key} <integer>\"")))
        };
        let degree = header(0, "degree")?;
        let pairs = header(1, "pairs")?;
        if degree == 0 {
            return Err(bad(1, "degree must be at least 1".into()));
        }
        let alphabet = PairedAlphabet::new(pairs).map_err(|e| bad(2, e.to_string()))?;
        let mut images = Vec::with_capacity(alphabet.letter_count());
        for (offset, letter) in alphabet.letters().enumerate() {
            let k = 2 + offset;
            let line = lines.get(k).ok_or_else(|| {
                bad(
                    k + 1,
                    format!("missing line for {}", letter.letter_symbol()),
                )
            })?;
            let (symbol, rest) = line
                .split_once(':')
                .ok_or_else(|| bad(k + 1, "expected \"<symbol>: images\"".into()))?;
            if symbol.trim() != letter.letter_symbol().to_string() {
                return Err(bad(
                    k + 1,
                    format!(
                        "expected symbol {}, found {:?}",
                        letter.letter_symbol(),
                        symbol
                    ),
                ));
            }
            let points = rest
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| bad(k + 1, e.to_string()))?;
            if points.len() != degree {
                return Err(bad(
                    k + 1,
                    format!("expected {degree} images, found {}", points.len()),
                ));
            }
            images.push(Permutation::from_images(points).map_err(|e| bad(k + 1, e.to_string()))?);
        }
        let quotient = Self::new(alphabet, images).map_err(|e| bad(1, e.to_string()))?;
        Ok((quotient, 2 + alphabet.letter_count()))
    }
}

/// Deterministic pseudo-random quotient.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64(seed)`.
/// Letters are filled in order `a, A, b, B, ...`; each image is a
/// Fisher–Yates shuffle of the identity, running `i` from `k-1` down to `1`
/// and swapping `i` with `j`, where `j` is drawn uniformly from `0..=i` by
/// rejection sampling on `next_u64`.
pub fn random_quotient(alphabet: PairedAlphabet, degree: usize, seed: u64) -> FiniteQuotient {
    assert!(degree >= 1, "degree must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images = alphabet
        .letters()
        .map(|_| {
            let mut points: Vec<u32> = (0..degree as u32).collect();
            for i in (1..degree).rev() {
                let j = uniform_below(&mut rng, i as u64 + 1) as usize;
                points.swap(i, j);
            }
            Permutation { images: points }
        })
        .collect();
    FiniteQuotient::new(alphabet, images).expect("shuffles are valid permutations")
}

fn uniform_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % bound;
        }
    }
}
