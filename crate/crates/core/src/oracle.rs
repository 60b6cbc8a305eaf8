//! Brute-force ground truth: exhaustive counts, closed forms, the
//! recognizer/kernel equivalence run, and shortest approximation witnesses.
//!
//! Counts are taken by enumerating every word and running the recognizers,
//! then compared against routes that never look at a word: the Catalan
//! closed form for one-sided words, and a walk count on the `2n`-regular
//! tree for two-sided words (a word reduces to the identity iff its letters
//! trace a closed walk from the root of the Cayley tree).

use std::fmt;
use std::ops::ControlFlow;

use crate::dyck::{for_each_one_sided_word, is_one_sided_member, is_two_sided_member};
use crate::error::{Error, Result};
use crate::free_group::kernel_member;
use crate::quotients::{random_quotient, FiniteQuotient};
use crate::words::{check_cap, enumerate_words, PairedAlphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountKind {
    OneSided,
    TwoSided,
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountKind::OneSided => "one_sided",
            CountKind::TwoSided => "two_sided",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRow {
    pub length: usize,
    pub count: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub kind: CountKind,
    pub pairs: usize,
    /// Even lengths from 2 up to the requested maximum.
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn count_at(&self, length: usize) -> Option<u128> {
        self.rows
            .iter()
            .find(|r| r.length == length)
            .map(|r| r.count)
    }

    /// Compares every row against the closed form (one-sided) or the walk
    /// count (two-sided), plus central binomials for a single pair.
    pub fn check_closed_forms(&self) -> Result<(), String> {
        let max_len = self.rows.last().map_or(0, |r| r.length);
        let walks = closed_walk_counts(self.pairs, max_len);
        for row in &self.rows {
            let k = row.length / 2;
            let mut expected = vec![];
            match self.kind {
                CountKind::OneSided => {
                    expected.push(("catalan", catalan(k) * (self.pairs as u128).pow(k as u32)))
                }
                CountKind::TwoSided => {
                    expected.push(("tree walks", walks[row.length]));
                    if self.pairs == 1 {
                        expected.push(("central binomial", central_binomial(k)));
                    }
                }
            }
            for (route, value) in expected {
                if value != row.count {
                    return Err(format!(
                        "{} n={} length {}: enumerated {}, {route} gives {value}",
                        self.kind, self.pairs, row.length, row.count
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.count.to_string().len())
            .max()
            .unwrap_or(0)
            .max("count".len());
        let mut out = format!(
            "{} n={}\n{:>6}  {:>width$}\n",
            self.kind, self.pairs, "length", "count"
        );
        for r in &self.rows {
            out.push_str(&format!("{:>6}  {:>width$}\n", r.length, r.count));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,pairs,length,count\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.kind, self.pairs, r.length, r.count
            ));
        }
        out
    }
}

/// Exact member counts per even length `2..=max_length`, by enumeration.
pub fn count_members(
    kind: CountKind,
    alphabet: &PairedAlphabet,
    max_length: usize,
    cap: u128,
) -> Result<CountTable> {
    check_cap(alphabet, max_length, cap)?;
    let member: fn(&[crate::words::Letter]) -> bool = match kind {
        CountKind::OneSided => is_one_sided_member,
        CountKind::TwoSided => is_two_sided_member,
    };
    let mut rows = Vec::new();
    for length in (2..=max_length).step_by(2) {
        let mut it = enumerate_words(alphabet, length, cap)?;
        let mut count = 0u128;
        while let Some(hit) = it.next_with(member) {
            count += hit as u128;
        }
        rows.push(CountRow { length, count });
    }
    Ok(CountTable {
        kind,
        pairs: alphabet.pair_count(),
        rows,
    })
}

pub fn catalan(k: usize) -> u128 {
    central_binomial(k) / (k as u128 + 1)
}

pub fn central_binomial(k: usize) -> u128 {
    // C(2k, k) built up as C(2j, j) = C(2j-2, j-1) * (2j)(2j-1) / j^2
    (1..=k as u128).fold(1, |acc, j| acc * (2 * j) * (2 * j - 1) / (j * j))
}

/// `out[L]` is the number of length-`L` walks from the root back to the root
/// of the `2n`-regular tree, for `L` in `0..=max_len`.
pub fn closed_walk_counts(pairs: usize, max_len: usize) -> Vec<u128> {
    let degree = 2 * pairs as u128;
    // ways[d]: walks of the current length ending at distance d
    let mut ways = vec![0u128; max_len + 2];
    ways[0] = 1;
    let mut out = vec![1u128];
    for _ in 0..max_len {
        let mut next = vec![0u128; max_len + 2];
        for d in 0..=max_len {
            let w = ways[d];
            if w == 0 {
                continue;
            }
            if d == 0 {
                next[1] += w * degree;
            } else {
                next[d - 1] += w;
                next[d + 1] += w * (degree - 1);
            }
        }
        ways = next;
        out.push(ways[0]);
    }
    out
}

/// Shortest one-sided word with the same image as `word` under `q`,
/// searching lengths `0, 2, 4, ..` up to `max_len`; ties go to the
/// lexicographically least word.
pub fn bfs_minimal_witness(
    q: &FiniteQuotient,
    word: &Word,
    max_len: usize,
) -> Result<Option<Word>> {
    if !is_two_sided_member(word) {
        let residual = crate::dyck::reduce_trace(word).residual().clone();
        return Err(Error::NotTwoSided { residual });
    }
    let target = q.evaluate(word);
    for len in (0..=max_len).step_by(2) {
        let found = for_each_one_sided_word(&q.alphabet(), len, |u| {
            if q.evaluate(u) == target {
                ControlFlow::Break(Word::from(u))
            } else {
                ControlFlow::Continue(())
            }
        });
        if let ControlFlow::Break(u) = found {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub max_length: usize,
    pub pairs: usize,
    pub words_checked: u128,
    pub members: u128,
    pub first_discrepancy: Option<Word>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

/// Checks two-sided membership against kernel membership for every word of
/// length at most `max_length`.
pub fn exhaustive_equivalence(
    alphabet: &PairedAlphabet,
    max_length: usize,
    cap: u128,
) -> Result<EquivalenceReport> {
    check_cap(alphabet, max_length, cap)?;
    let mut report = EquivalenceReport {
        max_length,
        pairs: alphabet.pair_count(),
        words_checked: 0,
        members: 0,
        first_discrepancy: None,
    };
    for length in 0..=max_length {
        for w in enumerate_words(alphabet, length, cap)? {
            let two_sided = is_two_sided_member(&w);
            report.words_checked += 1;
            report.members += two_sided as u128;
            if two_sided != kernel_member(&w) {
                report.first_discrepancy = Some(w);
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// The fixed quotient family used by the self-test and acceptance runs:
/// trivial, mod-2, cyclic-3, then seeds `1..=20` with degree `2 + seed % 4`.
pub fn quotient_suite(alphabet: PairedAlphabet) -> Vec<(String, FiniteQuotient)> {
    let mut suite = vec![
        ("trivial".to_string(), FiniteQuotient::trivial(alphabet)),
        ("mod-2".to_string(), FiniteQuotient::mod_two(alphabet)),
        (
            "cyclic-3".to_string(),
            FiniteQuotient::cyclic_three(alphabet),
        ),
    ];
    for seed in 1..=20u64 {
        let degree = 2 + (seed % 4) as usize;
        suite.push((
            format!("random(seed={seed},degree={degree})"),
            random_quotient(alphabet, degree, seed),
        ));
    }
    suite
}
