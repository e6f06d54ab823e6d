//! Permutations in one-line notation and the statistics the rest of the
//! crate is built on: inversions, descents, descending runs, barred
//! patterns and indecomposability.
//!
//! Values are 1-based everywhere in the public surface.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::sortable::{Bar, Barring};

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Self { word })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            word: (1..=n).collect(),
        }
    }

    /// The longest element `n n-1 ... 1`.
    pub fn reversal(n: usize) -> Self {
        Self {
            word: (1..=n).rev().collect(),
        }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(|word| Permutation { word })
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// 0-based position of every value: `positions()[v - 1]`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            pos[v - 1] = i;
        }
        pos
    }

    /// Pairs `(π_i, π_j)` with `i < j` and `π_i > π_j`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let w = &self.word;
        let mut out = Vec::new();
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    out.push((w[i], w[j]));
                }
            }
        }
        out
    }

    pub fn descents(&self) -> Vec<(usize, usize)> {
        self.word
            .windows(2)
            .filter(|p| p[0] > p[1])
            .map(|p| (p[0], p[1]))
            .collect()
    }

    pub fn descending_runs(&self) -> Vec<DescendingRun> {
        let w = &self.word;
        let mut runs = Vec::new();
        let mut start = 0;
        for i in 1..=w.len() {
            if i == w.len() || w[i] > w[i - 1] {
                runs.push(DescendingRun {
                    values: w[start..i].to_vec(),
                    start,
                    end: i - 1,
                });
                start = i;
            }
        }
        runs
    }

    /// Whether `self` contains the given barred pattern under `barring`.
    pub fn contains_barred_pattern(&self, pattern: BarredPattern, barring: &Barring) -> bool {
        !self.barred_pattern_instances(pattern, barring).is_empty()
    }

    /// Every occurrence of `pattern`, as value triples read left to right.
    ///
    /// Brute force over index triples.
    pub fn barred_pattern_instances(
        &self,
        pattern: BarredPattern,
        barring: &Barring,
    ) -> Vec<[usize; 3]> {
        let w = &self.word;
        let n = w.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (w[i], w[j], w[k]);
                    let hit = match pattern {
                        // 231 with the "2" (first entry) upper-barred
                        BarredPattern::Bar2_31 => {
                            z < x && x < y && barring.bar(x) == Some(Bar::Upper)
                        }
                        // 312 with the "2" (last entry) lower-barred
                        BarredPattern::Bar31_2 => {
                            y < z && z < x && barring.bar(z) == Some(Bar::Lower)
                        }
                    };
                    if hit {
                        out.push([x, y, z]);
                    }
                }
            }
        }
        out
    }

    /// No proper prefix of the word is a permutation of `{1, …, k}`.
    pub fn is_indecomposable(&self) -> bool {
        let mut max = 0;
        for (i, &v) in self.word.iter().enumerate() {
            max = max.max(v);
            if max == i + 1 && i + 1 < self.n() {
                return false;
            }
        }
        true
    }
}

/// A maximal strictly decreasing factor of a permutation word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendingRun {
    pub values: Vec<usize>,
    /// 0-based positions in the word, inclusive.
    pub start: usize,
    pub end: usize,
}

impl DescendingRun {
    pub fn min(&self) -> usize {
        *self.values.last().expect("runs are nonempty")
    }

    pub fn max(&self) -> usize {
        self.values[0]
    }

    pub fn interval(&self) -> (usize, usize) {
        (self.min(), self.max())
    }
}

/// The two barred patterns that characterise c-sortability in type A.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarredPattern {
    /// `2̄31`
    Bar2_31,
    /// `31 2̲`
    Bar31_2,
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.word.iter().join(","))
        }
    }
}
