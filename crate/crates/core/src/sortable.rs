//! Coxeter elements of `S_n`, the barring and cycle they induce,
//! c-sortable permutations and noncrossing pre-orders.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::{BarredPattern, Permutation};
use crate::preorder::{mu, Block, PermutationPreorder, Preorder};

/// A product of the simple generators `s_1, …, s_{n-1}`, each once,
/// stored as the sequence of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterElement {
    n: usize,
    word: Vec<usize>,
}

impl CoxeterElement {
    pub fn new(n: usize, word: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCoxeter("n must be positive".into()));
        }
        let mut sorted = word.clone();
        sorted.sort_unstable();
        if sorted != (1..n).collect::<Vec<_>>() {
            return Err(Error::InvalidCoxeter(format!(
                "word {word:?} must use each of 1..{} exactly once",
                n - 1
            )));
        }
        Ok(Self { n, word })
    }

    /// `s_1 s_2 … s_{n-1}`: every entry lower-barred.
    pub fn ascending(n: usize) -> Self {
        Self {
            n,
            word: (1..n).collect(),
        }
    }

    /// `s_{n-1} … s_1`: every entry upper-barred.
    pub fn descending(n: usize) -> Self {
        Self {
            n,
            word: (1..n).rev().collect(),
        }
    }

    /// All `(n-1)!` Coxeter words of `S_n`.
    pub fn all(n: usize) -> impl Iterator<Item = CoxeterElement> {
        (1..n)
            .permutations(n.saturating_sub(1))
            .map(move |word| CoxeterElement { n, word })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn barring(&self) -> Barring {
        let mut pos = vec![0; self.n];
        for (at, &s) in self.word.iter().enumerate() {
            pos[s] = at;
        }
        let bars = (2..self.n)
            .map(|i| {
                if pos[i - 1] < pos[i] {
                    Bar::Lower
                } else {
                    Bar::Upper
                }
            })
            .collect();
        Barring { n: self.n, bars }
    }

    pub fn cycle(&self) -> CycleOrder {
        self.barring().cycle()
    }
}

/// Parses `"2,1,3"` as `s_2 s_1 s_3`; `n` is one more than the word length.
impl FromStr for CoxeterElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<usize> = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::InvalidCoxeter(format!("bad generator {t:?}")))
                })
                .collect::<Result<_>>()?
        };
        CoxeterElement::new(word.len() + 1, word)
    }
}

impl fmt::Display for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word.iter().join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bar {
    Lower,
    Upper,
}

/// Bars on `2, …, n-1`. The values `1` and `n` carry none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Barring {
    n: usize,
    bars: Vec<Bar>,
}

impl Barring {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bar(&self, v: usize) -> Option<Bar> {
        (v >= 2 && v < self.n).then(|| self.bars[v - 2])
    }

    pub fn lower(&self) -> Vec<usize> {
        (2..self.n)
            .filter(|&v| self.bar(v) == Some(Bar::Lower))
            .collect()
    }

    pub fn upper(&self) -> Vec<usize> {
        (2..self.n)
            .filter(|&v| self.bar(v) == Some(Bar::Upper))
            .collect()
    }

    /// `1`, the lower-barred values ascending, `n`, then the upper-barred
    /// values descending.
    pub fn cycle(&self) -> CycleOrder {
        let mut cycle = vec![1];
        cycle.extend(self.lower());
        if self.n > 1 {
            cycle.push(self.n);
        }
        cycle.extend(self.upper().into_iter().rev());
        CycleOrder { cycle }
    }
}

/// `[n]` arranged clockwise on a circle, starting at `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleOrder {
    pub cycle: Vec<usize>,
}

impl CycleOrder {
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.cycle.len()];
        for (at, &v) in self.cycle.iter().enumerate() {
            pos[v - 1] = at;
        }
        pos
    }

    /// Whether two disjoint blocks interleave around the circle, i.e. some
    /// `a, b` in one and `x, y` in the other appear in cyclic order
    /// `a, x, b, y`.
    pub fn crosses(&self, first: &[usize], second: &[usize]) -> bool {
        let pos = self.positions();
        let mut tagged: Vec<(usize, bool)> = first
            .iter()
            .map(|&v| (pos[v - 1], true))
            .chain(second.iter().map(|&v| (pos[v - 1], false)))
            .collect();
        tagged.sort_unstable();
        // Walking around the circle, non-crossing blocks switch owner at
        // most twice.
        let switches = tagged
            .iter()
            .zip(tagged.iter().cycle().skip(1))
            .filter(|(a, b)| a.1 != b.1)
            .count();
        switches > 2
    }
}

impl fmt::Display for CycleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.cycle.iter().join(" "))
    }
}

fn check_n(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::SizeMismatch { expected, found });
    }
    Ok(())
}

/// `p` avoids both `2̄31` and `31 2̲` for the barring of `c`.
pub fn is_c_sortable(p: &Permutation, c: &CoxeterElement) -> Result<bool> {
    check_n(c.n(), p.n())?;
    let barring = c.barring();
    Ok(!p.contains_barred_pattern(BarredPattern::Bar2_31, &barring)
        && !p.contains_barred_pattern(BarredPattern::Bar31_2, &barring))
}

/// All c-sortable permutations, in lexicographic order.
pub fn c_sortables(c: &CoxeterElement) -> Vec<Permutation> {
    Permutation::all(c.n())
        .filter(|p| is_c_sortable(p, c).expect("same n"))
        .collect()
}

/// Whether no two blocks cross on the cycle of `c`.
pub fn is_noncrossing_partition(blocks: &[Vec<usize>], c: &CoxeterElement) -> bool {
    let cycle = c.cycle();
    blocks
        .iter()
        .tuple_combinations()
        .all(|(a, b)| !cycle.crosses(a, b))
}

/// Orientation that condition (2) demands between two overlapping blocks:
/// `Some(true)` for `first ≺ second`, `Some(false)` for `second ≺ first`,
/// `None` when neither has an entry strictly inside the other's interval.
/// Conflicting witnesses are an error.
fn demanded_orientation(first: &Block, second: &Block, barring: &Barring) -> Result<Option<bool>> {
    let mut verdicts = Vec::new();
    // entries of `inner` strictly inside `outer`'s interval
    for (outer, inner, outer_is_first) in [(first, second, true), (second, first, false)] {
        for &x in &inner.members {
            if outer.min < x && x < outer.max {
                // upper-barred x: outer ≺ inner; lower-barred: inner ≺ outer
                let outer_below = match barring.bar(x) {
                    Some(Bar::Upper) => true,
                    Some(Bar::Lower) => false,
                    None => unreachable!("1 and n are never strictly inside an interval"),
                };
                verdicts.push(outer_below == outer_is_first);
            }
        }
    }
    match verdicts.split_first() {
        None => Ok(None),
        Some((&v, rest)) if rest.iter().all(|&r| r == v) => Ok(Some(v)),
        Some(_) => Err(Error::ConflictingOrientation(
            first.members.clone(),
            second.members.clone(),
        )),
    }
}

/// Conditions (1) and (2): the blocks of `w` are c-noncrossing, and every
/// overlapping pair is oriented as the bars of its inside entries demand.
pub fn is_noncrossing_preorder(w: &PermutationPreorder, c: &CoxeterElement) -> Result<bool> {
    check_n(c.n(), w.n())?;
    let bo = w.block_order();
    let members: Vec<Vec<usize>> = bo.blocks.iter().map(|b| b.members.clone()).collect();
    if !is_noncrossing_partition(&members, c) {
        return Ok(false);
    }
    let barring = c.barring();
    for a in 0..bo.len() {
        for b in a + 1..bo.len() {
            if !bo.overlap(a, b) {
                continue;
            }
            match demanded_orientation(&bo.blocks[a], &bo.blocks[b], &barring)? {
                Some(true) if !bo.less(a, b) => return Ok(false),
                Some(false) if !bo.less(b, a) => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

/// All noncrossing pre-orders for `c`, found by scanning `μ(S_n)`.
pub fn noncrossing_preorders(c: &CoxeterElement) -> Result<Vec<PermutationPreorder>> {
    let mut out = Vec::new();
    for p in Permutation::all(c.n()) {
        let w = mu(&p);
        if is_noncrossing_preorder(&w, c)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// The unique noncrossing pre-order whose blocks are `blocks`.
pub fn noncrossing_order_of_partition(
    blocks: &[Vec<usize>],
    c: &CoxeterElement,
) -> Result<PermutationPreorder> {
    let n = c.n();
    let mut seen = vec![false; n];
    for b in blocks {
        if b.is_empty() {
            return Err(Error::Parse("empty block".into()));
        }
        for &v in b {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Parse(format!(
                    "blocks do not partition [{n}] (entry {v})"
                )));
            }
            seen[v - 1] = true;
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::Parse(format!(
            "blocks do not partition [{n}] ({} missing)",
            v + 1
        )));
    }
    if !is_noncrossing_partition(blocks, c) {
        return Err(Error::Crossing(format!(
            "{blocks:?} on cycle {}",
            c.cycle()
        )));
    }

    let blocks: Vec<Block> = blocks.iter().map(|b| Block::new(b.clone())).collect();
    let barring = c.barring();
    let mut pairs = Vec::new();
    for b in &blocks {
        for w in b.members.windows(2) {
            pairs.push((w[0], w[1]));
            pairs.push((w[1], w[0]));
        }
    }
    for (x, y) in blocks.iter().tuple_combinations() {
        if !x.overlaps(y) {
            continue;
        }
        match demanded_orientation(x, y, &barring)? {
            Some(true) => pairs.push((x.min, y.min)),
            Some(false) => pairs.push((y.min, x.min)),
            None => unreachable!("overlapping blocks always have an inside entry"),
        }
    }
    let q = Preorder::from_pairs(n, pairs)?;
    assert_eq!(
        q.block_count(),
        blocks.len(),
        "orientation demands of a noncrossing partition must be acyclic"
    );
    PermutationPreorder::new(q)
}
