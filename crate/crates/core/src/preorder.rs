//! Pre-orders on `[n]`, their blocks, and the permutation pre-orders that
//! model shard intersections in type A.
//!
//! A [`Preorder`] stores its relation densely, one `u64` bit row per
//! element, so `n <= 64`. Row `i` has bit `j` set when `i+1 ⪯ j+1`.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const MAX_N: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preorder {
    n: usize,
    rows: Vec<u64>,
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

impl Preorder {
    /// The equality relation: every element alone and nothing comparable.
    pub fn equality(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "n must lie in 1..={MAX_N}");
        Self {
            n,
            rows: (0..n).map(bit).collect(),
        }
    }

    /// The complete relation: one block holding all of `[n]`.
    pub fn full(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "n must lie in 1..={MAX_N}");
        let all = if n == 64 { u64::MAX } else { bit(n) - 1 };
        Self {
            n,
            rows: vec![all; n],
        }
    }

    /// Reflexive-transitive closure of the given 1-based pairs `a ⪯ b`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::InvalidPreorder(format!(
                "n = {n} outside 1..={MAX_N}"
            )));
        }
        let mut q = Self::equality(n);
        for (a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidPreorder(format!(
                    "pair ({a}, {b}) outside [{n}]"
                )));
            }
            q.rows[a - 1] |= bit(b - 1);
        }
        q.close();
        Ok(q)
    }

    /// Builds from raw rows, reflexively and transitively closing them.
    pub fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        assert_eq!(rows.len(), n);
        let mut q = Self { n, rows };
        for i in 0..n {
            q.rows[i] |= bit(i);
        }
        q.close();
        q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// `a ⪯ b`, 1-based.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.rows[a - 1] & bit(b - 1) != 0
    }

    /// Adds `a ⪯ b` (1-based) and recloses.
    pub fn add(&mut self, a: usize, b: usize) {
        self.rows[a - 1] |= bit(b - 1);
        self.close();
    }

    /// Relation containment: every pair of `self` is a pair of `other`.
    pub fn is_subrelation_of(&self, other: &Preorder) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Preorder) -> Preorder {
        assert_eq!(self.n, other.n);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a | b)
            .collect();
        Preorder::from_rows(self.n, rows)
    }

    /// Number of ordered pairs in the relation, reflexive ones included.
    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    // Warshall on bit rows.
    fn close(&mut self) {
        for k in 0..self.n {
            let rk = self.rows[k];
            for i in 0..self.n {
                if self.rows[i] & bit(k) != 0 {
                    self.rows[i] |= rk;
                }
            }
        }
    }

    pub fn block_count(&self) -> usize {
        let mut seen = 0u64;
        let mut count = 0;
        for i in 0..self.n {
            if seen & bit(i) == 0 {
                seen |= self.class_mask(i);
                count += 1;
            }
        }
        count
    }

    fn class_mask(&self, i: usize) -> u64 {
        let mut m = 0;
        for j in 0..self.n {
            if self.rows[i] & bit(j) != 0 && self.rows[j] & bit(i) != 0 {
                m |= bit(j);
            }
        }
        m
    }

    /// Blocks and the induced partial order on them.
    pub fn block_order(&self) -> BlockOrder {
        let n = self.n;
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for i in 0..n {
            if block_of[i] != usize::MAX {
                continue;
            }
            let mask = self.class_mask(i);
            let members: Vec<usize> = (0..n)
                .filter(|&j| mask & bit(j) != 0)
                .map(|j| j + 1)
                .collect();
            for &m in &members {
                block_of[m - 1] = blocks.len();
            }
            blocks.push(Block::new(members));
        }
        let k = blocks.len();
        let mut above = vec![0u64; k];
        for (a, block) in blocks.iter().enumerate() {
            let row = self.rows[block.min - 1];
            for (b, other) in blocks.iter().enumerate() {
                if a != b && row & bit(other.min - 1) != 0 {
                    above[a] |= bit(b);
                }
            }
        }
        BlockOrder {
            blocks,
            block_of,
            above,
        }
    }

    /// Checks (P1) and (P2).
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        self.block_order().validate()
    }

    pub fn is_permutation_preorder(&self) -> bool {
        self.validate().is_ok()
    }
}

impl fmt::Display for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bo = self.block_order();
        let names: Vec<String> = bo.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "blocks {}", names.join(" "))?;
        let covers = bo.cover_pairs();
        if !covers.is_empty() {
            write!(f, "; covers")?;
            for (a, b) in covers {
                write!(f, " {}<{}", names[a], names[b])?;
            }
        }
        Ok(())
    }
}

/// An equivalence class of `i ⪯ j ⪯ i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    /// Ascending.
    pub members: Vec<usize>,
    pub min: usize,
    pub max: usize,
}

impl Block {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        let min = members[0];
        let max = *members.last().unwrap();
        Self { members, min, max }
    }

    pub fn interval(&self) -> (usize, usize) {
        (self.min, self.max)
    }

    pub fn overlaps(&self, other: &Block) -> bool {
        self.min <= other.max && other.min <= self.max
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

/// Blocks of a pre-order (sorted by least member) with the partial order
/// they inherit.
#[derive(Clone, Debug)]
pub struct BlockOrder {
    pub blocks: Vec<Block>,
    /// `block_of[v - 1]` is the index of `B(v)`.
    pub block_of: Vec<usize>,
    above: Vec<u64>,
}

impl BlockOrder {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Strict `a ≺ b` between block indices.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a] & bit(b) != 0
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b) || self.less(b, a)
    }

    /// `a ⋖ b`.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.less(a, b) && self.above[a] & !bit(b) & self.below_mask(b) == 0
    }

    fn below_mask(&self, b: usize) -> u64 {
        (0..self.len())
            .filter(|&x| self.less(x, b))
            .fold(0, |m, x| m | bit(x))
    }

    /// Incomparable, or related by a cover: the pairs that can be merged
    /// when going up by a cover.
    pub fn combinable(&self, a: usize, b: usize) -> bool {
        a != b && (!self.comparable(a, b) || self.covers(a, b) || self.covers(b, a))
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        let mut out = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn overlap(&self, a: usize, b: usize) -> bool {
        self.blocks[a].overlaps(&self.blocks[b])
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let k = self.len();
        for a in 0..k {
            for b in a + 1..k {
                if self.overlap(a, b) && !self.comparable(a, b) {
                    return Err(Violation {
                        axiom: Axiom::P1,
                        lower: self.blocks[a].members.clone(),
                        upper: self.blocks[b].members.clone(),
                    });
                }
            }
        }
        for (a, b) in self.cover_pairs() {
            if !self.overlap(a, b) {
                return Err(Violation {
                    axiom: Axiom::P2,
                    lower: self.blocks[a].members.clone(),
                    upper: self.blocks[b].members.clone(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// Overlapping blocks must be comparable.
    P1,
    /// Covers must join overlapping blocks.
    P2,
}

/// Which axiom failed and on which pair of blocks. For `P2` the pair is a
/// cover `lower ⋖ upper`; for `P1` the two blocks are incomparable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            Axiom::P1 => write!(
                f,
                "(P1) overlapping blocks {:?} and {:?} are incomparable",
                self.lower, self.upper
            ),
            Axiom::P2 => write!(
                f,
                "(P2) cover {:?} < {:?} joins blocks with disjoint intervals",
                self.lower, self.upper
            ),
        }
    }
}

/// A pre-order satisfying (P1) and (P2): an element of the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationPreorder(Preorder);

impl PermutationPreorder {
    pub fn new(q: Preorder) -> Result<Self> {
        q.validate().map_err(Error::NotPermutationPreorder)?;
        Ok(Self(q))
    }

    pub(crate) fn new_unchecked(q: Preorder) -> Self {
        debug_assert!(q.is_permutation_preorder());
        Self(q)
    }

    /// The bottom element: all singletons, nothing related.
    pub fn bottom(n: usize) -> Self {
        Self(Preorder::equality(n))
    }

    /// The top element: a single block.
    pub fn top(n: usize) -> Self {
        Self(Preorder::full(n))
    }

    pub fn as_preorder(&self) -> &Preorder {
        &self.0
    }

    pub fn into_preorder(self) -> Preorder {
        self.0
    }

    /// Rank in the lattice: `n - |blocks|`.
    pub fn rank(&self) -> usize {
        self.n() - self.block_count()
    }

    /// Block indices (into `block_order().blocks`) listed left to right as
    /// their descending runs appear in `λ(self)`.
    pub fn block_sequence(&self) -> Vec<usize> {
        block_sequence(&self.block_order())
    }

    /// `λ(self)`, the inverse of [`mu`].
    pub fn to_permutation(&self) -> Permutation {
        lambda(self)
    }

    /// Placement of every block, aligned with `block_order().blocks`.
    pub fn placements(&self) -> Vec<usize> {
        placements_of(&self.block_order())
    }
}

impl Deref for PermutationPreorder {
    type Target = Preorder;
    fn deref(&self) -> &Preorder {
        &self.0
    }
}

impl TryFrom<Preorder> for PermutationPreorder {
    type Error = Error;
    fn try_from(q: Preorder) -> Result<Self> {
        Self::new(q)
    }
}

impl fmt::Display for PermutationPreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", lambda(self))
    }
}

/// `μ`: descending runs become blocks; when two runs overlap, the one on
/// the right is the greater block.
pub fn mu(p: &Permutation) -> PermutationPreorder {
    let runs = p.descending_runs();
    let mut pairs = Vec::new();
    for run in &runs {
        for w in run.values.windows(2) {
            pairs.push((w[0], w[1]));
            pairs.push((w[1], w[0]));
        }
    }
    for (x, left) in runs.iter().enumerate() {
        for right in &runs[x + 1..] {
            let (a, b) = (left.interval(), right.interval());
            if a.0 <= b.1 && b.0 <= a.1 {
                pairs.push((left.values[0], right.values[0]));
            }
        }
    }
    let q = Preorder::from_pairs(p.n(), pairs).expect("values lie in [n]");
    PermutationPreorder::new_unchecked(q)
}

/// Left-to-right order of blocks in `λ`. Comparable blocks follow the
/// order, incomparable ones their position on the line.
///
/// Panics if the resulting tournament is not transitive, which cannot
/// happen for a permutation pre-order.
pub(crate) fn block_sequence(bo: &BlockOrder) -> Vec<usize> {
    let k = bo.len();
    let before = |a: usize, b: usize| {
        if bo.less(a, b) {
            true
        } else if bo.less(b, a) {
            false
        } else {
            bo.blocks[a].max < bo.blocks[b].min
        }
    };
    let wins: Vec<usize> = (0..k)
        .map(|a| (0..k).filter(|&b| a != b && before(a, b)).count())
        .collect();
    let mut seq: Vec<usize> = (0..k).collect();
    seq.sort_by_key(|&a| std::cmp::Reverse(wins[a]));
    // A tournament is transitive iff its scores are k-1, k-2, ..., 0.
    for (pos, &a) in seq.iter().enumerate() {
        assert_eq!(
            wins[a],
            k - 1 - pos,
            "block order of a permutation pre-order must be total"
        );
    }
    seq
}

fn placements_of(bo: &BlockOrder) -> Vec<usize> {
    let mut pl = vec![0; bo.len()];
    for (pos, b) in block_sequence(bo).into_iter().enumerate() {
        pl[b] = pos + 1;
    }
    pl
}

/// `λ`: each block becomes a descending run, runs ordered by
/// [`PermutationPreorder::block_sequence`].
pub fn lambda(w: &PermutationPreorder) -> Permutation {
    let bo = w.block_order();
    let mut word = Vec::with_capacity(w.n());
    for b in block_sequence(&bo) {
        word.extend(bo.blocks[b].members.iter().rev());
    }
    Permutation::new(word).expect("blocks partition [n]")
}

/// `λ` on an unvalidated pre-order; rejects anything outside the lattice.
pub fn lambda_checked(q: &Preorder) -> Result<Permutation> {
    let w = PermutationPreorder::new(q.clone())?;
    Ok(lambda(&w))
}

/// Placement of every block, aligned with `block_order().blocks`.
pub fn placements(w: &PermutationPreorder) -> Vec<usize> {
    w.placements()
}
