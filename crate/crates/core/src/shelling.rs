//! Edge labels on covers, the greedy increasing chain, decreasing-chain
//! counts and Möbius numbers.
//!
//! The label of a cover is the larger placement (in the lower element) of
//! the two blocks it merges. Every function here works on bare elements
//! and generates covers on demand with [`covers_up`]; the `*_indexed`
//! helpers run on a prebuilt [`OmegaLattice`] for exhaustive sweeps.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{covers_up, leq, OmegaLattice};
use crate::preorder::{Block, PermutationPreorder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel(pub usize);

impl EdgeLabel {
    pub fn value(self) -> usize {
        self.0
    }
}

/// A maximal chain `ω0 ⋖ ω1 ⋖ … ⋖ ωk` with its label word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledChain {
    pub elements: Vec<PermutationPreorder>,
    pub labels: Vec<EdgeLabel>,
}

impl LabeledChain {
    pub fn label_word(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.0).collect()
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] <= w[1])
    }
}

fn require_leq(bottom: &PermutationPreorder, top: &PermutationPreorder) -> Result<()> {
    if bottom.n() != top.n() {
        return Err(Error::SizeMismatch {
            expected: bottom.n(),
            found: top.n(),
        });
    }
    if !leq(bottom, top) {
        return Err(Error::NotComparable(bottom.to_string(), top.to_string()));
    }
    Ok(())
}

/// Block indices of `lower` (into its `block_order()`) merged in `upper`.
pub fn merged_pair(
    lower: &PermutationPreorder,
    upper: &PermutationPreorder,
) -> Result<(usize, usize)> {
    let not_cover = || Error::NotCover(lower.to_string(), upper.to_string());
    if lower.n() != upper.n() || !leq(lower, upper) || upper.rank() != lower.rank() + 1 {
        return Err(not_cover());
    }
    let bo = lower.block_order();
    let top_blocks = upper.block_order();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (b, block) in bo.blocks.iter().enumerate() {
        let target = top_blocks.block_of[block.min - 1];
        if let Some(&a) = seen.get(&target) {
            return Ok((a, b));
        }
        seen.insert(target, b);
    }
    Err(not_cover())
}

/// Label of the cover `lower ⋖ upper`.
pub fn edge_label(lower: &PermutationPreorder, upper: &PermutationPreorder) -> Result<EdgeLabel> {
    let (a, b) = merged_pair(lower, upper)?;
    let pl = lower.placements();
    Ok(EdgeLabel(pl[a].max(pl[b])))
}

/// Block index pairs `(a, b)`, `a < b`, of `w` that lie in one block of
/// `top` and are incomparable or related by a cover in `w`.
fn combinable_indices(w: &PermutationPreorder, top: &PermutationPreorder) -> Vec<(usize, usize)> {
    let bo = w.block_order();
    let top_bo = top.block_order();
    let k = bo.len();
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let same =
                top_bo.block_of[bo.blocks[a].min - 1] == top_bo.block_of[bo.blocks[b].min - 1];
            if same && bo.combinable(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// The pairs of blocks of `w` that some cover of `w` below `top` merges.
pub fn combinable_pairs(
    w: &PermutationPreorder,
    top: &PermutationPreorder,
) -> Result<Vec<(Block, Block)>> {
    require_leq(w, top)?;
    let bo = w.block_order();
    Ok(combinable_indices(w, top)
        .into_iter()
        .map(|(a, b)| (bo.blocks[a].clone(), bo.blocks[b].clone()))
        .collect())
}

/// Covers of `w` that stay below `top`.
fn covers_below(w: &PermutationPreorder, top: &PermutationPreorder) -> Vec<PermutationPreorder> {
    covers_up(w).into_iter().filter(|z| leq(z, top)).collect()
}

/// One greedy step: merge the combinable pair whose larger placement is
/// least. Both the pair and the resulting cover are unique.
fn greedy_step(
    w: &PermutationPreorder,
    top: &PermutationPreorder,
) -> (PermutationPreorder, EdgeLabel) {
    let pl = w.placements();
    let pairs = combinable_indices(w, top);
    let best = pairs
        .iter()
        .map(|&(a, b)| pl[a].max(pl[b]))
        .min()
        .expect("a strict interval has a combinable pair");
    let chosen: Vec<_> = pairs
        .into_iter()
        .filter(|&(a, b)| pl[a].max(pl[b]) == best)
        .collect();
    assert_eq!(
        chosen.len(),
        1,
        "minimal larger placement must be attained once at {w}"
    );
    let (a, b) = chosen[0];
    let covers: Vec<_> = covers_below(w, top)
        .into_iter()
        .filter(|z| {
            let (x, y) = merged_pair(w, z).expect("generated covers are covers");
            (x.min(y), x.max(y)) == (a, b)
        })
        .collect();
    assert_eq!(
        covers.len(),
        1,
        "the greedy merge must give exactly one cover of {w}"
    );
    (covers.into_iter().next().unwrap(), EdgeLabel(best))
}

/// The greedy maximal chain from `bottom` to `top`. Its label word is
/// weakly increasing and lexicographically least among maximal chains.
pub fn increasing_chain(
    bottom: &PermutationPreorder,
    top: &PermutationPreorder,
) -> Result<LabeledChain> {
    require_leq(bottom, top)?;
    let mut elements = vec![bottom.clone()];
    let mut labels = Vec::new();
    let mut cur = bottom.clone();
    while cur != *top {
        let (next, label) = greedy_step(&cur, top);
        labels.push(label);
        elements.push(next.clone());
        cur = next;
    }
    Ok(LabeledChain { elements, labels })
}

/// Number of maximal chains from `bottom` to `top` whose labels strictly
/// decrease. The empty chain of a trivial interval counts once.
pub fn count_decreasing_chains(
    bottom: &PermutationPreorder,
    top: &PermutationPreorder,
) -> Result<u64> {
    require_leq(bottom, top)?;
    let mut memo = HashMap::new();
    Ok(decreasing_from(bottom, usize::MAX, top, &mut memo))
}

fn decreasing_from(
    w: &PermutationPreorder,
    bound: usize,
    top: &PermutationPreorder,
    memo: &mut HashMap<(PermutationPreorder, usize), u64>,
) -> u64 {
    if w == top {
        return 1;
    }
    if let Some(&v) = memo.get(&(w.clone(), bound)) {
        return v;
    }
    let mut total = 0;
    for z in covers_below(w, top) {
        let label = edge_label(w, &z).expect("generated covers are covers").0;
        if label < bound {
            total += decreasing_from(&z, label, top, memo);
        }
    }
    memo.insert((w.clone(), bound), total);
    total
}

/// All elements of `[bottom, top]`, found by walking covers upward.
pub fn interval_elements(
    bottom: &PermutationPreorder,
    top: &PermutationPreorder,
) -> Result<Vec<PermutationPreorder>> {
    require_leq(bottom, top)?;
    let mut seen = std::collections::HashSet::new();
    let mut frontier = vec![bottom.clone()];
    seen.insert(bottom.clone());
    let mut out = Vec::new();
    while let Some(w) = frontier.pop() {
        for z in covers_below(&w, top) {
            if seen.insert(z.clone()) {
                frontier.push(z);
            }
        }
        out.push(w);
    }
    out.sort_by_key(|w| (w.rank(), w.to_permutation()));
    Ok(out)
}

/// Möbius number by the defining recursion
/// `μ(x, x) = 1`, `μ(x, y) = -Σ_{x <= z < y} μ(x, z)`.
pub fn mobius_by_recursion(bottom: &PermutationPreorder, top: &PermutationPreorder) -> Result<i64> {
    let members = interval_elements(bottom, top)?;
    let mut values: Vec<i64> = Vec::with_capacity(members.len());
    for (i, z) in members.iter().enumerate() {
        let v = if i == 0 {
            1
        } else {
            -(0..i)
                .filter(|&j| members[j] != *z && leq(&members[j], z))
                .map(|j| values[j])
                .sum::<i64>()
        };
        values.push(v);
    }
    let top_at = members
        .iter()
        .position(|z| z == top)
        .expect("top is in its interval");
    Ok(values[top_at])
}

/// `(-1)^(rank difference)` times the number of strictly decreasing
/// maximal chains.
pub fn mobius_by_chains(bottom: &PermutationPreorder, top: &PermutationPreorder) -> Result<i64> {
    let count = count_decreasing_chains(bottom, top)? as i64;
    let length = top.rank() - bottom.rank();
    Ok(if length.is_multiple_of(2) {
        count
    } else {
        -count
    })
}

/// Möbius number of `[bottom, top]`, computed from decreasing chains and
/// from the recursion. The two must agree.
pub fn mobius(bottom: &PermutationPreorder, top: &PermutationPreorder) -> Result<i64> {
    let chains = mobius_by_chains(bottom, top)?;
    let recursion = mobius_by_recursion(bottom, top)?;
    if chains != recursion {
        return Err(Error::MobiusMismatch {
            bottom: bottom.to_string(),
            top: top.to_string(),
            chains,
            recursion,
        });
    }
    Ok(chains)
}

/// For each step of the increasing chain, how many covers below `top`
/// reach the largest label available from that element.
pub fn max_label_multiplicities(
    bottom: &PermutationPreorder,
    top: &PermutationPreorder,
) -> Result<Vec<usize>> {
    let chain = increasing_chain(bottom, top)?;
    let steps = chain.elements.len().saturating_sub(1);
    Ok(chain.elements[..steps]
        .iter()
        .map(|w| {
            let labels: Vec<usize> = covers_below(w, top)
                .iter()
                .map(|z| edge_label(w, z).unwrap().0)
                .collect();
            let max = labels.iter().copied().max().unwrap_or(0);
            labels.iter().filter(|&&l| l == max).count()
        })
        .collect())
}

/// Labels of every Hasse edge of `lattice`, keyed by `(lower, upper)`.
pub fn hasse_labels(lattice: &OmegaLattice) -> HashMap<(usize, usize), usize> {
    lattice
        .hasse_edges()
        .into_iter()
        .map(|(a, b)| {
            let label = edge_label(lattice.element(a), lattice.element(b))
                .expect("Hasse edges are covers")
                .0;
            ((a, b), label)
        })
        .collect()
}

/// Every maximal chain of `[bottom, top]` as `(elements, label word)`.
pub fn maximal_chains_indexed(
    lattice: &OmegaLattice,
    labels: &HashMap<(usize, usize), usize>,
    bottom: usize,
    top: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut path = vec![bottom];
    let mut word = Vec::new();
    walk_chains(lattice, labels, top, &mut path, &mut word, &mut out);
    out
}

fn walk_chains(
    lattice: &OmegaLattice,
    labels: &HashMap<(usize, usize), usize>,
    top: usize,
    path: &mut Vec<usize>,
    word: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    let cur = *path.last().unwrap();
    if cur == top {
        out.push((path.clone(), word.clone()));
        return;
    }
    for &z in lattice.upper_covers(cur) {
        if lattice.leq(z, top) {
            path.push(z);
            word.push(labels[&(cur, z)]);
            walk_chains(lattice, labels, top, path, word, out);
            path.pop();
            word.pop();
        }
    }
}

/// Strictly decreasing maximal chains of `[bottom, top]` on a built lattice.
pub fn count_decreasing_indexed(
    lattice: &OmegaLattice,
    labels: &HashMap<(usize, usize), usize>,
    bottom: usize,
    top: usize,
) -> u64 {
    fn go(
        l: &OmegaLattice,
        labels: &HashMap<(usize, usize), usize>,
        x: usize,
        bound: usize,
        top: usize,
        memo: &mut HashMap<(usize, usize), u64>,
    ) -> u64 {
        if x == top {
            return 1;
        }
        if let Some(&v) = memo.get(&(x, bound)) {
            return v;
        }
        let mut total = 0;
        for &z in l.upper_covers(x) {
            let label = labels[&(x, z)];
            if label < bound && l.leq(z, top) {
                total += go(l, labels, z, label, top, memo);
            }
        }
        memo.insert((x, bound), total);
        total
    }
    go(
        lattice,
        labels,
        bottom,
        usize::MAX,
        top,
        &mut HashMap::new(),
    )
}

/// `μ(bottom, z)` for every `z` by the recursion; zero where `z` is not
/// above `bottom`.
pub fn mobius_row_indexed(lattice: &OmegaLattice, bottom: usize) -> Vec<i64> {
    let mut order: Vec<usize> = (0..lattice.len())
        .filter(|&z| lattice.leq(bottom, z))
        .collect();
    order.sort_by_key(|&z| lattice.rank(z));
    let mut row = vec![0i64; lattice.len()];
    for (i, &z) in order.iter().enumerate() {
        row[z] = if z == bottom {
            1
        } else {
            -order[..i]
                .iter()
                .filter(|&&y| lattice.leq(y, z))
                .map(|&y| row[y])
                .sum::<i64>()
        };
    }
    row
}
