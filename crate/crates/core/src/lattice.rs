//! The shard intersection order on `S_n`: permutation pre-orders ordered
//! by containment of relations.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::preorder::{mu, PermutationPreorder, Preorder};

/// Largest `n` for which the whole lattice is built unless forced.
pub const DEFAULT_CAP: usize = 7;

/// `a <=_S b`: relation containment.
pub fn leq(a: &PermutationPreorder, b: &PermutationPreorder) -> bool {
    a.is_subrelation_of(b)
}

/// Join: transitive closure of the union of relations.
///
/// Panics if the closure leaves the lattice, which would mean the
/// underlying cone intersection has no pre-order model.
pub fn join(a: &PermutationPreorder, b: &PermutationPreorder) -> PermutationPreorder {
    let q = a.union(b);
    match PermutationPreorder::new(q) {
        Ok(w) => w,
        Err(e) => panic!("join of {a} and {b} left the lattice: {e}"),
    }
}

/// Meet: the greatest common lower bound, found by scanning `μ(S_n)`.
pub fn meet(a: &PermutationPreorder, b: &PermutationPreorder) -> PermutationPreorder {
    assert_eq!(a.n(), b.n());
    let lower: Vec<PermutationPreorder> = Permutation::all(a.n())
        .map(|p| mu(&p))
        .filter(|w| leq(w, a) && leq(w, b))
        .collect();
    let best = lower
        .iter()
        .max_by_key(|w| w.rank())
        .expect("the bottom element is always a lower bound");
    assert!(
        lower.iter().all(|w| leq(w, best)),
        "common lower bounds of {a} and {b} have no maximum"
    );
    best.clone()
}

/// Every element covering `w`, generated by merging a combinable pair of
/// blocks and then orienting each newly overlapping incomparable pair
/// both ways.
pub fn covers_up(w: &PermutationPreorder) -> Vec<PermutationPreorder> {
    let bo = w.block_order();
    let k = bo.len();
    let mut found: HashSet<Preorder> = HashSet::new();
    for a in 0..k {
        for b in a + 1..k {
            if !bo.combinable(a, b) {
                continue;
            }
            let mut q = w.as_preorder().clone();
            let (x, y) = (bo.blocks[a].min, bo.blocks[b].min);
            q.add(x, y);
            q.add(y, x);
            complete_cover(q, k - 1, &mut found);
        }
    }
    let mut out: Vec<PermutationPreorder> = found
        .into_iter()
        .map(PermutationPreorder::new_unchecked)
        .collect();
    out.sort_by_cached_key(|w| w.to_permutation());
    out
}

fn complete_cover(q: Preorder, target_blocks: usize, found: &mut HashSet<Preorder>) {
    if q.block_count() != target_blocks {
        return;
    }
    let bo = q.block_order();
    let k = bo.len();
    let pending = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .find(|&(a, b)| bo.overlap(a, b) && !bo.comparable(a, b));
    match pending {
        None => {
            if bo.validate().is_ok() {
                found.insert(q);
            }
        }
        Some((a, b)) => {
            let (x, y) = (bo.blocks[a].min, bo.blocks[b].min);
            let mut up = q.clone();
            up.add(x, y);
            complete_cover(up, target_blocks, found);
            let mut down = q;
            down.add(y, x);
            complete_cover(down, target_blocks, found);
        }
    }
}

/// Fixed-width bit set over lattice indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 != 0
    }
    fn and_count(&self, other: &Bits) -> u32 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 != 0)
                .map(move |b| w * 64 + b)
        })
    }
}

/// The whole lattice `(Ω, <=_S)` for one `n`, built by enumeration.
///
/// Elements are indexed by the lexicographic order of `λ(ω)`, so index
/// `i` is the `i`-th permutation of `S_n` in lex order.
#[derive(Clone, Debug)]
pub struct OmegaLattice {
    n: usize,
    perms: Vec<Permutation>,
    elements: Vec<PermutationPreorder>,
    index: HashMap<PermutationPreorder, usize>,
    ranks: Vec<usize>,
    up: Vec<Bits>,
    down: Vec<Bits>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

/// Builds the lattice for `n <= DEFAULT_CAP`.
pub fn build_lattice(n: usize) -> Result<OmegaLattice> {
    build_lattice_capped(n, DEFAULT_CAP)
}

pub fn build_lattice_capped(n: usize, cap: usize) -> Result<OmegaLattice> {
    if n > cap {
        return Err(Error::SizeCap { n, cap });
    }
    if n == 0 {
        return Err(Error::InvalidPermutation("n must be positive".into()));
    }
    Ok(OmegaLattice::build(n))
}

impl OmegaLattice {
    fn build(n: usize) -> Self {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let elements: Vec<PermutationPreorder> = perms.par_iter().map(mu).collect();
        let len = elements.len();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let ranks = elements.iter().map(|w| w.rank()).collect();

        let up: Vec<Bits> = elements
            .par_iter()
            .map(|a| {
                let mut row = Bits::new(len);
                for (j, b) in elements.iter().enumerate() {
                    if leq(a, b) {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        let mut down = vec![Bits::new(len); len];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].set(i);
            }
        }

        // a ⋖ b iff a < b and the closed interval [a, b] holds only a and b.
        let upper_covers: Vec<Vec<usize>> = (0..len)
            .into_par_iter()
            .map(|a| {
                up[a]
                    .iter()
                    .filter(|&b| b != a && up[a].and_count(&down[b]) == 2)
                    .collect()
            })
            .collect();
        let mut lower_covers = vec![Vec::new(); len];
        for (a, ups) in upper_covers.iter().enumerate() {
            for &b in ups {
                lower_covers[b].push(a);
            }
        }

        Self {
            n,
            perms,
            elements,
            index,
            ranks,
            up,
            down,
            upper_covers,
            lower_covers,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &PermutationPreorder {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[PermutationPreorder] {
        &self.elements
    }

    /// `λ` of element `i`.
    pub fn permutation(&self, i: usize) -> &Permutation {
        &self.perms[i]
    }

    pub fn index_of(&self, w: &PermutationPreorder) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn index_of_permutation(&self, p: &Permutation) -> Option<usize> {
        (p.n() == self.n).then(|| self.index_of(&mu(p))).flatten()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].get(b)
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// All Hasse edges `(lower, upper)`, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.upper_covers
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.upper_covers[self.bottom()].clone()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.lower_covers[self.top()].clone()
    }

    /// Least upper bound of `a` and `b`, if one exists.
    pub fn try_join(&self, a: usize, b: usize) -> Option<usize> {
        let common = self.up[a].and(&self.up[b]);
        let found = common.iter().find(|&z| common.is_subset(&self.up[z]));
        found
    }

    /// Greatest lower bound of `a` and `b`, if one exists.
    pub fn try_meet(&self, a: usize, b: usize) -> Option<usize> {
        let common = self.down[a].and(&self.down[b]);
        let found = common.iter().find(|&z| common.is_subset(&self.down[z]));
        found
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.try_join(a, b).expect("a finite lattice has all joins")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.try_meet(a, b).expect("a finite lattice has all meets")
    }

    /// Elements `z` with `bottom <= z <= top`, in index order.
    pub fn interval(&self, bottom: usize, top: usize) -> Result<Interval> {
        if !self.leq(bottom, top) {
            return Err(Error::NotComparable(
                self.perms[bottom].to_string(),
                self.perms[top].to_string(),
            ));
        }
        let members: Vec<usize> = self.up[bottom].and(&self.down[top]).iter().collect();
        let inside: HashSet<usize> = members.iter().copied().collect();
        let edges = members
            .iter()
            .flat_map(|&a| {
                self.upper_covers[a]
                    .iter()
                    .filter(|b| inside.contains(b))
                    .map(move |&b| (a, b))
            })
            .collect();
        Ok(Interval {
            bottom,
            top,
            members,
            edges,
        })
    }

    /// Every comparable pair `(a, b)` with `a <= b`.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.up[a].iter().map(move |b| (a, b)))
            .collect()
    }
}

/// A closed interval of an [`OmegaLattice`], by element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub bottom: usize,
    pub top: usize,
    pub members: Vec<usize>,
    /// Hasse edges with both ends inside.
    pub edges: Vec<(usize, usize)>,
}
