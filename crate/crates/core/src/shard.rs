//! Shards of the braid arrangement, kept purely as index relations.
//!
//! The shard in `H_ij` with signs `eps` is the cone `x_i = x_j` together
//! with `x_i <= x_k` for `eps_k = +1` and `x_k <= x_i` for `eps_k = -1`,
//! for every `i < k < j`. Intersections are unions of these constraints,
//! closed under transitivity, and read off directly as pre-orders.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::preorder::Preorder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shard {
    n: usize,
    i: usize,
    j: usize,
    /// `eps[t]` is the sign for `k = i + 1 + t`.
    eps: Vec<Sign>,
}

impl Shard {
    pub fn new(n: usize, i: usize, j: usize, eps: Vec<Sign>) -> Result<Self> {
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::InvalidShard(format!(
                "need 1 <= i < j <= n, got ({i}, {j}) with n = {n}"
            )));
        }
        if eps.len() != j - i - 1 {
            return Err(Error::InvalidShard(format!(
                "H({i},{j}) needs {} signs, got {}",
                j - i - 1,
                eps.len()
            )));
        }
        Ok(Self { n, i, j, eps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hyperplane(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Sign attached to `k`, for `i < k < j`.
    pub fn sign(&self, k: usize) -> Option<Sign> {
        (self.i < k && k < self.j).then(|| self.eps[k - self.i - 1])
    }

    pub fn signs(&self) -> &[Sign] {
        &self.eps
    }

    /// Defining constraints as 1-based pairs `(a, b)` meaning `x_a <= x_b`.
    pub fn constraints(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(self.i, self.j), (self.j, self.i)];
        for (t, s) in self.eps.iter().enumerate() {
            let k = self.i + 1 + t;
            out.push(match s {
                Sign::Plus => (self.i, k),
                Sign::Minus => (k, self.i),
            });
        }
        out
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.i, self.j, self.eps.clone())
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})[", self.i, self.j)?;
        for s in &self.eps {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        f.write_str("]")
    }
}

/// Parses `H(i,j)[+-…]`. The ground-set size is taken to be `j`; use
/// [`Shard::with_n`] to embed into a larger `n`.
impl FromStr for Shard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidShard(format!("cannot parse {s:?}"));
        let rest = s.trim().strip_prefix("H(").ok_or_else(bad)?;
        let (pair, rest) = rest.split_once(')').ok_or_else(bad)?;
        let (i, j) = pair.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        let signs = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let eps = signs
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        Shard::new(j.max(1), i, j, eps)
    }
}

/// Every shard of the braid arrangement on `[n]`: `2^(j-i-1)` per
/// hyperplane `H_ij`.
pub fn enumerate_shards(n: usize) -> Vec<Shard> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let width = j - i - 1;
            for mask in 0..(1u64 << width) {
                let eps = (0..width)
                    .map(|t| {
                        if mask >> (width - 1 - t) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect();
                out.push(Shard { n, i, j, eps });
            }
        }
    }
    out
}

/// Number of shards from the closed form `Σ_{i<j} 2^(j-i-1)`.
pub fn shard_count(n: usize) -> u64 {
    (1..n as u64).map(|d| (n as u64 - d) << (d - 1)).sum()
}

/// The lower shards of the region of `p`: one per descent `j i`, in `H_ij`,
/// with `eps_k = -1` exactly when `(k, i)` is an inversion of `p`.
pub fn lower_shards(p: &Permutation) -> Vec<Shard> {
    let pos = p.positions();
    p.descents()
        .into_iter()
        .map(|(j, i)| {
            let eps = (i + 1..j)
                .map(|k| {
                    if pos[k - 1] < pos[i - 1] {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect();
            Shard {
                n: p.n(),
                i,
                j,
                eps,
            }
        })
        .collect()
}

/// An intersection of shards, stored as its closed set of `x_a <= x_b`
/// constraints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShardIntersection {
    relation: Preorder,
}

impl ShardIntersection {
    /// The empty intersection: all of space.
    pub fn whole_space(n: usize) -> Self {
        Self {
            relation: Preorder::equality(n),
        }
    }

    pub fn n(&self) -> usize {
        self.relation.n()
    }

    /// Unordered pairs `{a, b}` (as `a < b`) with `x_a = x_b`.
    pub fn equalities(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if self.relation.le(a, b) && self.relation.le(b, a) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Ordered pairs `(a, b)` with `x_a <= x_b` implied but not `x_a = x_b`.
    pub fn inequalities(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                if a != b && self.relation.le(a, b) && !self.relation.le(b, a) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn implies_le(&self, a: usize, b: usize) -> bool {
        self.relation.le(a, b)
    }
}

impl fmt::Display for ShardIntersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .equalities()
            .into_iter()
            .map(|(a, b)| format!("x{a}=x{b}"))
            .collect();
        parts.extend(
            self.inequalities()
                .into_iter()
                .map(|(a, b)| format!("x{a}<=x{b}")),
        );
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Intersects shards on `[n]`. An empty list gives the whole space.
pub fn intersect(n: usize, shards: &[Shard]) -> Result<ShardIntersection> {
    for s in shards {
        if s.n != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: s.n,
            });
        }
    }
    let relation = Preorder::from_pairs(n, shards.iter().flat_map(Shard::constraints))?;
    Ok(ShardIntersection { relation })
}

/// `i ⪯ j` exactly when `x_i <= x_j` holds on the intersection.
pub fn to_preorder(g: &ShardIntersection) -> Preorder {
    g.relation.clone()
}

/// The pre-order of `p` computed through its lower shards.
pub fn preorder_via_shards(p: &Permutation) -> Preorder {
    let g = intersect(p.n(), &lower_shards(p)).expect("lower shards share n");
    to_preorder(&g)
}
