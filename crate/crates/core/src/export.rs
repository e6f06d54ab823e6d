//! JSON and DOT encodings for pre-orders, Hasse diagrams, chain reports
//! and noncrossing partitions.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::OmegaLattice;
use crate::preorder::{PermutationPreorder, Preorder};
use crate::sortable::CoxeterElement;

/// `{"n": …, "blocks": [[…]…], "less": [[i, j]…]}`. `less` lists the cover
/// pairs of the block order by index into `blocks`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreorderJson {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    pub less: Vec<[usize; 2]>,
}

impl PreorderJson {
    /// Blocks are listed in placement order, members ascending.
    pub fn from_preorder(w: &PermutationPreorder) -> Self {
        let bo = w.block_order();
        let seq = w.block_sequence();
        let mut slot = vec![0; seq.len()];
        for (at, &b) in seq.iter().enumerate() {
            slot[b] = at;
        }
        let blocks = seq.iter().map(|&b| bo.blocks[b].members.clone()).collect();
        let mut less: Vec<[usize; 2]> = bo
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| [slot[a], slot[b]])
            .collect();
        less.sort_unstable();
        Self {
            n: w.n(),
            blocks,
            less,
        }
    }

    /// Rebuilds the relation by transitive closure and checks (P1)/(P2).
    pub fn to_preorder(&self) -> Result<PermutationPreorder> {
        let n = self.n;
        let mut seen = vec![false; n];
        for b in &self.blocks {
            if b.is_empty() {
                return Err(Error::InvalidPreorder("empty block".into()));
            }
            for &v in b {
                if v == 0 || v > n || seen[v - 1] {
                    return Err(Error::InvalidPreorder(format!(
                        "blocks do not partition [{n}] (entry {v})"
                    )));
                }
                seen[v - 1] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPreorder(format!("blocks do not cover [{n}]")));
        }
        let mut pairs = Vec::new();
        for b in &self.blocks {
            for w in b.windows(2) {
                pairs.push((w[0], w[1]));
                pairs.push((w[1], w[0]));
            }
        }
        for &[a, b] in &self.less {
            let (x, y) = match (self.blocks.get(a), self.blocks.get(b)) {
                (Some(x), Some(y)) => (x[0], y[0]),
                _ => {
                    return Err(Error::InvalidPreorder(format!(
                        "less pair [{a}, {b}] refers to a missing block"
                    )))
                }
            };
            pairs.push((x, y));
        }
        let q = Preorder::from_pairs(n, pairs)?;
        if q.block_count() != self.blocks.len() {
            return Err(Error::InvalidPreorder(
                "less relation has a cycle between blocks".into(),
            ));
        }
        PermutationPreorder::new(q)
    }
}

pub fn preorder_to_json(w: &PermutationPreorder) -> String {
    serde_json::to_string(&PreorderJson::from_preorder(w)).expect("plain data serializes")
}

pub fn preorder_from_json(s: &str) -> Result<PermutationPreorder> {
    let parsed: PreorderJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    parsed.to_preorder()
}

/// `{"n": …, "nodes": [perm strings], "edges": [[from, to]…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseJson {
    pub n: usize,
    pub nodes: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl HasseJson {
    pub fn from_lattice(lattice: &OmegaLattice) -> Self {
        Self {
            n: lattice.n(),
            nodes: (0..lattice.len())
                .map(|i| lattice.permutation(i).to_string())
                .collect(),
            edges: lattice
                .hasse_edges()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
        }
    }
}

pub fn hasse_json(lattice: &OmegaLattice) -> String {
    serde_json::to_string(&HasseJson::from_lattice(lattice)).expect("plain data serializes")
}

/// DOT digraph, nodes labeled by `λ(ω)`, edges pointing up.
pub fn hasse_dot(lattice: &OmegaLattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph shard_order_{} {{", lattice.n()).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for i in 0..lattice.len() {
        writeln!(out, "  n{i} [label=\"{}\"];", lattice.permutation(i)).unwrap();
    }
    for (a, b) in lattice.hasse_edges() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Summary of the chains of one interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub interval: [String; 2],
    pub increasing: Vec<usize>,
    pub decreasing_count: u64,
    pub mobius: i64,
    /// Per step of the increasing chain, the number of covers reaching the
    /// largest available label.
    pub max_label_multiplicity: Vec<usize>,
}

/// `{"n": …, "coxeter": [indices…], "blocks": [[…]…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub n: usize,
    pub coxeter: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionJson {
    pub fn coxeter_element(&self) -> Result<CoxeterElement> {
        CoxeterElement::new(self.n, self.coxeter.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;
    use crate::perm::Permutation;
    use crate::preorder::mu;

    #[test]
    fn block_json_for_eight_entries() {
        let w = mu(&"26314758".parse::<Permutation>().unwrap());
        let json = PreorderJson::from_preorder(&w);
        assert_eq!(
            json.blocks,
            vec![vec![2], vec![1, 3, 6], vec![4], vec![5, 7], vec![8]]
        );
        assert_eq!(json.less, vec![[0, 1], [1, 2], [1, 3]]);
        assert_eq!(
            preorder_to_json(&w),
            r#"{"n":8,"blocks":[[2],[1,3,6],[4],[5,7],[8]],"less":[[0,1],[1,2],[1,3]]}"#
        );
        assert_eq!(preorder_from_json(&preorder_to_json(&w)).unwrap(), w);
    }

    #[test]
    fn rejects_bad_json() {
        // (P1): [1,3] and [2,4] incomparable
        let err = preorder_from_json(r#"{"n":4,"blocks":[[1,3],[2,4]],"less":[]}"#).unwrap_err();
        assert!(matches!(err, Error::NotPermutationPreorder(_)));
        // (P2): cover between disjoint intervals
        let err = preorder_from_json(r#"{"n":6,"blocks":[[1,2],[3],[4],[5,6]],"less":[[0,3]]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::NotPermutationPreorder(_)));
        assert!(preorder_from_json(r#"{"n":3,"blocks":[[1],[2]],"less":[]}"#).is_err());
        assert!(preorder_from_json(r#"{"n":2,"blocks":[[1],[2]],"less":[[0,1],[1,0]]}"#).is_err());
        assert!(preorder_from_json("not json").is_err());
    }

    #[test]
    fn hasse_outputs() {
        let l = build_lattice(1).unwrap();
        assert_eq!(hasse_json(&l), r#"{"n":1,"nodes":["1"],"edges":[]}"#);
        let l = build_lattice(3).unwrap();
        let dot = hasse_dot(&l);
        assert!(dot.starts_with("digraph shard_order_3 {"));
        assert_eq!(dot.matches("->").count(), 8);
        assert_eq!(dot, hasse_dot(&build_lattice(3).unwrap()));
    }
}
