//! The shard intersection order on the symmetric group, realised as a
//! lattice of permutation pre-orders.
//!
//! * [`perm`]: permutations and their statistics.
//! * [`preorder`]: pre-orders, blocks, and the bijections [`mu`] / [`lambda`].
//! * [`shard`]: shards of the braid arrangement as index relations.
//! * [`lattice`]: the order itself, covers, meets and joins.
//! * [`shelling`]: edge labels, increasing and decreasing chains, Möbius numbers.
//! * [`sortable`]: Coxeter elements, c-sortables and noncrossing pre-orders.

pub mod error;
pub mod export;
pub mod lattice;
pub mod perm;
pub mod preorder;
pub mod shard;
pub mod shelling;
pub mod sortable;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{build_lattice, covers_up, join, leq, meet, Interval, OmegaLattice};
pub use perm::{BarredPattern, DescendingRun, Permutation};
pub use preorder::{lambda, mu, placements, Block, PermutationPreorder, Preorder};
pub use shard::{enumerate_shards, intersect, lower_shards, to_preorder, Shard, ShardIntersection};
pub use shelling::{
    combinable_pairs, count_decreasing_chains, edge_label, increasing_chain, mobius, EdgeLabel,
    LabeledChain,
};
pub use sortable::{
    is_c_sortable, is_noncrossing_preorder, noncrossing_order_of_partition, CoxeterElement,
};
