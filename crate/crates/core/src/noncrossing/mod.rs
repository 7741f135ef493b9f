//! Noncrossing partitions of `{1..n}` and the permutations attached to them.

mod lattice;
mod partition;
mod perm;

pub use lattice::{five_permutations, FivePermutations, Side};
pub use partition::{catalan, enumerate_nc, is_noncrossing, NcPartition, ENUMERATION_CAP};
pub use perm::Permutation;
