//! Exact tools for certifying that a finite permutation group contains no sharply
//! transitive set of permutations, together with brute-force and linear-algebra oracles.

pub mod bitset;
pub mod gf;
pub mod geometry;
pub mod perm;
pub mod designs;
pub mod linsys;
pub mod search;
pub mod certify;
