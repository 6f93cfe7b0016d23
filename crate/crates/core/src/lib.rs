//! Distinguishing numbers of the large vertex- and edge-transitive automorphism
//! groups of `K_{n,n}` and of the crown graphs `K_{n,n} - nK_2`.
//!
//! The crate builds every group in the catalog as `(g, g')·τ^ε` generators,
//! constructs explicit distinguishing partitions, and computes exact
//! distinguishing numbers by exhaustive search over restricted-growth strings.

pub mod bi_group;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod perm;
pub mod solver;
pub mod verifier;

pub use bi_group::{BiElement, CaseId, GraphFamily, GraphSpec, GroupCase, Side, Vertex};
pub use coloring::{Engine, Partition};
pub use error::{DnError, Result};
pub use perm::{GenSet, Parity, Perm};
pub use solver::{Budget, DnResult, Evidence};
