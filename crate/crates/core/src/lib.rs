//! Deciding token-sliding reachability between independent sets of block
//! graphs.
//!
//! A *block graph* is a graph in which every maximal 2-connected subgraph is
//! a clique. Two independent sets of the same size are *reachable* from each
//! other under token sliding when one can be turned into the other by
//! repeatedly moving a single token along an edge while keeping the set
//! independent.
//!
//! The crate decides this question in polynomial time:
//!
//! - [`blocks`] computes the block-cut tree and the directed pairs of it.
//! - [`structure`] derives the token-independent depth and `ua` tables.
//! - [`potential`] evaluates capacities and runs the fixed-point potential
//!   computation for a token set.
//! - [`decision`] extracts rigid cut vertices and produces the final
//!   [`Verdict`](decision::Verdict).
//!
//! [`oracle`] is an exhaustive breadth-first search over the reconfiguration
//! graph, used as ground truth, and [`generate`] produces reproducible random
//! block graphs and token sets for fuzzing.
//!
//! ```
//! use blockslide_core::{decide, Graph, Reason, TokenSet};
//!
//! let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)])?;
//! let from = TokenSet::new(&star, [1, 2])?;
//! let to = TokenSet::new(&star, [1, 3])?;
//! let verdict = decide(&star, &from, &to)?;
//! assert!(!verdict.reachable);
//! assert_eq!(verdict.reason, Reason::ComponentCountMismatch);
//! # Ok::<(), blockslide_core::Error>(())
//! ```
//!
//! The crate is `no_std` (it needs `alloc`). The default `std` feature only
//! enables wall-clock limits for the oracle.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod blocks;
pub mod decision;
mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod potential;
pub mod structure;

pub use blocks::{BlockDecomposition, BlockId, Pair, PairId, PairKind};
pub use decision::{decide, decide_connected, rigid_vertices, Reason, RigidSet, Verdict};
pub use error::{Error, Result};
pub use graph::{Graph, TokenSet};
pub use potential::{capacity, compute_potentials, PotentialTable, Strategy};
pub use structure::{compute_depths, compute_ua, DepthTable, UaTable};
