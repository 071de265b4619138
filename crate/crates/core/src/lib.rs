//! Distances between fully-labelled rooted trees.
//!
//! * [`perm`]: exact permutation distance between isomorphic trees, through heavy
//!   path decompositions and bipartite matching.
//! * [`approx`]: constant-factor approximation of the rearrangement distance
//!   (cuts or link-and-cuts plus one permutation), with a checkable script.
//! * [`tools`]: brute-force oracles, generators and a reduction from bipartite
//!   matching.

pub mod approx;
pub mod error;
pub mod forest;
pub mod hpd;
pub mod iso;
pub mod matching;
pub mod perm;
pub mod tools;

pub use approx::{approximate_rearrangement, approximate_tree_distance, StepTrace, TreeApprox};
pub use error::{Error, Result};
pub use forest::{anchor, apply_op, apply_script, similar, EditOp, EditScript, LabeledForest, Permutation};
pub use perm::{permutation_distance, recover_permutation};
