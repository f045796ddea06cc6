//! Lusztig's explicit generalized Springer correspondence for spin groups,
//! read combinatorially: partitions in `X_n` (distinct odd parts, even parts
//! with even multiplicity) correspond to pairs `(t, (alpha, beta))` with
//! `(alpha, beta)` a bipartition of `(n - 2t² + t)/4`.
//!
//! The crate provides the map in both directions, the dominance orders on
//! either side, and exhaustive checks that compare the order on `X_n` with
//! the Dipper-James-Murphy order on bipartitions.

pub mod cli;
pub mod config;
pub mod error;
pub mod map;
pub mod order;
pub mod partition;
pub mod verify;

pub use config::{Convention, Settings};
pub use error::{Error, Result};
pub use map::{
    brute_force_inverse, closed_form_inverse, delta, delta_profile, forward_map, odd_even_split,
    DeltaProfile, InverseRoute, OddEvenSplit, SpringerImage,
};
pub use order::{compare, djm_leq, dominance_leq, hasse_edges, induced_leq, OrderRelation, PosetEdges};
pub use partition::{
    enumerate_bipartitions, enumerate_partitions, enumerate_xn, Bipartition, Partition, XnElement,
    DEFAULT_CAP,
};
pub use verify::VerificationReport;
