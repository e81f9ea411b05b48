//! Exact Cartan determinants and ranks for the Mackey algebra `μ_k(G, 1)`
//! and the cohomological Mackey algebra of a finite permutation group over
//! a large enough field of characteristic `p`.
//!
//! Groups are given by permutation generators and enumerated completely, so
//! the crate is aimed at groups of a few thousand elements.

// Subgroup keys compare by element list only; the lazily filled class cache
// inside the parent group never affects Eq, Ord or Hash.
#![allow(clippy::mutable_key_type)]

pub mod arith;
pub mod cartan;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod formulas;
pub mod group;
pub mod pairs;
pub mod perm;
pub mod psub;
pub mod quotient;
pub mod report;

pub use arith::ExactRational;
pub use cartan::{
    comackey_is_nonsingular, comackey_rank, comackey_size, det_cartan_group_algebra, det_comackey,
    det_mackey_cartan, is_p_nilpotent, AnalysisContext,
};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use pairs::{enumerate_pairs, MackeyPair};
pub use perm::Permutation;
pub use report::{analyze, CartanReport};
