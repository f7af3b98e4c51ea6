//! Permutation codes under the block permutation metric.
//!
//! The block permutation distance between two permutations of `1..=n` counts
//! the adjacent pairs of one that do not appear in the other. This crate
//! provides the metric itself ([`perm`]), exhaustive sphere and ball
//! enumeration ([`enumeration`]), explicit code constructions
//! ([`constructions`]), bound calculators ([`bounds`]) and explicit graph
//! analysis ([`graph`]). The `blockperm` binary wraps everything in a CLI
//! ([`cli`]) whose `selftest` subcommand runs the checks in [`selftest`].

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod enumeration;
pub mod graph;
pub mod perm;
pub mod selftest;

mod bignum_serde;

pub use constructions::{CodeBook, Provenance};
pub use perm::{block_distance, char_set, AdjacencyPair, CharSet, Permutation};
