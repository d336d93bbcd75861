//! Exact cake cutting on networks.
//!
//! Agents sit on the vertices of a graph and only compare their share with
//! their neighbors'. This crate implements, in exact rational arithmetic
//! over piecewise-constant valuations:
//!
//! * an envy-free protocol for trees, built on an exact two-agent moving
//!   knife ([`austin`]);
//! * a proportional protocol for descendant graphs (a rooted tree plus an
//!   edge for every ancestor-descendant pair);
//! * independent checkers for both fairness notions and for the cut and
//!   slice accounting ([`verify`]).

pub mod austin;
pub mod cake;
pub mod error;
pub mod graph;
pub mod instance;
pub mod protocols;
pub mod rational;
pub mod verify;

pub use cake::{equal_split, measure, prefix_cut, Density, Interval, Piece};
pub use error::{Error, Result};
pub use graph::{descendant_closure, FairnessGraph, RootedTree};
pub use instance::{parse_instance, AllocationFile, Instance, InstanceError};
pub use protocols::{alg_descendant, allocation_tree, pick_top, Allocation};
pub use rational::Rational;
pub use verify::{
    check_envy_free, check_partition, check_proportional, cut_count, CutConvention, FairnessReport,
};
