//! Numerical workbench for the multipartite nonlocality of graph states.
//!
//! The crate bundles four pieces that are usually scattered across one-off
//! scripts:
//!
//! - exact dense state-vector simulation of qudit graph states, generalized
//!   Pauli observables and outcome statistics ([`sim`]),
//! - conditional-probability tables (behaviors) with correlators,
//!   post-selection and no-signalling checks ([`behavior`]),
//! - the Bell-type functionals violated by cluster, caterpillar and GHZ
//!   states, together with their noise thresholds ([`inequality`]),
//! - a mechanical checker for subnetwork-equivalence claims in network
//!   inflations ([`inflation`]) and a simulator for the two-round
//!   neighbour-communication cluster-preparation protocol ([`lonc`]).
//!
//! Everything runs at desk scale: states are capped at 2²² amplitudes and
//! all checks finish in seconds. The `gmnl` binary exposes the named
//! verification suites; the `examples/` directory shows one runnable
//! program per capability.

pub mod behavior;
pub mod error;
pub mod inequality;
pub mod inflation;
pub mod lonc;
pub mod multigraph;
pub mod runner;
pub mod scripts;
pub mod sim;

pub use error::{Error, Result};
pub use multigraph::{CaterpillarLabeling, Multigraph};
pub use sim::{Matrix, Observable, PureState};

/// Default tolerance for declaring an inequality violated.
pub const DEFAULT_TOL: f64 = 1e-7;
/// Tolerance for norms, stabilizer equations and probability sums.
pub const NORM_TOL: f64 = 1e-9;
/// Tolerance for no-signalling checks on quantum behaviors.
pub const NS_TOL: f64 = 1e-8;
