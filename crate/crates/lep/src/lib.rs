//! Monte Carlo laboratory for the loop-erased percolation explorer.
//!
//! Critical site percolation on the triangular lattice is simulated through its
//! hexagon representation: a simply connected set of hexagons with two boundary
//! arcs colored white and black forces an interface between two boundary points.
//! Erasing the "near-loops" of that interface (returns to within one lattice
//! spacing, removed in chronological order, keeping the last return) yields the
//! loop-erased explorer. The crate provides:
//!
//! * lattice geometry and domain discretization ([`hexlattice`]),
//! * the lazy-reveal interface sampler ([`explorer`]) and the eraser ([`looperase`]),
//! * numerical conformal maps onto the upper half plane ([`conformal`]),
//! * the two invariance observables — interval-averaged first-hit angle and the
//!   pass-right function ([`observables`]),
//! * distribution machinery ([`stats`]), the step-count scaling fit
//!   ([`scalingfit`]), the exact pass-right curve for SLE ([`sleformula`]),
//! * exact enumeration oracles for tiny domains ([`oracle`]),
//! * and the campaign runner behind the `lep` binary ([`run`], [`config`]).

pub mod config;
pub mod conformal;
pub mod error;
pub mod explorer;
pub mod hexlattice;
pub mod looperase;
pub mod observables;
pub mod oracle;
pub mod rng;
pub mod run;
pub mod scalingfit;
pub mod sleformula;
pub mod special;
pub mod stats;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
