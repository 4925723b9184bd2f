//! Exact computation with monotone sets in Hadamard spaces.
//!
//! Two concrete spaces are provided: the spoke ℝ-tree (unit segments glued at
//! a common root) and Euclidean space with rational coordinates. On top of
//! them the crate implements
//!
//! - the quasilinearization pairing of bound vectors ([`quasilin`]),
//! - formal linear-dual elements, their evaluation, coupling and norms ([`dual`]),
//! - monotone relatedness, monotone polars, closures and maximal extensions
//!   relative to a finite ground set ([`monotone`]),
//! - flatness and F_l-property checks ([`flatness`]),
//! - the `𝕀_f` functional, `M^f` membership and the proximal step ([`varfun`]).
//!
//! Every predicate is decided over exact rationals. The `hadamono` binary
//! wraps all of it behind a JSON problem-file interface ([`cli`]).

pub mod cli;
pub mod dual;
pub mod error;
pub mod flatness;
pub mod golden;
pub mod laws;
pub mod monotone;
pub mod problem;
pub mod quasilin;
pub mod rational;
pub mod report;
pub mod repro;
pub mod sample;
pub mod spaces;
pub mod varfun;

pub use dual::{DualElement, DualTerm};
pub use error::{Error, Result};
pub use monotone::{GroundSet, Pair, PairSet};
pub use quasilin::BoundVector;
pub use rational::Rational;
pub use report::{CheckReport, Relation};
pub use spaces::{Point, SpaceHandle};
pub use varfun::Objective;
