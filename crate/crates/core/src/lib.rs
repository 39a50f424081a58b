//! Exact-arithmetic toolkit for finite imprecise probability.
//!
//! The crate works over a finite ground set `Ω = {1, …, n}` with `n ≤ 16`
//! and never rounds: every probability, gamble value and LP solution is an
//! arbitrary-precision rational.
//!
//! * [`setsystem`] – events as bitmasks, pre-Dynkin systems, hulls, blocks,
//!   weak atoms and compatibility structures.
//! * [`lp`] and [`linalg`] – exact two-phase simplex and Gaussian elimination.
//! * [`polytope`] – credal sets as linear constraint systems over the simplex.
//! * [`measure`] – probabilities on pre-Dynkin systems and their extensions.
//! * [`galois`] – the credal / dual credal Galois connection.
//! * [`previsions`] – partial expectations on families of gamble subspaces.

pub mod error;
pub mod galois;
pub mod linalg;
pub mod lp;
pub mod measure;
pub mod polytope;
pub mod previsions;
pub mod rational;
pub mod report;
pub mod setsystem;

pub use error::{Error, Result};
pub use rational::Rational;
pub use setsystem::{EventSet, GroundSet, Partition, SetSystem};
