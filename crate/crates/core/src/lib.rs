#![no_std]

//! Toric contact geometry toolkit.
//!
//! The crate is split into an exact half and a floating-point half:
//!
//! - [`lattice`], [`lp`], [`reeb`], [`polytope`], [`probes`] and [`catalog`]
//!   work in arbitrary-precision integers and rationals. Moment cones are
//!   classified (goodness, strict convexity, lineality), Reeb vectors are
//!   synthesized for cones of Reeb type, cones are sliced into labeled
//!   polytopes, and probes certify displaceability of toric fibers.
//! - [`numerics`] verifies the explicit contact isotopies and contact forms
//!   by sampling: the Giroux isotopy of the sphere, contact Hamiltonian
//!   vector fields, flows, and the contact condition of `g(h) dθ + ½(x dy − y dx)`.
//!
//! Everything here is `no_std` with `alloc`; IO and the command line live in
//! the companion `toric-contact-cli` crate.

extern crate alloc;

pub mod catalog;
pub mod lattice;
pub mod lp;
pub mod numerics;
pub mod polytope;
pub mod probes;
pub mod rational;
pub mod reeb;

pub use catalog::{Fiber, ManifoldSpec, Verdict, VerdictStatus};
pub use lattice::{Cone, ConeClassification, IntMatrix, LatticeError};
pub use polytope::LabeledPolytope;
pub use probes::{Probe, ProbeVerdict};
pub use rational::{Int, Rat};
pub use reeb::ReebSynthesis;
