//! Exact evaluation of type Q quantum webs.
//!
//! Web diagrams are parsed from a small text language, expanded into a
//! primitive generator set and evaluated to parity-homogeneous sparse
//! matrices over Q(i)(q). On top of that sit the Hecke-Clifford algebra,
//! clasps, walled Brauer-Clifford generator webs, and link invariants of
//! braid closures.

pub mod error;
pub mod scalars;
pub mod superlinear;
pub mod lincomb;
pub(crate) mod quadratic;
pub mod qsym;
pub mod aqhowe;
pub mod webir;
pub mod evaluator;
pub mod heckeclifford;
pub mod invariants;
pub mod cli;

pub use error::{Error, Result};
pub use scalars::{GaussianRational, Laurent, ScalarQ};
