//! Prime ideal sum graphs of finite commutative rings, with certified
//! bounds on their orientable genus.
//!
//! The pipeline is: parse a ring expression, build operation tables,
//! enumerate the ideal lattice, build the graph on nonzero proper ideals
//! (adjacent when their sum is prime), then bracket the graph's genus by a
//! re-checkable lower certificate and an explicit rotation system.

pub mod bitset;
pub mod certcheck;
pub mod classify;
pub mod error;
pub mod genus;
pub mod graph;
pub mod pis;
pub mod ring;
pub mod suite;

pub use error::{Error, Result};
