//! Collision-model simulation of open quantum dynamics.
//!
//! A qubit system collides successively with environment ancillas, and the
//! ancillas collide among themselves within a range `d` (the memory depth).
//! The crate evolves the reduced system state under several equivalent or
//! approximate representations of that dynamics:
//!
//! - the full chain, keeping every ancilla in one register (the exact oracle),
//! - the erasure schemes A, B and C, which discard system-ancilla correlations
//!   at prescribed points of each step,
//! - the memory-embedded form, where the system only ever talks to `d` memory
//!   ancillas that are swapped with fresh ones.
//!
//! On top of the engine sit non-Markovianity diagnostics (trace-distance
//! revivals, mutual-information profiles) and thermodynamic bookkeeping
//! (entropy-change decomposition, heat exchanged, heat-flux alignment).

pub mod diagnostics;
pub mod engine;
mod error;
pub mod qcore;
pub mod random;
pub mod thermo;

pub use error::{Error, Result};
