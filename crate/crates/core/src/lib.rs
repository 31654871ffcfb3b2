//! Capacity and storage/bandwidth tradeoffs of clustered distributed storage.
//!
//! All quantities are exact rationals. The crate computes the closed-form
//! capacity, checks it against brute-force cut enumeration and max-flow on
//! information flow graphs, and derives the threshold curves that follow.

pub mod capacity;
pub mod error;
pub mod flowgraph;
pub mod lrc;
pub mod oracle;
pub mod params;
pub mod rational;
pub mod sweep;
pub mod tradeoff;
pub mod verify;

pub use capacity::{aux_sequences, capacity, capacity_gamma_form, AuxSequences, CapacityBreakdown};
pub use error::{Error, Result};
pub use params::{ResourcePoint, SystemParams};
pub use rational::{Extended, Rational};
