//! Numerics for finite-dimensional quantum channels.
//!
//! The crate provides dense complex linear algebra, channel representations
//! (Kraus / Choi / Stinespring) with lossless conversions, degradability
//! certification by convex feasibility, PPT / realignment entanglement
//! witnesses, and multi-restart optimizers for coherent and private
//! information.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std` feature
//! additionally enables thread-parallel optimizer restarts.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod capacities;
pub mod channel;
pub mod degradability;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod random;
pub mod state;

pub use channel::{ChoiMatrix, KrausChannel, StinespringIsometry};
pub use error::{Error, Result};
pub use linalg::{herm_eig, ComplexMatrix, HermitianEig, Subsystem, C64};
pub use state::{Ensemble, HierarchicalEnsemble, QuantumState};
