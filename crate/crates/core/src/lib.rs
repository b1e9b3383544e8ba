//! Fractional-time two-level dynamics made unitary by a time-dependent Dyson
//! map.
//!
//! The non-unitary propagator Û_α(t) is built from Mittag-Leffler fractional
//! cosines and sines; the Dyson map η(t) = e^κ/√Λ [[Λ+|λ|², λ], [λ*, 1]] is
//! evaluated in closed form from its entries, and û_α(t) = η(t)Û_α(t)η⁻¹(0)
//! is the unitary evolution in the Hermitian frame.

// `!(x > 0.0)` is used on purpose so that NaN takes the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod dd;

pub mod dyson;
pub mod error;
pub mod frac_evolution;
pub mod invariants;
pub mod mittag_leffler;
pub mod models;
pub mod observables;
pub mod parallel;
pub mod trajectory;
pub mod two_level;
pub mod unitary;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use mittag_leffler::{FractionalOrder, MittagLeffler, MlResult};
pub use models::{Preset, PresetKind};
pub use parallel::Execution;
pub use trajectory::{TimeGrid, Trajectory, TrajectoryPoint};
pub use two_level::{HbarAlpha, Matrix2, OmegaVector, StateVector};
