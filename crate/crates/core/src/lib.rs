//! Parking assortments with arbitrary car lengths, and the vectors of
//! preferences that park under every arrival order.
//!
//! [`parking`] runs the parking experiment, [`invariance`] enumerates
//! invariant assortments by brute force, [`closed_forms`] holds the exact
//! counting formulas, and [`theorems`] checks the structural statements
//! against the brute-force oracle.

pub mod closed_forms;
pub mod error;
pub mod invariance;
pub mod multiset;
pub mod parking;
mod serde_big;
pub mod theorems;

pub use error::{Error, Result};
pub use invariance::{InvariantProfile, SearchOptions, SearchStrategy};
pub use parking::{LengthVector, ParkingOutcome, PreferenceVector};
pub use theorems::{CheckOptions, CheckReport, TheoremId, Verdict, Witness};
