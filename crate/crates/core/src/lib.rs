//! Simulation of contingent two-part payment mechanisms.
//!
//! An allocated agent pays `y` up front and an extra penalty `z` if she does
//! not use the resource. Mechanisms that charge the penalty rather than the
//! up-front fee select agents that are more likely to show up and, through
//! the penalty, make them more likely to do so.

pub mod benchmarks;
pub mod cmm;
pub mod economy;
mod error;
pub mod experiments;
pub mod model;
pub mod multi;
pub mod numerics;
pub mod profile;
pub mod single;

pub use economy::{Economy, MultiEconomy};
pub use error::{Error, Result};
pub use multi::{CePrices, MultiOutcome};
pub use model::{Atom, FirstBest, TwoPartPayment, ValueModel, Violation};

pub use single::{Outcome, SingleMechanism};

/// Two bids closer than this are treated as tied.
pub const TIE_TOL: f64 = 1e-9;
/// Absolute tolerance on utilities and payments.
pub const VALUE_TOL: f64 = 1e-9;
/// Absolute tolerance on probabilities.
pub const PROB_TOL: f64 = 1e-12;
