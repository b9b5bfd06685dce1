//! Simulation and verification toolkit for truthful scheduling of
//! stochastic tasks on unrelated machines.
//!
//! The crate models processing times as per-(machine, task) distributions,
//! implements three prior-independent allocation rules (the myopic
//! column-minimum rule, bounded overload, and sieve-and-bounded-overload),
//! exact optimal-makespan oracles at desk scale, order-statistic closed
//! forms, and a weighted balls-in-bins engine. A seeded Monte Carlo harness
//! estimates expected makespans and approximation ratios, attaches the
//! applicable theoretical bounds, and emits machine-readable tables. The
//! `verify` module packages the full numerical acceptance suite.
//!
//! Everything stochastic takes an explicit [`rng::RandomStream`]; identical
//! seeds give bit-identical results regardless of thread count.

pub mod balls_bins;
pub mod distributions;
pub mod error;
pub mod harness;
pub mod instances;
pub mod mc;
pub mod mechanisms;
pub mod optimal_oracle;
pub mod order_stats;
pub mod rng;
pub mod special;
pub mod verify;

pub use distributions::Distribution;
pub use error::{Error, Result};
pub use harness::{EstimateReport, RatioReport};
pub use instances::{SchedulingInstance, TimeMatrix};
pub use mechanisms::{Allocation, SieveParams, TieBreak};
pub use rng::RandomStream;
