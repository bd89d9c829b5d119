//! Conformance checking for event logs with order uncertainty.
//!
//! Traces whose events share coarse timestamps are only partially ordered.
//! This crate enumerates the possible total-order resolutions of such traces,
//! assigns each resolution a probability learned from the log itself, and
//! produces probabilistic conformance results against a Petri-net model,
//! either exactly or sample-approximated with confidence intervals.

pub mod alignment;
pub mod approx;
pub mod behavioral;
pub mod evaluate;
pub mod log;
pub mod measures;
pub mod petri;
pub mod resolution;
pub mod time;

#[doc(hidden)]
pub mod testutil;
