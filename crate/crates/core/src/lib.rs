//! Equity-aware amenity access analysis and facility siting.
//!
//! The crate measures how far residents live from their nearest amenity using
//! the Kolm-Pollak equally-distributed equivalent (EDE) — an inequality-penalized
//! mean distance — and selects new amenity locations that minimize it. Two
//! planning questions are supported:
//!
//! 1. given a budget of `k` new sites, where should they go ([`plan::solve_q1`]);
//! 2. given an access target in meters, how many new sites are needed and
//!    where ([`plan::solve_q2`]).
//!
//! The pipeline is: [`ingest`] loads or synthesizes a city [`model::Instance`],
//! [`plan::calibrate`] freezes the inequality-aversion parameters from baseline
//! access, the [`exact`] or [`heuristic`] solver picks sites, and [`report`]
//! turns the result into rankings, comparisons, and exportable documents.

pub mod assignment;
pub mod error;
pub mod exact;
pub mod heuristic;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod plan;
pub mod report;

pub use error::{Error, Result};
