//! Randomness tests for circular data via random circular arc graphs.
//!
//! A series of angles θ₁,…,θ_m is turned into a graph: consecutive
//! observations form arcs on the unit circle, arcs are vertices, and edges
//! join intersecting arcs. Under mutual independence the graph's edge
//! probability (5/6) and its asymptotic vertex-degree law are the same for
//! every continuous circular distribution, which yields two
//! distribution-free tests:
//!
//! - the **edge-probability test** ([`ep::ep_test`]) compares the
//!   non-intersection rate over a random disjoint pairing of arcs with its
//!   null value 1/6;
//! - the **degree-distribution test** ([`dd::dd_test`]) compares the
//!   empirical vertex-degree pmf with the closed-form asymptotic law
//!   through a Hellinger-type statistic against Monte-Carlo calibrated
//!   thresholds ([`calibrate`]).
//!
//! [`process`] provides linked ARMA and circular autoregressive series for
//! power studies, [`power`] the replicated harness, and [`cli`] the
//! command-line entry points. Every stochastic routine takes an explicit
//! [`rng::RngSeed`], so results are reproducible bit for bit, including
//! under parallel execution.
//!
//! Runnable walk-throughs live in `examples/`:
//!
//! ```bash
//! cargo run --release --example run_tests
//! cargo run --release --example power_study
//! cargo run --release --example calibrate_thresholds
//! cargo run --release --example validate_theory
//! cargo run --release --example generate_series
//! ```

pub mod angle;
pub mod arc;
pub mod bh;
pub mod calibrate;
pub mod cli;
pub mod dd;
pub mod ep;
pub mod error;
pub mod exact;
pub mod graph;
pub mod ingest;
pub mod outcome;
pub mod power;
pub mod process;
pub mod rng;
pub mod sample;
pub mod theory;

#[cfg(test)]
pub(crate) mod testutil;

pub use angle::{normalize_angle, Angle, AngleSeries};
pub use arc::Arc;
pub use error::{Error, Result};
pub use graph::{GraphStats, Rcag};
pub use outcome::{Decision, TestOutcome};
pub use rng::RngSeed;
