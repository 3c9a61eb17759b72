//! Replicated generate-then-test runs for size and power estimation.

use crate::calibrate::{calibrate_threshold, ThresholdTable};
use crate::dd::{dd_required_thresholds, dd_test};
use crate::ep::ep_test;
use crate::error::{Error, Result};
use crate::process::ProcessSpec;
use crate::rng::RngSeed;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Which randomness test to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TestKind {
    #[serde(rename = "ep")]
    Ep,
    #[serde(rename = "dd")]
    Dd,
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestKind::Ep => write!(f, "ep"),
            TestKind::Dd => write!(f, "dd"),
        }
    }
}

impl FromStr for TestKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<TestKind> {
        match s {
            "ep" => Ok(TestKind::Ep),
            "dd" => Ok(TestKind::Dd),
            other => Err(Error::invalid(format!(
                "unknown test `{other}` (expected ep or dd)"
            ))),
        }
    }
}

/// Result of one rejection-rate estimate.
#[derive(Clone, Debug, Serialize)]
pub struct PowerReport {
    /// Textual process spec the replicates were drawn from.
    pub process: String,
    pub m: usize,
    pub replicates: usize,
    pub alpha: f64,
    pub test: TestKind,
    pub rejections: usize,
    /// Exactly `rejections / replicates`.
    pub rejection_rate: f64,
    /// Binomial standard error of the rate.
    pub standard_error: f64,
    pub seed: RngSeed,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds_source: Option<String>,
    /// Wall time is reported on stderr only; it would break byte-stable
    /// reports.
    #[serde(skip)]
    pub wall_time_secs: f64,
}

/// Ensures every threshold needed by the degree-distribution test at
/// `(m, alpha)` is present, calibrating missing entries with `k` replicates
/// on a child seed. Returns how many entries were calibrated.
pub fn ensure_dd_thresholds(
    table: &mut ThresholdTable,
    m: usize,
    alpha: f64,
    k: usize,
    seed: RngSeed,
) -> Result<usize> {
    let mut added = 0;
    for (len, level) in dd_required_thresholds(m, alpha) {
        if !table.contains(len, level) {
            for entry in calibrate_threshold(len, &[level], k, seed.child("calibration", len as u64))? {
                table.insert(entry);
            }
            added += 1;
        }
    }
    Ok(added)
}

/// Estimates the rejection rate of `test` on `replicates` independent
/// series from `spec`.
///
/// Each replicate draws its series and its test randomness from child
/// seeds of `seed`, so the count is independent of thread scheduling and
/// worker count.
pub fn power_study(
    spec: &ProcessSpec,
    m: usize,
    replicates: usize,
    alpha: f64,
    test: TestKind,
    seed: RngSeed,
    thresholds: &ThresholdTable,
) -> Result<PowerReport> {
    if replicates == 0 {
        return Err(Error::invalid("need at least one replicate"));
    }
    if test == TestKind::Dd {
        // fail fast with the precise missing entry before spawning work
        for (len, level) in dd_required_thresholds(m, alpha) {
            thresholds.lookup(len, level)?;
        }
    }
    let start = std::time::Instant::now();
    let rejections = (0..replicates)
        .into_par_iter()
        .map(|i| -> Result<bool> {
            let series = spec.generate(m, seed.child("replicate", i as u64))?;
            let outcome = match test {
                TestKind::Ep => ep_test(&series, alpha, seed.child("ep-test", i as u64))?,
                TestKind::Dd => dd_test(&series, alpha, thresholds)?,
            };
            Ok(outcome.reject())
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&r| r)
        .count();

    let rate = rejections as f64 / replicates as f64;
    let source = if test == TestKind::Dd {
        let (len, level) = dd_required_thresholds(m, alpha)[0];
        Some(thresholds.lookup(len, level)?.source.to_string())
    } else {
        None
    };
    Ok(PowerReport {
        process: spec.to_string(),
        m,
        replicates,
        alpha,
        test,
        rejections,
        rejection_rate: rate,
        standard_error: (rate * (1.0 - rate) / replicates as f64).sqrt(),
        seed,
        thresholds_source: source,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}
