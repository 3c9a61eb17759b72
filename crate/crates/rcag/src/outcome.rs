//! Test outcome types shared by both randomness tests.
//!
//! Outcomes serialize to the JSON report emitted by the command-line tools;
//! the field names here are the wire format. Every decision is a
//! deterministic function of the recorded statistics, thresholds, and seed,
//! so a report can be replayed exactly.

use crate::rng::RngSeed;
use serde::Serialize;

/// Reject / not-reject, serialized as `"reject"` / `"not-reject"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    #[serde(rename = "reject")]
    Reject,
    #[serde(rename = "not-reject")]
    NotReject,
}

impl Decision {
    pub fn is_reject(self) -> bool {
        matches!(self, Decision::Reject)
    }

    pub fn from_reject(reject: bool) -> Decision {
        if reject {
            Decision::Reject
        } else {
            Decision::NotReject
        }
    }
}

/// How a group's p-value or decision was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Normal approximation to the pair-count distribution.
    #[serde(rename = "normal")]
    Normal,
    /// Exact randomized binomial test with a seeded coin.
    #[serde(rename = "exact-randomized")]
    ExactRandomized,
    /// Statistic compared against a calibrated threshold.
    #[serde(rename = "threshold")]
    Threshold,
}

/// Audit record of an exact randomized test applied to one group.
#[derive(Clone, Debug, Serialize)]
pub struct ExactAudit {
    /// Counts rejected with probability one.
    pub k1: Vec<u64>,
    /// Boundary counts with their randomization probabilities.
    pub k2: Vec<BoundaryAudit>,
    /// The realized uniform coin.
    pub coin: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundaryAudit {
    pub count: u64,
    pub gamma: f64,
}

/// Per-group outcome. `statistic` is the group's test statistic (the
/// non-intersection proportion for the edge-probability test, the degree
/// statistic for the degree-distribution test); exactly one of `p_value`
/// and `threshold` is populated depending on the rejection rule.
#[derive(Clone, Debug, Serialize)]
pub struct GroupOutcome {
    pub statistic: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    pub decision: Decision,
    /// Offset of the group's window in the input series.
    pub start: usize,
    /// Window length.
    pub len: usize,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum_y: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactAudit>,
    /// Fraction of isolated vertices, reported separately from the degree
    /// pmf (degree zero sits outside the compared range).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_degree_mass: Option<f64>,
}

/// Complete outcome of one randomness test on one series.
#[derive(Clone, Debug, Serialize)]
pub struct TestOutcome {
    /// `"rcag-ep"` or `"rcag-dd"`.
    pub test: String,
    /// Number of observations supplied.
    pub m: usize,
    pub alpha: f64,
    /// Seed driving pairing and randomization; absent for the purely
    /// deterministic degree-distribution path.
    pub seed: Option<RngSeed>,
    pub groups: Vec<GroupOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjusted_p_values: Option<Vec<f64>>,
    pub decision: Decision,
    /// Where the thresholds came from, when thresholds were used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds_source: Option<String>,
}

impl TestOutcome {
    pub fn reject(&self) -> bool {
        self.decision.is_reject()
    }
}
