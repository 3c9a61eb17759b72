//! Edge-probability randomness test.
//!
//! A series of `4n` observations yields `2n` arcs; a seeded uniform random
//! perfect matching pairs them, and the proportion `p̂` of non-intersecting
//! pairs is compared against the null value 1/6. Large pair counts use the
//! normal approximation; small ones use the exact randomized test from
//! [`crate::exact`]. Series whose length is not a multiple of four are
//! covered by overlapping sliding groups whose p-values are combined with
//! the Benjamini–Hochberg adjustment.

use crate::angle::AngleSeries;
use crate::arc::Arc;
use crate::bh::bh_adjust;
use crate::error::{Error, Result};
use crate::exact::{ep_exact_spec, ep_fuzzy_p_value, NULL_NON_EDGE_PROB};
use crate::outcome::{BoundaryAudit, Decision, ExactAudit, GroupOutcome, Method, TestOutcome};
use crate::rng::RngSeed;
use rand::seq::SliceRandom;
use statrs::distribution::{ContinuousCDF, Normal};

/// Smallest pair count for which the normal approximation is used; below
/// it the exact randomized test applies. At 60 pairs the expected count in
/// the thinner tail is 10.
pub const LARGE_SAMPLE_MIN_PAIRS: usize = 60;

/// A pairing of arcs with the per-pair non-intersection indicators.
#[derive(Clone, Debug)]
pub struct PairingOutcome {
    /// Disjoint vertex-index pairs covering `0..2n`.
    pub pairs: Vec<(usize, usize)>,
    /// `y[i] = 1` exactly when pair `i`'s arcs do not intersect.
    pub y: Vec<u8>,
    /// Proportion of non-intersecting pairs, `mean(y)`.
    pub p_hat: f64,
}

impl PairingOutcome {
    pub fn sum_y(&self) -> u64 {
        self.y.iter().map(|&v| u64::from(v)).sum()
    }
}

/// Uniformly random perfect matching on `0..n_vertices` via a seeded
/// shuffle of the index vector.
pub fn random_disjoint_pairing(n_vertices: usize, seed: RngSeed) -> Result<Vec<(usize, usize)>> {
    if n_vertices == 0 || n_vertices % 2 != 0 {
        return Err(Error::invalid(format!(
            "vertex count must be even and positive, got {n_vertices}"
        )));
    }
    let mut indices: Vec<usize> = (0..n_vertices).collect();
    indices.shuffle(&mut seed.rng());
    Ok(indices.chunks_exact(2).map(|c| (c[0], c[1])).collect())
}

/// Builds the `2n` arcs of a length-`4n` series, matches them with a seeded
/// random pairing, and evaluates the non-intersection proportion.
pub fn ep_statistic(series: &AngleSeries, seed: RngSeed) -> Result<PairingOutcome> {
    let arcs = ep_arcs(series)?;
    let pairs = random_disjoint_pairing(arcs.len(), seed)?;
    Ok(evaluate_pairing(&arcs, pairs))
}

/// Same as [`ep_statistic`] but with a caller-supplied matching, which must
/// partition the vertex indices.
pub fn ep_statistic_with_pairing(
    series: &AngleSeries,
    pairs: &[(usize, usize)],
) -> Result<PairingOutcome> {
    let arcs = ep_arcs(series)?;
    let mut seen = vec![false; arcs.len()];
    let mut claim = |v: usize| -> Result<()> {
        if v >= seen.len() || seen[v] {
            return Err(Error::invalid(format!(
                "pairing must cover each vertex of 0..{} exactly once",
                seen.len()
            )));
        }
        seen[v] = true;
        Ok(())
    };
    for &(a, b) in pairs {
        claim(a)?;
        claim(b)?;
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::invalid("pairing leaves vertices unmatched"));
    }
    Ok(evaluate_pairing(&arcs, pairs.to_vec()))
}

fn ep_arcs(series: &AngleSeries) -> Result<Vec<Arc>> {
    let m = series.len();
    if m % 4 != 0 || m < 8 {
        return Err(Error::invalid(format!(
            "series length must be a multiple of four and >= 8, got {m}"
        )));
    }
    Ok(series
        .values()
        .chunks_exact(2)
        .map(|pair| Arc::new(pair[0], pair[1]))
        .collect())
}

fn evaluate_pairing(arcs: &[Arc], pairs: Vec<(usize, usize)>) -> PairingOutcome {
    let y: Vec<u8> = pairs
        .iter()
        .map(|&(a, b)| u8::from(!arcs[a].intersects(&arcs[b])))
        .collect();
    let p_hat = y.iter().map(|&v| f64::from(v)).sum::<f64>() / y.len() as f64;
    PairingOutcome { pairs, y, p_hat }
}

/// Large-sample test: `p̂` is approximately Normal(1/6, 5/(36n)) under the
/// null, giving a two-sided p-value and the critical distance `c`.
#[derive(Clone, Copy, Debug)]
pub struct LargeSampleEp {
    pub p_value: f64,
    /// Reject when `|p̂ − 1/6|` exceeds this.
    pub critical_value: f64,
    pub reject: bool,
}

pub fn ep_test_large(p_hat: f64, n_pairs: usize, alpha: f64) -> Result<LargeSampleEp> {
    if n_pairs == 0 {
        return Err(Error::invalid("need at least one pair"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let sd = (5.0 / (36.0 * n_pairs as f64)).sqrt();
    let z = (p_hat - NULL_NON_EDGE_PROB).abs() / sd;
    let normal = Normal::standard();
    let p_value = (2.0 * (1.0 - normal.cdf(z))).clamp(0.0, 1.0);
    let critical_value = sd * normal.inverse_cdf(1.0 - alpha / 2.0);
    Ok(LargeSampleEp {
        p_value,
        critical_value,
        reject: p_value <= alpha,
    })
}

/// Runs the edge-probability test end to end.
///
/// For `m = 4n` this is a single test. For `m = 4n + k` with `k ∈ {1,2,3}`
/// the `k + 1` overlapping windows of length `4n` are each tested, the
/// p-values are BH-adjusted, and the null is rejected when the smallest
/// adjusted p-value is at most `alpha`. Exact-regime groups report the
/// randomized p-value realized with a seeded coin.
pub fn ep_test(series: &AngleSeries, alpha: f64, seed: RngSeed) -> Result<TestOutcome> {
    let m = series.len();
    if m < 8 {
        return Err(Error::invalid(format!(
            "edge-probability test needs at least 8 observations, got {m}"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let k = m % 4;
    let group_len = m - k;
    let mut groups = Vec::with_capacity(k + 1);
    let mut p_values = Vec::with_capacity(k + 1);

    for g in 0..=k {
        let window = series.window(g, group_len)?;
        let pairing_seed = seed.child("ep-pairing", g as u64);
        let outcome = ep_statistic(&window, pairing_seed)?;
        let n_pairs = group_len / 4;
        let sum_y = outcome.sum_y();

        let (p_value, method, exact) = if n_pairs >= LARGE_SAMPLE_MIN_PAIRS {
            let large = ep_test_large(outcome.p_hat, n_pairs, alpha)?;
            (large.p_value, Method::Normal, None)
        } else {
            let coin: f64 = rand::Rng::random(&mut seed.child("ep-coin", g as u64).rng());
            let p = ep_fuzzy_p_value(n_pairs, sum_y, coin)?;
            let spec = ep_exact_spec(n_pairs, alpha)?;
            let audit = ExactAudit {
                k1: spec.k1.clone(),
                k2: spec
                    .k2
                    .iter()
                    .map(|b| BoundaryAudit {
                        count: b.count,
                        gamma: b.gamma,
                    })
                    .collect(),
                coin,
            };
            (p, Method::ExactRandomized, Some(audit))
        };

        groups.push(GroupOutcome {
            statistic: outcome.p_hat,
            p_value: Some(p_value),
            threshold: None,
            decision: Decision::NotReject, // finalized below
            start: g,
            len: group_len,
            method,
            n_pairs: Some(n_pairs),
            sum_y: Some(sum_y),
            exact,
            zero_degree_mass: None,
        });
        p_values.push(p_value);
    }

    let (adjusted, decision) = if k == 0 {
        let reject = p_values[0] <= alpha;
        groups[0].decision = Decision::from_reject(reject);
        (None, Decision::from_reject(reject))
    } else {
        let adjusted = bh_adjust(&p_values)?;
        let mut any = false;
        for (group, &adj) in groups.iter_mut().zip(&adjusted) {
            let reject = adj <= alpha;
            group.decision = Decision::from_reject(reject);
            any |= reject;
        }
        (Some(adjusted), Decision::from_reject(any))
    };

    Ok(TestOutcome {
        test: "rcag-ep".to_string(),
        m,
        alpha,
        seed: Some(seed),
        groups,
        adjusted_p_values: adjusted,
        decision,
        thresholds_source: None,
    })
}
