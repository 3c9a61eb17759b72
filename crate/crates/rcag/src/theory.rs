//! Closed-form quantities for random circular arc graphs under randomness.
//!
//! The asymptotic degree law, the non-intersection probability against a
//! fixed arc, the arc-length CDF under uniform endpoints, and exact
//! enumeration of the endpoint orderings behind the edge-probability
//! constants. All of it assumes mutually independent observations.

use crate::angle::TWO_PI;
use crate::arc::Arc;
use crate::error::{Error, Result};
use num_rational::Ratio;

/// Asymptotic CDF of the scaled vertex degree `d(v)/n`.
///
/// Zero at and below 1/2; reaches 1 at 1. For `x > 1/2` the value is
/// `5/2 − 2√(2(1−x)) − x − ½(1 − √(2(1−x)))²`.
pub fn theoretical_degree_cdf(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("x must lie in [0, 1], got {x}")));
    }
    if x <= 0.5 {
        return Ok(0.0);
    }
    let r = (2.0 * (1.0 - x)).sqrt();
    let v = 2.5 - 2.0 * r - x - 0.5 * (1.0 - r) * (1.0 - r);
    // the closed form hits 0 and 1 exactly at the endpoints; clamp guards
    // the last-ulp rounding in between
    Ok(v.clamp(0.0, 1.0))
}

/// Asymptotic degree pmf over degree values `1..=n`, by CDF differencing.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeLaw {
    n: usize,
    pmf: Vec<f64>,
}

impl DegreeLaw {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `pmf()[i]` is the mass of degree `i + 1`.
    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }
}

/// Degree law for a graph with `n >= 2` vertices:
/// `f*(i) = F*(i/n) − F*((i−1)/n)` for `i = 1..=n`.
pub fn theoretical_degree_pmf(n: usize) -> Result<DegreeLaw> {
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2 vertices, got {n}")));
    }
    let nf = n as f64;
    let mut pmf = Vec::with_capacity(n);
    let mut prev = 0.0;
    for i in 1..=n {
        let cur = theoretical_degree_cdf(i as f64 / nf)?;
        pmf.push((cur - prev).max(0.0));
        prev = cur;
    }
    Ok(DegreeLaw { n, pmf })
}

/// Probability that an independent uniform random arc misses a fixed arc.
///
/// With gap `g = 2π − length`, the probability is `g² / (2(2π)²)`, i.e.
/// `½(1 − L/2π)²`; a point arc (`L = 0`) is missed with probability 1/2.
pub fn fixed_arc_non_intersection_prob(arc: &Arc) -> f64 {
    let frac = 1.0 - arc.length() / TWO_PI;
    0.5 * frac * frac
}

/// CDF of the arc length under uniform endpoints: `P(|A| ≤ x) = x/2π`.
pub fn arc_length_cdf_uniform(x: f64) -> Result<f64> {
    if !(0.0..=TWO_PI).contains(&x) {
        return Err(Error::invalid(format!("x must lie in [0, 2π], got {x}")));
    }
    Ok(x / TWO_PI)
}

/// Exact endpoint-ordering counts, as reduced fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderingOracle {
    /// P(two random arcs do not intersect) = 1/6.
    pub pairwise_non_edge: Ratio<u64>,
    /// P(arc 1 misses both arc 2 and arc 3) = 1/20.
    pub joint_non_edge: Ratio<u64>,
    /// Product of the marginals, 1/36; strictly below the joint
    /// probability, which is the edge-dependence being quantified.
    pub independence_product: Ratio<u64>,
}

/// Enumerates endpoint orderings exhaustively.
///
/// Intersection of two arcs depends only on the cyclic order of their
/// endpoints, so each ordering is evaluated on representative distinct
/// values. All `4!` orderings of `(θ1, φ1, θ2, φ2)` drive the pairwise
/// count; all `6!` orderings of three arcs' endpoints drive the joint one.
pub fn ordering_oracle() -> OrderingOracle {
    // representative values; only relative order matters (all < 2π)
    let vals4 = [1.0, 2.0, 3.0, 4.0];
    let mut pair_disjoint = 0u64;
    for_each_permutation(4, &mut |perm| {
        let a = arc_from(vals4[perm[0]], vals4[perm[1]]);
        let b = arc_from(vals4[perm[2]], vals4[perm[3]]);
        if !a.intersects(&b) {
            pair_disjoint += 1;
        }
    });

    let vals6 = [0.5, 1.5, 2.5, 3.5, 4.5, 5.5];
    let mut joint_disjoint = 0u64;
    for_each_permutation(6, &mut |perm| {
        let a1 = arc_from(vals6[perm[0]], vals6[perm[1]]);
        let a2 = arc_from(vals6[perm[2]], vals6[perm[3]]);
        let a3 = arc_from(vals6[perm[4]], vals6[perm[5]]);
        if !a1.intersects(&a2) && !a1.intersects(&a3) {
            joint_disjoint += 1;
        }
    });

    let pairwise = Ratio::new(pair_disjoint, 24);
    OrderingOracle {
        pairwise_non_edge: pairwise,
        joint_non_edge: Ratio::new(joint_disjoint, 720),
        independence_product: pairwise * pairwise,
    }
}

fn arc_from(theta: f64, phi: f64) -> Arc {
    Arc::new(
        crate::angle::normalize_angle(theta).unwrap(),
        crate::angle::normalize_angle(phi).unwrap(),
    )
}

/// Heap's algorithm over index permutations of `0..len`.
fn for_each_permutation(len: usize, f: &mut impl FnMut(&[usize])) {
    fn recurse(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            recurse(items, k + 1, f);
            items.swap(k, i);
        }
    }
    let mut items: Vec<usize> = (0..len).collect();
    recurse(&mut items, 0, f);
}
