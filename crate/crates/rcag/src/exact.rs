//! Exact randomized two-sided binomial test for small pair counts.
//!
//! Under randomness the number of non-intersecting pairs follows
//! Binomial(n, 1/6). For small `n` the normal approximation is poor, so the
//! test is built exactly: each tail receives probability `α/2` by stepping
//! outward from the extremes, rejecting whole counts while they fit and
//! randomizing a single boundary count per tail. The construction runs in
//! exact rational arithmetic, which makes the size identity
//! `E[φ] = α` hold to the last bit before the final float conversion.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// Null probability that a random pair of arcs does not intersect.
pub const NULL_NON_EDGE_PROB: f64 = 1.0 / 6.0;

/// A fully-specified randomized test: reject outright on counts in `k1`,
/// flip a coin with the recorded probability on boundary counts in `k2`.
#[derive(Clone, Debug, Serialize)]
pub struct ExactTestSpec {
    pub n: usize,
    pub alpha: f64,
    /// Counts rejected with probability one.
    pub k1: Vec<u64>,
    /// Boundary counts with their randomization probabilities.
    pub k2: Vec<Boundary>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Boundary {
    pub count: u64,
    pub gamma: f64,
}

impl ExactTestSpec {
    /// Rejection probability `φ(y)` for an observed count.
    pub fn rejection_probability(&self, sum_y: u64) -> f64 {
        if self.k1.contains(&sum_y) {
            return 1.0;
        }
        self.k2
            .iter()
            .find(|b| b.count == sum_y)
            .map_or(0.0, |b| b.gamma)
    }

    /// Realizes the randomized decision with a uniform coin in `[0, 1)`.
    pub fn decide(&self, sum_y: u64, coin: f64) -> bool {
        coin < self.rejection_probability(sum_y)
    }
}

/// Builds the equal-tailed randomized test of `H0: p = 1/6` at level
/// `alpha` for `n` pairs.
pub fn ep_exact_spec(n: usize, alpha: f64) -> Result<ExactTestSpec> {
    if n == 0 {
        return Err(Error::invalid("need at least one pair"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let pmf = binomial_pmf_exact(n);
    let half = BigRational::from_float(alpha).expect("finite alpha") / BigInt::from(2);

    let mut k1 = Vec::new();
    let mut k2 = Vec::new();

    // Upper tail: take whole counts from n downward while they fit in α/2,
    // then randomize the first count that does not.
    let mut acc = BigRational::zero();
    for y in (0..=n).rev() {
        let next = &acc + &pmf[y];
        if next <= half {
            k1.push(y as u64);
            acc = next;
        } else {
            let gamma = (&half - &acc) / &pmf[y];
            if !gamma.is_zero() {
                k2.push((y as u64, gamma));
            }
            break;
        }
    }

    // Lower tail, mirrored. The tails cannot collide in their certain
    // parts for alpha < 1; coinciding boundary counts merge by adding the
    // randomization probabilities (the coin regions are disjoint).
    let mut acc = BigRational::zero();
    for y in 0..=n {
        let next = &acc + &pmf[y];
        if next <= half {
            k1.push(y as u64);
            acc = next;
        } else {
            let gamma = (&half - &acc) / &pmf[y];
            if !gamma.is_zero() {
                if let Some(entry) = k2.iter_mut().find(|(c, _)| *c == y as u64) {
                    entry.1 += gamma;
                } else {
                    k2.push((y as u64, gamma));
                }
            }
            break;
        }
    }

    k1.sort_unstable();
    k2.sort_by_key(|(c, _)| *c);
    let k2 = k2
        .into_iter()
        .map(|(count, gamma)| Boundary {
            count,
            gamma: gamma.to_f64().expect("gamma in [0,1]"),
        })
        .collect();
    Ok(ExactTestSpec { n, alpha, k1, k2 })
}

/// Randomized ("fuzzy") p-value for an observed count and realized coin:
/// the smallest level at which this test, run with the same coin, rejects.
///
/// The rejection probability at level `α` for count `y` has the closed form
/// `min(1, ψ(upper) + ψ(lower))` with `ψ(t) = clamp((α/2 − t)/P(Y=y), 0, 1)`
/// over the open tail probabilities `t`; the p-value inverts it in `α` by
/// bisection. Deciding `reject ⇔ p ≤ α` reproduces the randomized test.
pub fn ep_fuzzy_p_value(n: usize, sum_y: u64, coin: f64) -> Result<f64> {
    if n == 0 || sum_y > n as u64 {
        return Err(Error::invalid(format!(
            "count {sum_y} out of range for n = {n}"
        )));
    }
    if !(0.0..1.0).contains(&coin) {
        return Err(Error::invalid(format!("coin must lie in [0, 1), got {coin}")));
    }
    let pmf = binomial_pmf_f64(n);
    let y = sum_y as usize;
    let upper: f64 = pmf[y + 1..].iter().sum();
    let lower: f64 = pmf[..y].iter().sum();
    let p_y = pmf[y];

    let reject_prob = |alpha: f64| -> f64 {
        let psi = |tail: f64| ((alpha / 2.0 - tail) / p_y).clamp(0.0, 1.0);
        (psi(upper) + psi(lower)).min(1.0)
    };

    // φ is continuous and nondecreasing in α with φ(1) = 1 > coin;
    // bisect for the smallest level whose rejection probability exceeds
    // the realized coin.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if reject_prob(mid) > coin {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Exact Binomial(n, 1/6) pmf: `P(Y = y) = C(n, y)·5^(n−y) / 6^n`.
fn binomial_pmf_exact(n: usize) -> Vec<BigRational> {
    let six_n = BigInt::from(6).pow(n as u32);
    let mut coeff = BigInt::one();
    let mut five_pow = BigInt::from(5).pow(n as u32);
    let mut pmf = Vec::with_capacity(n + 1);
    for y in 0..=n {
        pmf.push(BigRational::new(&coeff * &five_pow, six_n.clone()));
        if y < n {
            coeff = coeff * BigInt::from(n - y) / BigInt::from(y + 1);
            five_pow /= 5;
        }
    }
    pmf
}

/// Binomial(n, 1/6) pmf in floats, by the stable ratio recurrence.
fn binomial_pmf_f64(n: usize) -> Vec<f64> {
    let mut pmf = Vec::with_capacity(n + 1);
    let mut p = (5.0f64 / 6.0).powi(n as i32);
    for y in 0..=n {
        pmf.push(p);
        if y < n {
            p *= (n - y) as f64 / (y + 1) as f64 / 5.0;
        }
    }
    pmf
}
