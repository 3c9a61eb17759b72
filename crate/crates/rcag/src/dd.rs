//! Degree-distribution randomness test.
//!
//! The empirical degree pmf of the graph built from the full series is
//! compared against the asymptotic degree law through the statistic
//! `HD = (1/√2) Σᵢ (√f̂(i) − √f*(i))²`, summed over degree cells
//! `i = 1..=n`. The statistic is the plain sum of squared root-differences
//! (no outer square root); rejection thresholds are calibrated for exactly
//! this quantity, so the test is self-consistent. Odd-length series are
//! handled by two overlapping windows tested at level `α/2` each.

use crate::angle::AngleSeries;
use crate::calibrate::ThresholdTable;
use crate::error::{Error, Result};
use crate::graph::Rcag;
use crate::outcome::{Decision, GroupOutcome, Method, TestOutcome};
use crate::theory::theoretical_degree_pmf;

/// Empirical degree pmf over degree values `1..=n`.
///
/// Isolated vertices fall outside the compared range; their mass is
/// reported separately rather than folded into the pmf.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalDegreePmf {
    pub pmf: Vec<f64>,
    pub zero_degree_mass: f64,
}

/// `f̂(i) = #{j : d_j = i} / n` for `i = 1..=n`.
pub fn empirical_degree_pmf(graph: &Rcag) -> EmpiricalDegreePmf {
    let n = graph.n();
    let mut counts = vec![0usize; n + 1];
    for &d in graph.degrees() {
        counts[d as usize] += 1;
    }
    let nf = n as f64;
    EmpiricalDegreePmf {
        pmf: counts[1..=n].iter().map(|&c| c as f64 / nf).collect(),
        zero_degree_mass: counts[0] as f64 / nf,
    }
}

/// `(1/√2) Σᵢ (√empirical(i) − √theoretical(i))²` over equal-length cells.
pub fn hellinger_statistic(empirical: &[f64], theoretical: &[f64]) -> Result<f64> {
    if empirical.len() != theoretical.len() {
        return Err(Error::invalid(format!(
            "pmf lengths differ: {} vs {}",
            empirical.len(),
            theoretical.len()
        )));
    }
    if empirical
        .iter()
        .chain(theoretical)
        .any(|&p| !(p >= 0.0) || !p.is_finite())
    {
        return Err(Error::invalid("pmf entries must be non-negative"));
    }
    let sum: f64 = empirical
        .iter()
        .zip(theoretical)
        .map(|(&e, &t)| {
            let d = e.sqrt() - t.sqrt();
            d * d
        })
        .sum();
    Ok(sum / std::f64::consts::SQRT_2)
}

/// Statistic for one even-length window: builds the graph, compares the
/// empirical degree pmf against the degree law, and returns the statistic
/// together with the isolated-vertex mass.
pub fn dd_statistic(series: &AngleSeries) -> Result<(f64, f64)> {
    let graph = Rcag::from_series(series)?;
    let law = theoretical_degree_pmf(graph.n())?;
    let empirical = empirical_degree_pmf(&graph);
    let hd = hellinger_statistic(&empirical.pmf, law.pmf())?;
    Ok((hd, empirical.zero_degree_mass))
}

/// Runs the degree-distribution test.
///
/// Even `m`: one statistic against the threshold `C_α(m)`. Odd `m`: the
/// two overlapping windows of length `m − 1` are tested against
/// `C_{α/2}(m − 1)` and the null is rejected when either exceeds it.
/// Required thresholds must already be present in `thresholds`.
pub fn dd_test(
    series: &AngleSeries,
    alpha: f64,
    thresholds: &ThresholdTable,
) -> Result<TestOutcome> {
    let m = series.len();
    if m < 4 {
        return Err(Error::invalid(format!(
            "degree-distribution test needs at least 4 observations, got {m}"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }

    let windows: Vec<(usize, usize, f64)> = if m % 2 == 0 {
        vec![(0, m, alpha)]
    } else {
        vec![(0, m - 1, alpha / 2.0), (1, m - 1, alpha / 2.0)]
    };

    let mut groups = Vec::with_capacity(windows.len());
    let mut any_reject = false;
    let mut source: Option<String> = None;
    for (start, len, level) in windows {
        let entry = thresholds.lookup(len, level)?;
        let window = series.window(start, len)?;
        let (hd, zero_mass) = dd_statistic(&window)?;
        let reject = hd > entry.c;
        any_reject |= reject;
        source.get_or_insert_with(|| entry.source.to_string());
        groups.push(GroupOutcome {
            statistic: hd,
            p_value: None,
            threshold: Some(entry.c),
            decision: Decision::from_reject(reject),
            start,
            len,
            method: Method::Threshold,
            n_pairs: None,
            sum_y: None,
            exact: None,
            zero_degree_mass: Some(zero_mass),
        });
    }

    Ok(TestOutcome {
        test: "rcag-dd".to_string(),
        m,
        alpha,
        seed: None,
        groups,
        adjusted_p_values: None,
        decision: Decision::from_reject(any_reject),
        thresholds_source: source,
    })
}

/// Threshold entries `(m, level)` the test will look up for a series of
/// length `m` at level `alpha`.
pub fn dd_required_thresholds(m: usize, alpha: f64) -> Vec<(usize, f64)> {
    if m % 2 == 0 {
        vec![(m, alpha)]
    } else {
        vec![(m - 1, alpha / 2.0)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calibrate::calibrate_threshold;
    use crate::rng::RngSeed;
    use crate::sample::sample_circular_uniform;

    fn series(values: &[f64]) -> AngleSeries {
        AngleSeries::from_radians(values).unwrap()
    }

    #[test]
    fn empirical_pmf_examples() {
        // degrees (1, 1): all mass at degree 1
        let g = Rcag::from_series(&series(&[1.0, 2.0, 4.0, 3.0])).unwrap();
        let e = empirical_degree_pmf(&g);
        assert_eq!(e.pmf, vec![1.0, 0.0]);
        assert_eq!(e.zero_degree_mass, 0.0);

        // degrees (0, 0): pmf empty of mass, isolated mass reported aside
        let g = Rcag::from_series(&series(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        let e = empirical_degree_pmf(&g);
        assert_eq!(e.pmf, vec![0.0, 0.0]);
        assert_eq!(e.zero_degree_mass, 1.0);
    }

    #[test]
    fn isolated_vertices_vanish_for_large_uniform_graphs() {
        let seed = RngSeed::new(12);
        let mut bad = 0;
        for i in 0..200 {
            let s = sample_circular_uniform(seed.child("series", i), 2000).unwrap();
            let g = Rcag::from_series(&s).unwrap();
            let e = empirical_degree_pmf(&g);
            let total: f64 = e.pmf.iter().sum();
            if (total - 1.0).abs() > 1e-12 || e.zero_degree_mass != 0.0 {
                bad += 1;
            }
        }
        assert_eq!(bad, 0);
    }

    #[test]
    fn hellinger_examples() {
        assert_eq!(hellinger_statistic(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        // disjoint support: (1/√2)(1 + 1) = √2
        let hd = hellinger_statistic(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert!((hd - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(hellinger_statistic(&[1.0], &[0.5, 0.5]).is_err());
        assert!(hellinger_statistic(&[-0.1, 1.1], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn dd_test_even_and_odd_paths() {
        let seed = RngSeed::new(3);
        let mut table = ThresholdTable::empty();
        for e in calibrate_threshold(200, &[0.05, 0.025], 400, seed.child("cal", 0)).unwrap() {
            table.insert(e);
        }

        let even = sample_circular_uniform(seed.child("data", 0), 200).unwrap();
        let o = dd_test(&even, 0.05, &table).unwrap();
        assert_eq!(o.groups.len(), 1);
        assert_eq!(o.groups[0].threshold.unwrap(), table.lookup(200, 0.05).unwrap().c);

        let odd = sample_circular_uniform(seed.child("data", 1), 201).unwrap();
        let o = dd_test(&odd, 0.05, &table).unwrap();
        assert_eq!(o.groups.len(), 2);
        for g in &o.groups {
            assert_eq!(g.len, 200);
            assert_eq!(g.threshold.unwrap(), table.lookup(200, 0.025).unwrap().c);
        }
    }

    #[test]
    fn dd_test_missing_threshold_is_explicit() {
        let s = sample_circular_uniform(RngSeed::new(4), 100).unwrap();
        let err = dd_test(&s, 0.05, &ThresholdTable::empty()).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("m=100"), "{text}");
        assert!(text.contains("0.05"), "{text}");
    }

    #[test]
    fn required_thresholds() {
        assert_eq!(dd_required_thresholds(100, 0.05), vec![(100, 0.05)]);
        assert_eq!(dd_required_thresholds(101, 0.05), vec![(100, 0.025)]);
    }
}
