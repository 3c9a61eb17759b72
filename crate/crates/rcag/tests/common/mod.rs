//! Helpers shared by the integration suites.
#![allow(dead_code)]

use rcag::angle::AngleSeries;
use rcag::graph::Rcag;
use rcag::theory::theoretical_degree_cdf;

/// Kolmogorov distance between the empirical scaled-degree CDF of a graph
/// and the asymptotic degree law.
pub fn degree_cdf_distance(graph: &Rcag) -> f64 {
    let n = graph.n() as f64;
    let mut scaled: Vec<f64> = graph.degrees().iter().map(|&d| f64::from(d) / n).collect();
    scaled.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut dist: f64 = 0.0;
    for (i, &x) in scaled.iter().enumerate() {
        let f = theoretical_degree_cdf(x.min(1.0)).unwrap();
        dist = dist.max(((i + 1) as f64 / n - f).abs());
        dist = dist.max((f - i as f64 / n).abs());
    }
    dist
}

/// The twenty-observation sample series used across the examples.
pub fn sample_twenty() -> AngleSeries {
    AngleSeries::from_radians(&[
        2.17, 6.12, 1.48, 5.61, 4.34, 6.20, 5.60, 5.48, 3.73, 0.10, 0.24, 2.85, 6.24, 1.36, 6.10,
        5.41, 2.11, 3.68, 0.54, 0.27,
    ])
    .unwrap()
}
