//! Shared helpers for unit tests.

/// Kolmogorov–Smirnov distance between a sample and a continuous CDF.
pub(crate) fn kolmogorov_distance<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = s.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in s.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((f - i as f64 / n).abs());
    }
    d
}

/// Mean resultant length and mean direction of a circular sample.
pub(crate) fn mean_resultant(sample: &[f64]) -> (f64, f64) {
    let n = sample.len() as f64;
    let c: f64 = sample.iter().map(|x| x.cos()).sum::<f64>() / n;
    let s: f64 = sample.iter().map(|x| x.sin()).sum::<f64>() / n;
    let r = (c * c + s * s).sqrt();
    let dir = s.atan2(c).rem_euclid(crate::angle::TWO_PI);
    (r, dir)
}
