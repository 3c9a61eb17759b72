//! Benjamini–Hochberg step-up adjustment.

use crate::error::{Error, Result};

/// Adjusts p-values by the step-up rule: with `p_(1) ≤ … ≤ p_(k)`,
/// `adj_(i) = min_{j ≥ i} min(1, k·p_(j)/j)`, mapped back to input order.
///
/// Adjusted values are never below the raw ones and preserve their order.
pub fn bh_adjust(p_values: &[f64]) -> Result<Vec<f64>> {
    if p_values.is_empty() {
        return Err(Error::invalid("bh_adjust needs at least one p-value"));
    }
    if let Some(bad) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::invalid(format!(
            "p-values must lie in [0, 1], got {bad}"
        )));
    }
    let k = p_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| p_values[a].partial_cmp(&p_values[b]).unwrap());

    let mut adjusted = vec![0.0; k];
    let mut running_min = 1.0f64;
    for rank in (0..k).rev() {
        let idx = order[rank];
        let scaled = (k as f64 * p_values[idx] / (rank + 1) as f64).min(1.0);
        running_min = running_min.min(scaled);
        adjusted[idx] = running_min;
    }
    Ok(adjusted)
}
