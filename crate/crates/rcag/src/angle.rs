//! Angles on the unit circle and ordered series of them.
//!
//! Every angle in this crate is stored in radians in `[0, 2π)`. Inputs in
//! other units or ranges are converted at the ingestion boundary so the rest
//! of the code never has to reason about units or wrapping conventions.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Full turn in radians.
pub const TWO_PI: f64 = std::f64::consts::TAU;

/// An angle in radians, normalized to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    /// Normalizes `radians` into `[0, 2π)`.
    ///
    /// Fails on non-finite input.
    pub fn new(radians: f64) -> Result<Angle> {
        if !radians.is_finite() {
            return Err(Error::invalid(format!(
                "angle must be finite, got {radians}"
            )));
        }
        Ok(Angle(wrap_two_pi(radians)))
    }

    /// The normalized value in radians.
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Anticlockwise distance from `self` to `other`, in `[0, 2π)`.
    pub fn distance_to(self, other: Angle) -> f64 {
        wrap_two_pi(other.0 - self.0)
    }
}

/// Reduces `x` modulo 2π into `[0, 2π)`.
///
/// `rem_euclid` can round up to exactly 2π for tiny negative inputs, so the
/// result is folded back to 0 in that case.
fn wrap_two_pi(x: f64) -> f64 {
    let r = x.rem_euclid(TWO_PI);
    if r >= TWO_PI {
        0.0
    } else {
        r
    }
}

/// Reduces `x` mod 2π into `[0, 2π)`, rejecting non-finite input.
pub fn normalize_angle(x: f64) -> Result<Angle> {
    Angle::new(x)
}

/// An ordered series of circular observations.
///
/// Order is significant: arcs are built from consecutive observations, and
/// permuting the series changes the resulting graph.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleSeries {
    values: Vec<Angle>,
}

impl AngleSeries {
    /// Builds a series from raw radian values, normalizing each one.
    ///
    /// Fails if `values` is empty or contains a non-finite entry.
    pub fn from_radians(values: &[f64]) -> Result<AngleSeries> {
        if values.is_empty() {
            return Err(Error::invalid("angle series must be non-empty"));
        }
        let values = values
            .iter()
            .map(|&v| Angle::new(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(AngleSeries { values })
    }

    pub fn from_angles(values: Vec<Angle>) -> Result<AngleSeries> {
        if values.is_empty() {
            return Err(Error::invalid("angle series must be non-empty"));
        }
        Ok(AngleSeries { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Angle] {
        &self.values
    }

    /// Contiguous sub-series `[start, start + len)`, used by the sliding
    /// group schemes of the tests.
    pub fn window(&self, start: usize, len: usize) -> Result<AngleSeries> {
        if start + len > self.values.len() {
            return Err(Error::invalid(format!(
                "window [{start}, {}) out of range for series of length {}",
                start + len,
                self.values.len()
            )));
        }
        Ok(AngleSeries {
            values: self.values[start..start + len].to_vec(),
        })
    }

    pub fn to_radians(&self) -> Vec<f64> {
        self.values.iter().map(|a| a.radians()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        // 2π wraps to 0
        assert_eq!(normalize_angle(TWO_PI).unwrap().radians(), 0.0);
        // negative wraps up
        let a = normalize_angle(-std::f64::consts::FRAC_PI_2).unwrap();
        assert!((a.radians() - 3.0 * std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        // in range stays put
        assert_eq!(normalize_angle(1.5).unwrap().radians(), 1.5);
    }

    #[test]
    fn normalize_rejects_non_finite() {
        assert!(normalize_angle(f64::NAN).is_err());
        assert!(normalize_angle(f64::INFINITY).is_err());
    }

    #[test]
    fn tiny_negative_does_not_produce_two_pi() {
        let a = normalize_angle(-1e-20).unwrap();
        assert!(a.radians() < TWO_PI);
        assert!(a.radians() >= 0.0);
    }

    #[test]
    fn window_bounds() {
        let s = AngleSeries::from_radians(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let w = s.window(1, 2).unwrap();
        assert_eq!(w.to_radians(), vec![0.2, 0.3]);
        assert!(s.window(3, 2).is_err());
    }

    #[test]
    fn empty_series_rejected() {
        assert!(AngleSeries::from_radians(&[]).is_err());
    }

    proptest! {
        #[test]
        fn normalized_in_range(x in -1e6f64..1e6) {
            let a = normalize_angle(x).unwrap().radians();
            prop_assert!((0.0..TWO_PI).contains(&a));
        }

        #[test]
        fn normalization_idempotent(x in -1e6f64..1e6) {
            let a = normalize_angle(x).unwrap().radians();
            let b = normalize_angle(a).unwrap().radians();
            prop_assert_eq!(a, b);
        }
    }
}
