//! Seedable samplers for continuous circular distributions.
//!
//! The circular uniform is the calibration distribution; von Mises and
//! wrapped Cauchy are used to exercise distribution-invariance properties
//! and as i.i.d. alternatives in power studies.

use crate::angle::{Angle, AngleSeries, TWO_PI};
use crate::error::{Error, Result};
use crate::rng::RngSeed;
use rand::Rng;

/// Draws `count` i.i.d. angles uniform on `[0, 2π)`.
pub fn sample_circular_uniform(seed: RngSeed, count: usize) -> Result<AngleSeries> {
    if count == 0 {
        return Err(Error::invalid("count must be >= 1"));
    }
    let mut rng = seed.rng();
    let values = (0..count)
        .map(|_| Angle::new(rng.random::<f64>() * TWO_PI))
        .collect::<Result<Vec<_>>>()?;
    AngleSeries::from_angles(values)
}

/// Draws `count` i.i.d. von Mises(`mu`, `kappa`) angles.
///
/// `kappa = 0` degenerates to the circular uniform.
pub fn sample_von_mises(seed: RngSeed, mu: Angle, kappa: f64, count: usize) -> Result<AngleSeries> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::invalid(format!(
            "kappa must be finite and >= 0, got {kappa}"
        )));
    }
    if count == 0 {
        return Err(Error::invalid("count must be >= 1"));
    }
    let mut rng = seed.rng();
    let values = (0..count)
        .map(|_| Angle::new(draw_von_mises(&mut rng, mu.radians(), kappa)))
        .collect::<Result<Vec<_>>>()?;
    AngleSeries::from_angles(values)
}

/// One von Mises(`mu`, `kappa`) draw via Best–Fisher (1979) rejection.
///
/// Shared with the circular autoregressive generator, which needs a fresh
/// mean direction at every step.
pub(crate) fn draw_von_mises<R: Rng>(rng: &mut R, mu: f64, kappa: f64) -> f64 {
    if kappa == 0.0 {
        return rng.random::<f64>() * TWO_PI;
    }
    let tau = 1.0 + (1.0 + 4.0 * kappa * kappa).sqrt();
    let rho = (tau - (2.0 * tau).sqrt()) / (2.0 * kappa);
    let r = (1.0 + rho * rho) / (2.0 * rho);
    let f = loop {
        // Uniform on the unit disc quadrant trick gives t ~ tan^2 of a
        // uniform angle and u ~ uniform, without trig calls.
        let (t, u) = loop {
            let d: f64 = rng.random::<f64>() - 0.5;
            let e: f64 = rng.random::<f64>() - 0.5;
            let (d2, e2) = (d * d, e * e);
            if d2 + e2 <= 0.25 {
                break (d2 / e2, 4.0 * (d2 + e2));
            }
        };
        let z = (1.0 - t) / (1.0 + t);
        let f = (1.0 + r * z) / (r + z);
        let c = kappa * (r - f);
        if c * (2.0 - c) - u > 0.0 || (c / u).ln() + 1.0 - c >= 0.0 {
            break f;
        }
    };
    let angle = f.clamp(-1.0, 1.0).acos();
    if rng.random::<bool>() {
        mu + angle
    } else {
        mu - angle
    }
}

/// Draws `count` i.i.d. wrapped Cauchy(`mu`, `rho`) angles by wrapping a
/// Cauchy variate modulo 2π. `rho` is the mean resultant length; `rho = 0`
/// degenerates to the circular uniform.
pub fn sample_wrapped_cauchy(
    seed: RngSeed,
    mu: Angle,
    rho: f64,
    count: usize,
) -> Result<AngleSeries> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::invalid(format!(
            "rho must lie in [0, 1), got {rho}"
        )));
    }
    if count == 0 {
        return Err(Error::invalid("count must be >= 1"));
    }
    let mut rng = seed.rng();
    let values = (0..count)
        .map(|_| {
            let x = if rho == 0.0 {
                rng.random::<f64>() * TWO_PI
            } else {
                // Cauchy(mu, gamma) with gamma = -ln(rho) wraps to
                // resultant length rho.
                let gamma = -rho.ln();
                let u: f64 = rng.random();
                mu.radians() + gamma * (std::f64::consts::PI * (u - 0.5)).tan()
            };
            Angle::new(x)
        })
        .collect::<Result<Vec<_>>>()?;
    AngleSeries::from_angles(values)
}
