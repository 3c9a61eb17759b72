//! Directed circular arcs and the intersection predicate.
//!
//! An arc `[θ, φ]` is the closed set swept anticlockwise from `θ` to `φ`;
//! its length is `(φ − θ) mod 2π`. The order of the endpoints matters: the
//! arc `(4, 3)` covers `[4, 2π) ∪ [0, 3]`, not the interval `[3, 4]`. A
//! degenerate arc with `θ = φ` is a single point; it intersects another arc
//! exactly when that arc contains the point. Boundary touching counts as
//! intersection (arcs are closed).

use crate::angle::Angle;
use serde::Serialize;

/// A closed arc from `start` anticlockwise to `end`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Arc {
    start: Angle,
    end: Angle,
}

impl Arc {
    /// Arc from `theta` anticlockwise to `phi`.
    pub fn new(theta: Angle, phi: Angle) -> Arc {
        Arc {
            start: theta,
            end: phi,
        }
    }

    pub fn start(&self) -> Angle {
        self.start
    }

    pub fn end(&self) -> Angle {
        self.end
    }

    /// Arc length `(end − start) mod 2π`, in `[0, 2π)`.
    pub fn length(&self) -> f64 {
        self.start.distance_to(self.end)
    }

    /// Whether the closed arc contains the point `x`.
    pub fn contains(&self, x: Angle) -> bool {
        self.start.distance_to(x) <= self.length()
    }

    /// Whether two closed arcs have a non-empty intersection.
    ///
    /// Two arcs intersect exactly when one contains the other's start
    /// point: walking clockwise from any common point, the first start
    /// encountered lies inside both arcs.
    pub fn intersects(&self, other: &Arc) -> bool {
        self.contains(other.start) || other.contains(self.start)
    }
}
