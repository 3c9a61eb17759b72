//! Reading and writing angle data files.
//!
//! The data format is UTF-8 text with one numeric value per line. Blank
//! lines and lines starting with `#` are ignored, and a single leading
//! non-numeric line is treated as a header. Degrees are converted on the
//! way in; latitude/longitude inputs can be rescaled linearly onto the full
//! circle.

use crate::angle::{normalize_angle, AngleSeries};
use crate::error::{Error, Result};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleUnit {
    Radians,
    Degrees,
}

impl FromStr for AngleUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<AngleUnit> {
        match s {
            "radians" | "rad" => Ok(AngleUnit::Radians),
            "degrees" | "deg" => Ok(AngleUnit::Degrees),
            other => Err(Error::invalid(format!(
                "unknown unit `{other}` (expected radians or degrees)"
            ))),
        }
    }
}

impl fmt::Display for AngleUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleUnit::Radians => write!(f, "radians"),
            AngleUnit::Degrees => write!(f, "degrees"),
        }
    }
}

/// Linear rescaling of half-range coordinates onto `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Rescale {
    #[default]
    None,
    /// Latitude in `[−π/2, π/2]` maps to `2x + π`.
    Latitude,
    /// Longitude in `[−π, π]` maps to `x + π`.
    Longitude,
}

impl FromStr for Rescale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rescale> {
        match s {
            "none" => Ok(Rescale::None),
            "latitude" | "lat" => Ok(Rescale::Latitude),
            "longitude" | "lon" | "long" => Ok(Rescale::Longitude),
            other => Err(Error::invalid(format!(
                "unknown rescale `{other}` (expected none, latitude or longitude)"
            ))),
        }
    }
}

/// Parses a data file into an ordered series.
///
/// `unit` converts each value to radians before the optional `rescale` is
/// applied; all results are normalized into `[0, 2π)`.
pub fn parse_angles(path: &Path, unit: AngleUnit, rescale: Rescale) -> Result<AngleSeries> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    let mut header_allowed = true;
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match trimmed.parse::<f64>() {
            Ok(raw) => {
                if !raw.is_finite() {
                    return Err(Error::Parse {
                        path: path.display().to_string(),
                        line: idx + 1,
                        message: format!("non-finite value `{trimmed}`"),
                    });
                }
                let radians = match unit {
                    AngleUnit::Radians => raw,
                    AngleUnit::Degrees => raw.to_radians(),
                };
                let rescaled = match rescale {
                    Rescale::None => radians,
                    Rescale::Latitude => 2.0 * radians + std::f64::consts::PI,
                    Rescale::Longitude => radians + std::f64::consts::PI,
                };
                values.push(normalize_angle(rescaled)?);
                header_allowed = false;
            }
            Err(_) if header_allowed => {
                // single auto-detected header line
                header_allowed = false;
            }
            Err(_) => {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    line: idx + 1,
                    message: format!("`{trimmed}` is not a number"),
                });
            }
        }
    }
    if values.is_empty() {
        return Err(Error::invalid(format!(
            "{}: no angle values found",
            path.display()
        )));
    }
    AngleSeries::from_angles(values)
}

/// Writes one angle per line at 12 significant digits, so reading the file
/// back reproduces the series to printed precision.
pub fn write_angles(path: &Path, series: &AngleSeries, unit: AngleUnit) -> Result<()> {
    let mut out = String::with_capacity(series.len() * 20);
    for angle in series.values() {
        let value = match unit {
            AngleUnit::Radians => angle.radians(),
            AngleUnit::Degrees => angle.radians().to_degrees(),
        };
        out.push_str(&format!("{value:.11e}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}
