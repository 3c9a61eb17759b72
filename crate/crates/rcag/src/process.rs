//! Circular time-series generators for power studies.
//!
//! Two dependent families: linked ARMA processes, which push a real-valued
//! ARMA recursion through the link `g(x) = 2·arctan(x)` onto the circle,
//! and the von Mises circular autoregression, whose conditional mean
//! direction is a link-transformed combination of past offsets. The i.i.d.
//! sources from [`crate::sample`] round out the null cases.

use crate::angle::{normalize_angle, AngleSeries, TWO_PI};
use crate::error::{Error, Result};
use crate::rng::RngSeed;
use crate::sample::{
    draw_von_mises, sample_circular_uniform, sample_von_mises, sample_wrapped_cauchy,
};
use rand_distr::{Distribution, StandardNormal};
use std::fmt;
use std::str::FromStr;

/// Default number of warm-up steps discarded from every dependent process.
pub const DEFAULT_BURN_IN: usize = 500;

/// Link function `g(x) = 2·arctan(x)`, mapping the line into `(−π, π)`.
pub fn link(x: f64) -> f64 {
    2.0 * x.atan()
}

/// Inverse link `g⁻¹(t) = tan(t/2)` on `(−π, π)`.
pub fn link_inverse(t: f64) -> Result<f64> {
    if !(t.abs() < std::f64::consts::PI) {
        return Err(Error::invalid(format!(
            "link_inverse requires |t| < π, got {t}"
        )));
    }
    Ok((t / 2.0).tan())
}

/// Signed angular offset of `theta` from `mu`, wrapped into `(−π, π)`.
///
/// An offset landing exactly on ±π (measure zero, but reachable through
/// rounding) is nudged toward zero so the inverse link stays finite.
fn wrapped_offset(theta: f64, mu: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let w = (theta - mu + pi).rem_euclid(TWO_PI) - pi;
    w.clamp((-pi).next_up(), pi.next_down())
}

/// What to simulate.
#[derive(Clone, Debug, PartialEq)]
pub enum ProcessKind {
    IidUniform,
    IidVonMises { mu: f64, kappa: f64 },
    IidWrappedCauchy { mu: f64, rho: f64 },
    /// Linked ARMA: `Θ_t = (g(X_t) + μ) mod 2π` with `X_t` a Gaussian
    /// ARMA(p, q) recursion.
    Larma {
        ar: Vec<f64>,
        ma: Vec<f64>,
        mu: f64,
        /// Innovation standard deviation.
        scale: f64,
    },
    /// Circular autoregression: `Θ_t | past ~ von Mises(μ_t, κ)` with
    /// `μ_t = μ + g(Σ_j α_j·g⁻¹(θ_{t−j} − μ))`.
    Car {
        alphas: Vec<f64>,
        mu: f64,
        kappa: f64,
    },
}

/// A process plus its burn-in; parses from and renders to the textual form
/// used on the command line (`"unif"`, `"vm:mu=0,kappa=2"`,
/// `"lar1:rho=0.9"`, `"car:p=2,mu=0,kappa=3,alpha=0.5,0.5"`, ...).
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessSpec {
    pub kind: ProcessKind,
    pub burn_in: usize,
}

impl ProcessSpec {
    pub fn new(kind: ProcessKind) -> ProcessSpec {
        ProcessSpec {
            kind,
            burn_in: DEFAULT_BURN_IN,
        }
    }

    /// Simulates `length` observations; a pure function of the seed.
    pub fn generate(&self, length: usize, seed: RngSeed) -> Result<AngleSeries> {
        if length == 0 {
            return Err(Error::invalid("length must be >= 1"));
        }
        match &self.kind {
            ProcessKind::IidUniform => sample_circular_uniform(seed, length),
            ProcessKind::IidVonMises { mu, kappa } => {
                sample_von_mises(seed, normalize_angle(*mu)?, *kappa, length)
            }
            ProcessKind::IidWrappedCauchy { mu, rho } => {
                sample_wrapped_cauchy(seed, normalize_angle(*mu)?, *rho, length)
            }
            ProcessKind::Larma { ar, ma, mu, scale } => {
                gen_larma(ar, ma, *mu, *scale, self.burn_in, length, seed)
            }
            ProcessKind::Car { alphas, mu, kappa } => {
                gen_car(alphas, *mu, *kappa, self.burn_in, length, seed)
            }
        }
    }
}

/// Simulates a linked ARMA series: Gaussian ARMA recursion with zero warm
/// start, `burn_in` discarded steps, then `Θ_t = (g(X_t) + μ) mod 2π`.
pub fn gen_larma(
    ar: &[f64],
    ma: &[f64],
    mu: f64,
    scale: f64,
    burn_in: usize,
    length: usize,
    seed: RngSeed,
) -> Result<AngleSeries> {
    if length == 0 {
        return Err(Error::invalid("length must be >= 1"));
    }
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::invalid(format!(
            "innovation scale must be positive, got {scale}"
        )));
    }
    if !ar_stationary(ar) {
        return Err(Error::invalid(format!(
            "AR coefficients {ar:?} are not stationary"
        )));
    }
    if ma.iter().any(|c| !c.is_finite()) {
        return Err(Error::invalid("MA coefficients must be finite"));
    }
    let mut rng = seed.rng();
    let total = burn_in + length;
    let p = ar.len();
    let q = ma.len();
    let mut x_hist = vec![0.0f64; p];
    let mut e_hist = vec![0.0f64; q];
    let mut out = Vec::with_capacity(length);
    for t in 0..total {
        let eps: f64 = <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng)
            * scale;
        let mut x = eps;
        for (j, &coeff) in ar.iter().enumerate() {
            x += coeff * x_hist[j];
        }
        for (j, &coeff) in ma.iter().enumerate() {
            x += coeff * e_hist[j];
        }
        if p > 0 {
            x_hist.rotate_right(1);
            x_hist[0] = x;
        }
        if q > 0 {
            e_hist.rotate_right(1);
            e_hist[0] = eps;
        }
        if t >= burn_in {
            out.push(normalize_angle(link(x) + mu)?);
        }
    }
    AngleSeries::from_angles(out)
}

/// Simulates a CAR(p) series. The first `p` values are i.i.d.
/// von Mises(μ, κ) and are discarded along with the burn-in.
pub fn gen_car(
    alphas: &[f64],
    mu: f64,
    kappa: f64,
    burn_in: usize,
    length: usize,
    seed: RngSeed,
) -> Result<AngleSeries> {
    if alphas.is_empty() {
        return Err(Error::invalid("CAR needs order p >= 1"));
    }
    if alphas.iter().any(|a| !a.is_finite()) {
        return Err(Error::invalid("CAR coefficients must be finite"));
    }
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::invalid(format!(
            "kappa must be finite and >= 0, got {kappa}"
        )));
    }
    if length == 0 {
        return Err(Error::invalid("length must be >= 1"));
    }
    let mu = normalize_angle(mu)?.radians();
    let p = alphas.len();
    let mut rng = seed.rng();
    let total = p + burn_in + length;
    let mut history: Vec<f64> = Vec::with_capacity(total);
    for _ in 0..p {
        history.push(normalize_angle(draw_von_mises(&mut rng, mu, kappa))?.radians());
    }
    for t in p..total {
        let mut s = 0.0;
        for (j, &alpha) in alphas.iter().enumerate() {
            let offset = wrapped_offset(history[t - 1 - j], mu);
            s += alpha * link_inverse(offset)?;
        }
        let mean_dir = mu + link(s);
        history.push(normalize_angle(draw_von_mises(&mut rng, mean_dir, kappa))?.radians());
    }
    AngleSeries::from_radians(&history[total - length..])
}

/// Schur–Cohn test that all roots of `1 − a₁z − … − a_p z^p` lie outside
/// the unit circle, i.e. the AR recursion is stationary.
fn ar_stationary(ar: &[f64]) -> bool {
    if ar.iter().any(|c| !c.is_finite()) {
        return false;
    }
    // reflection-coefficient recursion on the characteristic polynomial
    let mut a: Vec<f64> = ar.to_vec();
    while let Some(&last) = a.last() {
        if last.abs() >= 1.0 {
            return false;
        }
        let k = last;
        let n = a.len() - 1;
        let prev = a.clone();
        a.truncate(n);
        for (j, slot) in a.iter_mut().enumerate() {
            *slot = (prev[j] + k * prev[n - 1 - j]) / (1.0 - k * k);
        }
    }
    true
}

impl fmt::Display for ProcessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match &self.kind {
            ProcessKind::IidUniform => write!(f, "unif")?,
            ProcessKind::IidVonMises { mu, kappa } => write!(f, "vm:mu={mu},kappa={kappa}")?,
            ProcessKind::IidWrappedCauchy { mu, rho } => write!(f, "wc:mu={mu},rho={rho}")?,
            ProcessKind::Larma { ar, ma, mu, scale } => match (ar.len(), ma.len()) {
                (1, 0) => write!(f, "lar1:rho={}", ar[0])?,
                (2, 0) => write!(f, "lar2:rho={}", join(ar))?,
                (0, 1) => write!(f, "lma1:rho={}", ma[0])?,
                _ => {
                    write!(f, "larma:ar={},ma={}", join(ar), join(ma))?;
                    if *mu != 0.0 {
                        write!(f, ",mu={mu}")?;
                    }
                    if *scale != 1.0 {
                        write!(f, ",scale={scale}")?;
                    }
                }
            },
            ProcessKind::Car { alphas, mu, kappa } => write!(
                f,
                "car:p={},mu={mu},kappa={kappa},alpha={}",
                alphas.len(),
                join(alphas)
            )?,
        }
        if self.burn_in != DEFAULT_BURN_IN {
            write!(f, ";burnin={}", self.burn_in)?;
        }
        Ok(())
    }
}

impl FromStr for ProcessSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<ProcessSpec> {
        parse_spec(text)
    }
}

/// Key-value list where a value may itself be a comma-separated vector:
/// a token containing `=` starts a new key, later bare tokens extend it.
fn parse_fields(body: &str) -> Result<Vec<(String, Vec<f64>)>> {
    let mut fields: Vec<(String, Vec<f64>)> = Vec::new();
    for token in body.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let parse_num = |s: &str, key: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| Error::invalid(format!("field `{key}`: `{s}` is not a number")))
        };
        if let Some((key, value)) = token.split_once('=') {
            let key = key.trim().to_string();
            let v = parse_num(value.trim(), &key)?;
            fields.push((key, vec![v]));
        } else if let Some(last) = fields.last_mut() {
            let v = parse_num(token, &last.0)?;
            last.1.push(v);
        } else {
            return Err(Error::invalid(format!(
                "process spec field `{token}` has no key"
            )));
        }
    }
    Ok(fields)
}

fn parse_spec(text: &str) -> Result<ProcessSpec> {
    let text = text.trim();
    // optional ;burnin=N suffix on any process
    let (text, burn_in) = match text.split_once(';') {
        Some((head, tail)) => {
            let tail = tail.trim();
            let value = tail
                .strip_prefix("burnin=")
                .ok_or_else(|| Error::invalid(format!("unknown process option `{tail}`")))?;
            let b: usize = value
                .parse()
                .map_err(|_| Error::invalid(format!("field `burnin`: `{value}` is not a count")))?;
            (head.trim(), b)
        }
        None => (text, DEFAULT_BURN_IN),
    };
    let (kind_name, body) = match text.split_once(':') {
        Some((k, b)) => (k.trim(), b),
        None => (text, ""),
    };
    let fields = parse_fields(body)?;
    let get = |key: &str| -> Option<&Vec<f64>> {
        fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    };
    let scalar = |key: &str, default: Option<f64>| -> Result<f64> {
        match get(key) {
            Some(v) if v.len() == 1 => Ok(v[0]),
            Some(_) => Err(Error::invalid(format!("field `{key}` must be a scalar"))),
            None => default.ok_or_else(|| Error::invalid(format!("missing field `{key}`"))),
        }
    };

    let known = |allowed: &[&str]| -> Result<()> {
        for (k, _) in &fields {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::invalid(format!(
                    "unknown field `{k}` for process `{kind_name}`"
                )));
            }
        }
        Ok(())
    };

    let kind = match kind_name {
        "unif" | "uniform" => {
            known(&[])?;
            ProcessKind::IidUniform
        }
        "vm" => {
            known(&["mu", "kappa"])?;
            ProcessKind::IidVonMises {
                mu: scalar("mu", Some(0.0))?,
                kappa: scalar("kappa", None)?,
            }
        }
        "wc" => {
            known(&["mu", "rho"])?;
            ProcessKind::IidWrappedCauchy {
                mu: scalar("mu", Some(0.0))?,
                rho: scalar("rho", None)?,
            }
        }
        "lar1" => {
            known(&["rho", "mu", "scale"])?;
            ProcessKind::Larma {
                ar: vec![scalar("rho", None)?],
                ma: vec![],
                mu: scalar("mu", Some(0.0))?,
                scale: scalar("scale", Some(1.0))?,
            }
        }
        "lar2" => {
            known(&["rho", "mu", "scale"])?;
            let rho = get("rho")
                .ok_or_else(|| Error::invalid("missing field `rho`"))?
                .clone();
            if rho.len() != 2 {
                return Err(Error::invalid(format!(
                    "lar2 needs rho=r1,r2, got {} value(s)",
                    rho.len()
                )));
            }
            ProcessKind::Larma {
                ar: rho,
                ma: vec![],
                mu: scalar("mu", Some(0.0))?,
                scale: scalar("scale", Some(1.0))?,
            }
        }
        "lma1" => {
            known(&["rho", "mu", "scale"])?;
            ProcessKind::Larma {
                ar: vec![],
                ma: vec![scalar("rho", None)?],
                mu: scalar("mu", Some(0.0))?,
                scale: scalar("scale", Some(1.0))?,
            }
        }
        "larma" => {
            known(&["ar", "ma", "mu", "scale"])?;
            ProcessKind::Larma {
                ar: get("ar").cloned().unwrap_or_default(),
                ma: get("ma").cloned().unwrap_or_default(),
                mu: scalar("mu", Some(0.0))?,
                scale: scalar("scale", Some(1.0))?,
            }
        }
        "car" => {
            known(&["p", "mu", "kappa", "alpha"])?;
            let alphas = get("alpha")
                .ok_or_else(|| Error::invalid("missing field `alpha`"))?
                .clone();
            if let Some(p) = get("p") {
                if p.len() != 1 || p[0] as usize != alphas.len() {
                    return Err(Error::invalid(format!(
                        "field `p` ({:?}) disagrees with {} alpha value(s)",
                        p,
                        alphas.len()
                    )));
                }
            }
            ProcessKind::Car {
                alphas,
                mu: scalar("mu", Some(0.0))?,
                kappa: scalar("kappa", None)?,
            }
        }
        other => {
            return Err(Error::invalid(format!(
                "unknown process kind `{other}` \
                 (expected unif, vm, wc, lar1, lar2, lma1, larma, car)"
            )))
        }
    };
    Ok(ProcessSpec { kind, burn_in })
}
