//! Mu-law amplitude companding for complex baseband frames.
//!
//! Each sample keeps its phase while its magnitude goes through
//! `|v| = s ln(1 + mu |p| / s) / ln(1 + mu)`. The curve is concave and
//! passes through 0 and `s`, so amplitudes below `s` grow and amplitudes
//! above `s` shrink. The expander is the exact functional inverse
//! `|q| = (s / mu) (exp(|r| ln(1 + mu) / s) - 1)`.

use crate::numerics::ensure_finite;
use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompanderParams {
    mu: f64,
    s: f64,
}

impl CompanderParams {
    pub fn new(mu: f64, s: f64) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidInput(format!(
                "mu must be positive, got {mu}"
            )));
        }
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidInput(format!(
                "reference amplitude must be positive, got {s}"
            )));
        }
        Ok(Self { mu, s })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Reference (average) amplitude.
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn compress_magnitude(&self, m: f64) -> f64 {
        self.s * (self.mu * m / self.s).ln_1p() / self.mu.ln_1p()
    }

    pub fn expand_magnitude(&self, m: f64) -> f64 {
        self.s / self.mu * (m * self.mu.ln_1p() / self.s).exp_m1()
    }
}

fn map_magnitudes(x: &[Complex64], f: impl Fn(f64) -> f64) -> Result<Vec<Complex64>> {
    if x.is_empty() {
        return Err(Error::InvalidInput("empty frame".into()));
    }
    ensure_finite(x)?;
    Ok(x.iter()
        .map(|&p| {
            let m = p.norm();
            if m == 0.0 {
                p
            } else {
                p * (f(m) / m)
            }
        })
        .collect())
}

pub fn mu_compress(frame: &[Complex64], params: &CompanderParams) -> Result<Vec<Complex64>> {
    map_magnitudes(frame, |m| params.compress_magnitude(m))
}

pub fn mu_expand(frame: &[Complex64], params: &CompanderParams) -> Result<Vec<Complex64>> {
    map_magnitudes(frame, |m| params.expand_magnitude(m))
}

/// Mean sample magnitude, used as the compander reference `s`.
pub fn average_amplitude(frame: &[Complex64]) -> Result<f64> {
    if frame.is_empty() {
        return Err(Error::InvalidInput("empty frame".into()));
    }
    ensure_finite(frame)?;
    let s = frame.iter().map(|p| p.norm()).sum::<f64>() / frame.len() as f64;
    if s == 0.0 {
        return Err(Error::InvalidInput(
            "all-zero frame: compander reference amplitude undefined".into(),
        ));
    }
    Ok(s)
}

/// Gain that restores the mean power of `original` after companding.
pub fn power_restoring_gain(original: &[Complex64], companded: &[Complex64]) -> Result<f64> {
    let p: f64 = original.iter().map(|c| c.norm_sqr()).sum();
    let v: f64 = companded.iter().map(|c| c.norm_sqr()).sum();
    if v == 0.0 || original.len() != companded.len() {
        return Err(Error::InvalidInput(
            "cannot renormalize an empty or zero frame".into(),
        ));
    }
    Ok((p / v).sqrt())
}
