use std::f64::consts::FRAC_1_SQRT_2;

use crate::{Complex64, Error, Result};

/// Two-channel quadrature mirror filter bank.
#[derive(Debug, Clone, PartialEq)]
pub struct QmfPair {
    pub lowpass: Vec<f64>,
    pub highpass: Vec<f64>,
}

impl QmfPair {
    /// `h = [1, 1]/sqrt 2`, `g = [1, -1]/sqrt 2`.
    pub fn haar() -> Self {
        Self {
            lowpass: vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2],
            highpass: vec![FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
        }
    }

    pub fn len(&self) -> usize {
        self.lowpass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lowpass.is_empty()
    }

    /// Largest violation of the QMF conditions: unit lowpass energy, zero
    /// lowpass/highpass inner product, and `g(n) = (-1)^n h(L-1-n)` up to a
    /// global sign.
    pub fn condition_error(&self) -> f64 {
        let l = self.len();
        let energy: f64 = self.lowpass.iter().map(|h| h * h).sum();
        let cross: f64 = self
            .lowpass
            .iter()
            .zip(&self.highpass)
            .map(|(h, g)| h * g)
            .sum();
        let mirror = |sign: f64| {
            (0..l)
                .map(|n| {
                    let alt = if n % 2 == 0 { 1.0 } else { -1.0 };
                    (self.highpass[n] - sign * alt * self.lowpass[l - 1 - n]).abs()
                })
                .fold(0.0f64, f64::max)
        };
        (energy - 1.0)
            .abs()
            .max(cross.abs())
            .max(mirror(1.0).min(mirror(-1.0)))
    }

    fn split(&self, x: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let (h, g) = (
            (self.lowpass[0], self.lowpass[1]),
            (self.highpass[0], self.highpass[1]),
        );
        x.chunks_exact(2)
            .map(|p| (p[0] * h.0 + p[1] * h.1, p[0] * g.0 + p[1] * g.1))
            .unzip()
    }

    fn merge(&self, approx: &[Complex64], detail: &[Complex64]) -> Vec<Complex64> {
        let (h, g) = (
            (self.lowpass[0], self.lowpass[1]),
            (self.highpass[0], self.highpass[1]),
        );
        approx
            .iter()
            .zip(detail)
            .flat_map(|(a, d)| [a * h.0 + d * g.0, a * h.1 + d * g.1])
            .collect()
    }
}

/// Deepest decomposition a length-`n` signal supports.
pub fn max_haar_levels(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        n.trailing_zeros()
    }
}

fn check_levels(n: usize, levels: u32) -> Result<()> {
    if levels == 0 || n == 0 || levels > max_haar_levels(n) {
        return Err(Error::Sizing(format!(
            "length {n} is not divisible by 2^{levels} (or levels is zero)"
        )));
    }
    Ok(())
}

/// Multi-level orthonormal Haar analysis.
///
/// Output layout: `[approx_L | detail_L | detail_{L-1} | ... | detail_1]`.
pub fn haar_dwt(x: &[Complex64], levels: u32) -> Result<Vec<Complex64>> {
    check_levels(x.len(), levels)?;
    let qmf = QmfPair::haar();
    let mut out = vec![Complex64::default(); x.len()];
    let mut approx = x.to_vec();
    for _ in 0..levels {
        let (a, d) = qmf.split(&approx);
        let half = a.len();
        out[half..2 * half].copy_from_slice(&d);
        approx = a;
    }
    out[..approx.len()].copy_from_slice(&approx);
    Ok(out)
}

/// Inverse of [`haar_dwt`] for the same level count.
pub fn haar_idwt(c: &[Complex64], levels: u32) -> Result<Vec<Complex64>> {
    check_levels(c.len(), levels)?;
    let qmf = QmfPair::haar();
    let mut len = c.len() >> levels;
    let mut approx = c[..len].to_vec();
    for _ in 0..levels {
        approx = qmf.merge(&approx, &c[len..2 * len]);
        len *= 2;
    }
    Ok(approx)
}
