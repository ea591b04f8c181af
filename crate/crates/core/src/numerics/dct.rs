use std::f64::consts::PI;

use crate::{Complex64, Error, Result};

/// Dense real N x N transform, stored row-major.
///
/// Used for the orthonormal DCT-II precoder, where `forward` is `C x` and
/// `inverse` is `C^T x`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl TransformMatrix {
    /// Orthonormal DCT-II matrix: `C[k][n] = b(k) cos(pi (2n+1) k / 2N)` with
    /// `b(0) = 1/sqrt(N)` and `b(k) = sqrt(2/N)` otherwise.
    pub fn dct(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Sizing("DCT size must be positive".into()));
        }
        let n = size as f64;
        let mut entries = Vec::with_capacity(size * size);
        for k in 0..size {
            let b = if k == 0 {
                (1.0 / n).sqrt()
            } else {
                (2.0 / n).sqrt()
            };
            for i in 0..size {
                entries.push(b * (PI * (2 * i + 1) as f64 * k as f64 / (2.0 * n)).cos());
            }
        }
        Ok(Self { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.size + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.size..(row + 1) * self.size]
    }

    /// `M x`.
    pub fn forward(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(x)?;
        Ok((0..self.size)
            .map(|k| {
                self.row(k)
                    .iter()
                    .zip(x)
                    .fold(Complex64::new(0.0, 0.0), |acc, (m, v)| acc + v * m)
            })
            .collect())
    }

    /// `M^T x`.
    pub fn inverse(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(x)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.size];
        for (k, coeff) in x.iter().enumerate() {
            for (o, m) in out.iter_mut().zip(self.row(k)) {
                *o += coeff * m;
            }
        }
        Ok(out)
    }

    /// `max |M M^T - I|` over all entries.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..self.size {
            for b in 0..self.size {
                let dot: f64 = self
                    .row(a)
                    .iter()
                    .zip(self.row(b))
                    .map(|(x, y)| x * y)
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    fn check_len(&self, x: &[Complex64]) -> Result<()> {
        if x.len() != self.size {
            return Err(Error::LengthMismatch {
                expected: self.size,
                actual: x.len(),
            });
        }
        Ok(())
    }
}

pub fn dct_forward(p: &[Complex64]) -> Result<Vec<Complex64>> {
    TransformMatrix::dct(p.len())?.forward(p)
}

pub fn dct_inverse(p: &[Complex64]) -> Result<Vec<Complex64>> {
    TransformMatrix::dct(p.len())?.inverse(p)
}
