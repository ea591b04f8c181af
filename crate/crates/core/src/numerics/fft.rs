use std::f64::consts::PI;

use crate::{Complex64, Error, Result};

/// Forward DFT with unitary scaling, `X[k] = N^-1/2 * sum x[n] e^{-2 pi i kn/N}`.
pub fn fft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    transform(x, false)
}

/// Inverse of [`fft`], also scaled by `N^-1/2`.
pub fn ifft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    transform(x, true)
}

fn transform(x: &[Complex64], inverse: bool) -> Result<Vec<Complex64>> {
    let n = x.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Sizing(format!(
            "FFT length must be a nonzero power of two, got {n}"
        )));
    }
    let mut buf = x.to_vec();
    radix2_in_place(&mut buf, inverse);
    let scale = 1.0 / (n as f64).sqrt();
    buf.iter_mut().for_each(|v| *v *= scale);
    Ok(buf)
}

/// Iterative decimation-in-time butterfly network, unscaled.
fn radix2_in_place(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    let bits = n.trailing_zeros();
    if bits == 0 {
        return;
    }
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        // Twiddles from direct evaluation; a running product drifts at large N.
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / len as f64))
            .collect();
        for chunk in buf.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((a, b), w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let t = *b * w;
                *b = *a - t;
                *a += t;
            }
        }
        len <<= 1;
    }
}
