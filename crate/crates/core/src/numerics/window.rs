use std::f64::consts::PI;

/// Periodic Hann window of length `n` (the spectral-analysis variant).
pub fn hann(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / n as f64).cos())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_hann_shape() {
        let w = hann(8);
        assert_eq!(w[0], 0.0);
        assert!((w[4] - 1.0).abs() < 1e-15);
        assert!((w[2] - 0.5).abs() < 1e-15);
        // mean power of a periodic Hann window is 3/8
        let p: f64 = hann(256).iter().map(|v| v * v).sum::<f64>() / 256.0;
        assert!((p - 0.375).abs() < 1e-12);
    }
}
