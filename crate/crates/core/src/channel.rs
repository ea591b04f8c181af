//! Ideal, AWGN and flat Rayleigh + AWGN channels.
//!
//! SNR is per time-domain sample of the transmitted (post-compander)
//! waveform: the noise variance is the measured mean frame power divided by
//! the linear SNR. Rayleigh fading applies one complex gain to the whole
//! frame and records it on the frame for genie equalization.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::chain::TimeFrame;
use crate::seed;
use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    Ideal,
    Awgn,
    RayleighAwgn,
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::Ideal => "ideal",
            ChannelKind::Awgn => "awgn",
            ChannelKind::RayleighAwgn => "rayleigh",
        })
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ideal" | "none" => Ok(ChannelKind::Ideal),
            "awgn" => Ok(ChannelKind::Awgn),
            "rayleigh" | "rayleigh+awgn" | "rayleigh_awgn" => Ok(ChannelKind::RayleighAwgn),
            other => Err(Error::Config(format!("unknown channel '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    /// Per-sample SNR in dB; `f64::INFINITY` disables the noise.
    pub snr_db: f64,
    pub seed: u64,
}

impl ChannelSpec {
    pub fn ideal() -> Self {
        Self {
            kind: ChannelKind::Ideal,
            snr_db: f64::INFINITY,
            seed: 0,
        }
    }

    /// Independent noise stream for one trial.
    pub fn rng_for_trial(&self, trial: u64) -> ChaCha8Rng {
        seed::rng_for(self.seed, &[seed::stream::NOISE, trial])
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let sd = (variance / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re * sd, im * sd)
}

/// Draw a unit mean-square Rayleigh coefficient with uniform phase.
pub fn rayleigh_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    complex_gaussian(rng, 1.0)
}

pub fn apply_channel<R: Rng + ?Sized>(
    frame: &TimeFrame,
    spec: &ChannelSpec,
    rng: &mut R,
) -> TimeFrame {
    let mut out = frame.clone();
    if spec.kind == ChannelKind::Ideal {
        return out;
    }
    let power =
        frame.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / frame.samples.len().max(1) as f64;
    if spec.kind == ChannelKind::RayleighAwgn {
        let h = rayleigh_coefficient(rng);
        out.samples.iter_mut().for_each(|s| *s *= h);
        out.fading = Some(h);
    }
    if spec.snr_db.is_finite() {
        let variance = power / 10f64.powf(spec.snr_db / 10.0);
        for s in out.samples.iter_mut() {
            *s += complex_gaussian(rng, variance);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::add_cyclic_prefix;
    use rand::SeedableRng;

    fn test_frame(n: usize) -> TimeFrame {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let body: Vec<Complex64> = (0..n).map(|_| complex_gaussian(&mut rng, 2.0)).collect();
        add_cyclic_prefix(&body, 0).unwrap()
    }

    #[test]
    fn ideal_and_infinite_snr_are_identity() {
        let f = test_frame(64);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(apply_channel(&f, &ChannelSpec::ideal(), &mut rng), f);
        let spec = ChannelSpec {
            kind: ChannelKind::Awgn,
            snr_db: f64::INFINITY,
            seed: 0,
        };
        assert_eq!(apply_channel(&f, &spec, &mut rng).samples, f.samples);
    }

    #[test]
    fn awgn_power_matches_snr() {
        let f = test_frame(100_000);
        let spec = ChannelSpec {
            kind: ChannelKind::Awgn,
            snr_db: 10.0,
            seed: 3,
        };
        let out = apply_channel(&f, &spec, &mut spec.rng_for_trial(0));
        let ps: f64 = f.samples.iter().map(|s| s.norm_sqr()).sum();
        let pn: f64 = out
            .samples
            .iter()
            .zip(&f.samples)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let ratio = pn / ps;
        assert!((ratio / 0.1 - 1.0).abs() < 0.03, "ratio {ratio}");
    }

    #[test]
    fn seeded_noise_is_reproducible() {
        let f = test_frame(256);
        let spec = ChannelSpec {
            kind: ChannelKind::RayleighAwgn,
            snr_db: 5.0,
            seed: 42,
        };
        let a = apply_channel(&f, &spec, &mut spec.rng_for_trial(7));
        let b = apply_channel(&f, &spec, &mut spec.rng_for_trial(7));
        let c = apply_channel(&f, &spec, &mut spec.rng_for_trial(8));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.fading.is_some());
    }

    #[test]
    fn rayleigh_unit_mean_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 100_000;
        let mean = (0..n)
            .map(|_| rayleigh_coefficient(&mut rng).norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 1.0).abs() < 0.02, "mean |h|^2 = {mean}");
    }
}
