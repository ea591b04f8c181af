//! PAPR, CCDF, Welch PSD and bit-error measurements.

use crate::chain::TimeFrame;
use crate::numerics::{self, hann};
use crate::{Complex64, Error, Result};

/// PAPR of one frame in dB.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PaprSample {
    pub value_db: f64,
}

/// `10 log10(max |x|^2 / mean |x|^2)` over a sample slice.
pub fn papr_db_samples(x: &[Complex64]) -> Result<PaprSample> {
    if x.is_empty() {
        return Err(Error::InvalidInput("empty frame".into()));
    }
    let (peak, total) = x.iter().fold((0.0f64, 0.0f64), |(p, t), s| {
        let e = s.norm_sqr();
        (p.max(e), t + e)
    });
    if total == 0.0 {
        return Err(Error::InvalidInput(
            "PAPR undefined for an all-zero frame".into(),
        ));
    }
    let mean = total / x.len() as f64;
    Ok(PaprSample {
        value_db: 10.0 * (peak / mean).log10(),
    })
}

/// PAPR measured on the frame body; the cyclic prefix is excluded.
pub fn papr_db(frame: &TimeFrame) -> Result<PaprSample> {
    papr_db_samples(frame.body())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CcdfTable {
    pub label: String,
    pub thresholds_db: Vec<f64>,
    pub probabilities: Vec<f64>,
}

/// Exceedance counter on a fixed threshold grid. Counters over disjoint
/// sample sets merge by addition, so the result is independent of how the
/// samples were partitioned.
#[derive(Debug, Clone, PartialEq)]
pub struct CcdfCounter {
    thresholds_db: Vec<f64>,
    exceed: Vec<u64>,
    total: u64,
}

impl CcdfCounter {
    pub fn new(thresholds_db: Vec<f64>) -> Self {
        let exceed = vec![0; thresholds_db.len()];
        Self {
            thresholds_db,
            exceed,
            total: 0,
        }
    }

    pub fn add(&mut self, sample: PaprSample) {
        self.total += 1;
        for (count, t) in self.exceed.iter_mut().zip(&self.thresholds_db) {
            if sample.value_db > *t {
                *count += 1;
            }
        }
    }

    pub fn merge(&mut self, other: &CcdfCounter) -> Result<()> {
        if self.thresholds_db != other.thresholds_db {
            return Err(Error::InvalidInput(
                "cannot merge CCDF counters on different grids".into(),
            ));
        }
        self.total += other.total;
        for (a, b) in self.exceed.iter_mut().zip(&other.exceed) {
            *a += b;
        }
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn table(&self, label: impl Into<String>) -> Result<CcdfTable> {
        if self.total == 0 {
            return Err(Error::InvalidInput("CCDF needs at least one sample".into()));
        }
        Ok(CcdfTable {
            label: label.into(),
            thresholds_db: self.thresholds_db.clone(),
            probabilities: self
                .exceed
                .iter()
                .map(|&c| c as f64 / self.total as f64)
                .collect(),
        })
    }
}

/// Empirical `P(PAPR > threshold)` on each threshold.
pub fn ccdf(samples: &[PaprSample], thresholds_db: &[f64]) -> Result<CcdfTable> {
    let mut counter = CcdfCounter::new(thresholds_db.to_vec());
    samples.iter().for_each(|s| counter.add(*s));
    counter.table("")
}

/// Smallest observed PAPR `x` with `P(PAPR > x) <= probability`.
pub fn papr_at_ccdf(samples: &[PaprSample], probability: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("no PAPR samples".into()));
    }
    let mut v: Vec<f64> = samples.iter().map(|s| s.value_db).collect();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let allowed = probability * n as f64;
    for &x in &v {
        let above = n - v.partition_point(|&y| y <= x);
        if above as f64 <= allowed {
            return Ok(x);
        }
    }
    Ok(v[n - 1])
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsdEstimate {
    pub label: String,
    /// Normalized frequency of each bin in cycles/sample, FFT order.
    pub frequencies: Vec<f64>,
    /// Window-corrected power per bin; the mean over bins equals the mean
    /// sample power of the input.
    pub power: Vec<f64>,
    /// `power` in dB relative to its maximum bin.
    pub db: Vec<f64>,
}

impl PsdEstimate {
    pub fn mean_power(&self, bins: impl IntoIterator<Item = usize>) -> f64 {
        let (sum, n) = bins
            .into_iter()
            .fold((0.0, 0usize), |(s, n), k| (s + self.power[k], n + 1));
        sum / n.max(1) as f64
    }

    /// Mean linear power over `bins` in dB relative to the peak bin.
    pub fn mean_db(&self, bins: impl IntoIterator<Item = usize>) -> f64 {
        let peak = self.power.iter().cloned().fold(0.0, f64::max);
        10.0 * (self.mean_power(bins) / peak).log10()
    }
}

pub const DEFAULT_PSD_SEGMENT: usize = 256;
pub const DEFAULT_PSD_OVERLAP: f64 = 0.5;

/// Welch estimate over the concatenated frames (cyclic prefixes included).
pub fn psd_welch(frames: &[TimeFrame], segment: usize, overlap: f64) -> Result<PsdEstimate> {
    let samples: Vec<Complex64> = frames
        .iter()
        .flat_map(|f| f.samples.iter().copied())
        .collect();
    psd_welch_samples(&samples, segment, overlap)
}

/// Averaged Hann-windowed periodogram.
pub fn psd_welch_samples(x: &[Complex64], segment: usize, overlap: f64) -> Result<PsdEstimate> {
    if segment == 0 || !segment.is_power_of_two() {
        return Err(Error::Sizing(format!(
            "PSD segment {segment} is not a power of two"
        )));
    }
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::InvalidInput(format!(
            "overlap {overlap} outside [0, 1)"
        )));
    }
    if x.len() < segment {
        return Err(Error::Sizing(format!(
            "{} samples are fewer than one PSD segment of {segment}",
            x.len()
        )));
    }
    let window = hann(segment);
    let window_power: f64 = window.iter().map(|w| w * w).sum::<f64>() / segment as f64;
    let hop = ((segment as f64 * (1.0 - overlap)).round() as usize).max(1);
    let mut acc = vec![0.0; segment];
    let mut count = 0usize;
    let mut start = 0;
    while start + segment <= x.len() {
        let windowed: Vec<Complex64> = x[start..start + segment]
            .iter()
            .zip(&window)
            .map(|(s, w)| s * w)
            .collect();
        for (a, v) in acc.iter_mut().zip(numerics::fft(&windowed)?) {
            *a += v.norm_sqr();
        }
        count += 1;
        start += hop;
    }
    let power: Vec<f64> = acc
        .iter()
        .map(|a| a / (count as f64 * window_power))
        .collect();
    let peak = power.iter().cloned().fold(0.0, f64::max);
    let db = power
        .iter()
        .map(|p| {
            if peak > 0.0 {
                10.0 * (p / peak).log10()
            } else {
                0.0
            }
        })
        .collect();
    Ok(PsdEstimate {
        label: String::new(),
        frequencies: (0..segment).map(|k| k as f64 / segment as f64).collect(),
        power,
        db,
    })
}

/// Fraction of positions where the two streams differ.
pub fn ber(tx: &[bool], rx: &[bool]) -> Result<f64> {
    if tx.len() != rx.len() {
        return Err(Error::LengthMismatch {
            expected: tx.len(),
            actual: rx.len(),
        });
    }
    if tx.is_empty() {
        return Err(Error::InvalidInput("BER of an empty stream".into()));
    }
    Ok(bit_errors(tx, rx) as f64 / tx.len() as f64)
}

pub fn bit_errors(tx: &[bool], rx: &[bool]) -> usize {
    tx.iter().zip(rx).filter(|(a, b)| a != b).count()
}
