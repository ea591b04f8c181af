use std::fs::File;
use std::io::{self, BufWriter, Write};

use rand::Rng;
use rayon::prelude::*;

use crate::chain::{TimeFrame, Transceiver};
use crate::channel::{apply_channel, ChannelKind, ChannelSpec};
use crate::cli::config::{ExperimentKind, ExperimentPlan};
use crate::cli::format::format_sig6;
use crate::metrics::{self, CcdfCounter, CcdfTable, PaprSample, PsdEstimate};
use crate::seed;
use crate::{Error, Result};

/// Bits for every user in one trial, drawn from the trial's own stream.
pub fn trial_bits(tx: &Transceiver, master: u64, trial: u64) -> Vec<Vec<bool>> {
    let cfg = tx.config();
    (0..cfg.users)
        .map(|user| {
            let mut rng = seed::rng_for(master, &[seed::stream::BITS, trial, user as u64]);
            (0..cfg.bits_per_frame()).map(|_| rng.random()).collect()
        })
        .collect()
}

/// The transmitted frame of one trial. Trial `t` occupies symbol slot
/// `t mod n_symbols`, which selects the spreading-code window.
pub fn trial_frame(
    tx: &Transceiver,
    master: u64,
    trial: u64,
) -> Result<(Vec<Vec<bool>>, TimeFrame)> {
    let bits = trial_bits(tx, master, trial);
    let slices: Vec<&[bool]> = bits.iter().map(Vec::as_slice).collect();
    let slot = (trial % tx.config().n_symbols as u64) as usize;
    let frame = tx.transmit_frame(&slices, slot)?;
    Ok((bits, frame))
}

/// Per-frame PAPR for trials `0..trials`, in trial order.
pub fn papr_samples(tx: &Transceiver, master: u64, trials: usize) -> Result<Vec<PaprSample>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| trial_frame(tx, master, t).and_then(|(_, f)| metrics::papr_db(&f)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct CcdfReport {
    pub tables: Vec<CcdfTable>,
    pub samples: Vec<Vec<PaprSample>>,
}

impl CcdfReport {
    /// PAPR at which each column's CCDF falls to `probability`.
    pub fn papr_at(&self, probability: f64) -> Result<Vec<(String, f64)>> {
        self.tables
            .iter()
            .zip(&self.samples)
            .map(|(t, s)| Ok((t.label.clone(), metrics::papr_at_ccdf(s, probability)?)))
            .collect()
    }
}

pub fn run_ccdf(plan: &ExperimentPlan) -> Result<CcdfReport> {
    plan.validate()?;
    let mut tables = Vec::new();
    let mut all = Vec::new();
    for col in plan.columns() {
        let tx = Transceiver::new(plan.column_config(&col))?;
        let samples = papr_samples(&tx, plan.base.seed, plan.trials)?;
        let mut counter = CcdfCounter::new(plan.thresholds_db.clone());
        samples.iter().for_each(|s| counter.add(*s));
        tables.push(counter.table(col.label)?);
        all.push(samples);
    }
    Ok(CcdfReport {
        tables,
        samples: all,
    })
}

pub fn write_ccdf_csv<W: Write>(report: &CcdfReport, mut w: W) -> io::Result<()> {
    let labels: Vec<&str> = report.tables.iter().map(|t| t.label.as_str()).collect();
    writeln!(w, "threshold_db,{}", labels.join(","))?;
    let Some(first) = report.tables.first() else {
        return Ok(());
    };
    for (i, th) in first.thresholds_db.iter().enumerate() {
        let row: Vec<String> = report
            .tables
            .iter()
            .map(|t| format_sig6(t.probabilities[i]))
            .collect();
        writeln!(w, "{},{}", format_sig6(*th), row.join(","))?;
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct PsdReport {
    pub estimates: Vec<PsdEstimate>,
    /// Welch bins covering the occupied subcarriers.
    pub occupied_bins: Vec<usize>,
}

impl PsdReport {
    pub fn out_of_band_bins(&self) -> Vec<usize> {
        let n = self.estimates.first().map_or(0, |e| e.power.len());
        (0..n).filter(|k| !self.occupied_bins.contains(k)).collect()
    }
}

pub fn run_psd(plan: &ExperimentPlan) -> Result<PsdReport> {
    plan.validate()?;
    let mut estimates = Vec::new();
    for col in plan.columns() {
        let tx = Transceiver::new(plan.column_config(&col))?;
        let frames: Vec<TimeFrame> = (0..plan.trials as u64)
            .into_par_iter()
            .map(|t| trial_frame(&tx, plan.base.seed, t).map(|(_, f)| f))
            .collect::<Result<_>>()?;
        let mut est = metrics::psd_welch(&frames, plan.psd_segment, plan.psd_overlap)?;
        est.label = col.label;
        estimates.push(est);
    }
    // subcarrier k sits at k / ifft_size cycles/sample
    let band_edge = plan.base.subcarriers as f64 / plan.base.ifft_size as f64;
    let occupied_bins = (0..plan.psd_segment)
        .filter(|&k| (k as f64 / plan.psd_segment as f64) < band_edge)
        .collect();
    Ok(PsdReport {
        estimates,
        occupied_bins,
    })
}

pub fn write_psd_csv<W: Write>(report: &PsdReport, mut w: W) -> io::Result<()> {
    let labels: Vec<&str> = report.estimates.iter().map(|e| e.label.as_str()).collect();
    writeln!(w, "bin,{}", labels.join(","))?;
    let n = report.estimates.first().map_or(0, |e| e.db.len());
    for k in 0..n {
        let row: Vec<String> = report
            .estimates
            .iter()
            .map(|e| format_sig6(e.db[k]))
            .collect();
        writeln!(w, "{k},{}", row.join(","))?;
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct BerReport {
    pub snr_db: Vec<f64>,
    pub labels: Vec<String>,
    /// `errors[column][snr]`
    pub errors: Vec<Vec<u64>>,
    pub bits_per_point: u64,
}

impl BerReport {
    pub fn ber(&self, column: usize, snr_index: usize) -> f64 {
        self.errors[column][snr_index] as f64 / self.bits_per_point as f64
    }
}

/// Bit errors over all users for one trial.
pub fn trial_bit_errors(
    tx: &Transceiver,
    spec: &ChannelSpec,
    master: u64,
    trial: u64,
) -> Result<u64> {
    let (bits, frame) = trial_frame(tx, master, trial)?;
    let mut rng = spec.rng_for_trial(trial);
    let rx = apply_channel(&frame, spec, &mut rng);
    let slot = (trial % tx.config().n_symbols as u64) as usize;
    let mut errors = 0;
    for (user, sent) in bits.iter().enumerate() {
        let got = tx.receive_frame(&rx, slot, user)?;
        errors += metrics::bit_errors(sent, &got) as u64;
    }
    Ok(errors)
}

/// BER against per-sample SNR. Every scheme and SNR point sees the same
/// bits and the same unit noise draws (scaled to the SNR), so differences
/// between columns are paired.
pub fn run_ber(plan: &ExperimentPlan) -> Result<BerReport> {
    plan.validate()?;
    let mut labels = Vec::new();
    let mut errors = Vec::new();
    for col in plan.columns() {
        let tx = Transceiver::new(plan.column_config(&col))?;
        let mut per_snr = Vec::with_capacity(plan.snr_db.len());
        for &snr_db in &plan.snr_db {
            let spec = ChannelSpec {
                kind: plan.channel,
                snr_db: if plan.channel == ChannelKind::Ideal {
                    f64::INFINITY
                } else {
                    snr_db
                },
                seed: plan.base.seed,
            };
            let counts: Vec<u64> = (0..plan.trials as u64)
                .into_par_iter()
                .map(|t| trial_bit_errors(&tx, &spec, plan.base.seed, t))
                .collect::<Result<_>>()?;
            per_snr.push(counts.iter().sum());
        }
        labels.push(col.label);
        errors.push(per_snr);
    }
    Ok(BerReport {
        snr_db: plan.snr_db.clone(),
        labels,
        errors,
        bits_per_point: (plan.trials * plan.base.bits_per_frame() * plan.base.users) as u64,
    })
}

pub fn write_ber_csv<W: Write>(report: &BerReport, mut w: W) -> io::Result<()> {
    writeln!(w, "snr_db,{}", report.labels.join(","))?;
    for (j, snr) in report.snr_db.iter().enumerate() {
        let row: Vec<String> = (0..report.labels.len())
            .map(|c| format_sig6(report.ber(c, j)))
            .collect();
        writeln!(w, "{},{}", format_sig6(*snr), row.join(","))?;
    }
    Ok(())
}

/// Run the plan and write its CSV to `plan.output`, or stdout when unset.
pub fn run(plan: &ExperimentPlan) -> Result<()> {
    // open the sink before running the experiment
    let mut sink: Box<dyn Write> = match &plan.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match plan.experiment {
        ExperimentKind::Ccdf => write_ccdf_csv(&run_ccdf(plan)?, &mut sink)?,
        ExperimentKind::Psd => write_psd_csv(&run_psd(plan)?, &mut sink)?,
        ExperimentKind::Ber => write_ber_csv(&run_ber(plan)?, &mut sink)?,
    }
    sink.flush().map_err(Error::from)
}
