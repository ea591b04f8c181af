//! Experiment plans, their `key = value` configuration files, and the CCDF,
//! PSD and BER runners that emit CSV.

mod config;
mod experiment;
mod format;

pub use config::{Column, ExperimentKind, ExperimentPlan, Scheme};
pub use experiment::{
    papr_samples, run, run_ber, run_ccdf, run_psd, trial_bit_errors, trial_bits, trial_frame,
    write_ber_csv, write_ccdf_csv, write_psd_csv, BerReport, CcdfReport, PsdReport,
};
pub use format::format_sig6;
