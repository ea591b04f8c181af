use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mc_papr::cli::{self, ExperimentKind, ExperimentPlan};
use mc_papr::Error;

/// MC-CDMA PAPR reduction experiments (DCT/DWT precoding + mu-law companding).
///
/// SNR values are per time-domain sample of the transmitted waveform, i.e.
/// measured after the compander.
#[derive(Parser, Debug)]
#[command(name = "mc-papr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// PAPR CCDF per scheme and mu.
    Ccdf(Args),
    /// Welch power spectral density per scheme.
    Psd(Args),
    /// Bit error rate versus SNR per scheme.
    Ber(Args),
}

#[derive(clap::Args, Debug)]
struct Args {
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// CSV destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Schemes to compare: original, companding, dct+companding, dwt+companding, dct, dwt.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    scheme: Vec<String>,
    /// Companding factors.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    mu: Vec<f64>,
    /// Extra `key=value` overrides, applied after the config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn build_plan(kind: ExperimentKind, args: Args) -> Result<ExperimentPlan, Error> {
    let mut plan = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            ExperimentPlan::from_config_str(kind, &text)?
        }
        None => ExperimentPlan::new(kind),
    };
    for kv in &args.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got '{kv}'")))?;
        plan.set(k.trim(), v.trim())?;
    }
    if let Some(seed) = args.seed {
        plan.base.seed = seed;
    }
    if let Some(trials) = args.trials {
        plan.trials = trials;
    }
    if let Some(out) = args.out {
        plan.output = Some(out);
    }
    if !args.scheme.is_empty() {
        plan.schemes = args
            .scheme
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?;
    }
    if !args.mu.is_empty() {
        plan.mus = args.mu;
    }
    plan.validate()?;
    Ok(plan)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::Ccdf(a) => (ExperimentKind::Ccdf, a),
        Command::Psd(a) => (ExperimentKind::Psd, a),
        Command::Ber(a) => (ExperimentKind::Ber, a),
    };
    let result = build_plan(kind, args).and_then(|plan| cli::run(&plan));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mc-papr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
