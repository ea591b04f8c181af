use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::chain::{CompanderConfig, Precoder, SystemConfig};
use crate::channel::ChannelKind;
use crate::cli::format::format_sig6;
use crate::metrics::{DEFAULT_PSD_OVERLAP, DEFAULT_PSD_SEGMENT};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Ccdf,
    Psd,
    Ber,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::Ccdf => "ccdf",
            ExperimentKind::Psd => "psd",
            ExperimentKind::Ber => "ber",
        })
    }
}

/// A transmitter variant under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Original,
    Companding,
    DctCompanding,
    DwtCompanding,
    /// DCT precoding with the compander off.
    Dct,
    /// Haar DWT precoding with the compander off.
    Dwt,
}

impl Scheme {
    pub fn precoder(self) -> Precoder {
        match self {
            Scheme::Original | Scheme::Companding => Precoder::None,
            Scheme::DctCompanding | Scheme::Dct => Precoder::Dct,
            Scheme::DwtCompanding | Scheme::Dwt => Precoder::Dwt,
        }
    }

    pub fn is_companded(self) -> bool {
        matches!(
            self,
            Scheme::Companding | Scheme::DctCompanding | Scheme::DwtCompanding
        )
    }

    fn column_prefix(self) -> &'static str {
        match self {
            Scheme::Original => "original",
            Scheme::Companding => "comp",
            Scheme::DctCompanding | Scheme::Dct => "dct",
            Scheme::DwtCompanding | Scheme::Dwt => "dwt",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Original => "original",
            Scheme::Companding => "companding",
            Scheme::DctCompanding => "dct+companding",
            Scheme::DwtCompanding => "dwt+companding",
            Scheme::Dct => "dct",
            Scheme::Dwt => "dwt",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "original" => Ok(Scheme::Original),
            "companding" | "comp" => Ok(Scheme::Companding),
            "dct+companding" | "dct+comp" => Ok(Scheme::DctCompanding),
            "dwt+companding" | "dwt+comp" => Ok(Scheme::DwtCompanding),
            "dct" => Ok(Scheme::Dct),
            "dwt" => Ok(Scheme::Dwt),
            other => Err(Error::Config(format!("unknown scheme '{other}'"))),
        }
    }
}

/// One output column: a scheme, and the mu it runs at when companded.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub label: String,
    pub scheme: Scheme,
    pub mu: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub experiment: ExperimentKind,
    pub base: SystemConfig,
    pub schemes: Vec<Scheme>,
    pub mus: Vec<f64>,
    pub renormalize: bool,
    pub thresholds_db: Vec<f64>,
    pub snr_db: Vec<f64>,
    pub channel: ChannelKind,
    pub trials: usize,
    pub psd_segment: usize,
    pub psd_overlap: f64,
    pub output: Option<PathBuf>,
}

fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|k| start + k as f64 * step).collect()
}

impl ExperimentPlan {
    pub fn new(experiment: ExperimentKind) -> Self {
        Self {
            experiment,
            base: SystemConfig::default(),
            schemes: vec![
                Scheme::Original,
                Scheme::Companding,
                Scheme::DctCompanding,
                Scheme::DwtCompanding,
            ],
            mus: vec![2.0, 3.0, 5.0],
            renormalize: false,
            thresholds_db: grid(0.0, 20.0, 0.25),
            snr_db: grid(-30.0, -12.0, 2.0),
            channel: ChannelKind::Awgn,
            trials: match experiment {
                ExperimentKind::Ccdf => 10_000,
                ExperimentKind::Psd => 2_048,
                ExperimentKind::Ber => 20_000,
            },
            psd_segment: DEFAULT_PSD_SEGMENT,
            psd_overlap: DEFAULT_PSD_OVERLAP,
            output: None,
        }
    }

    /// Parse a `key = value` file on top of the defaults. `#` starts a
    /// comment; blank lines are ignored.
    pub fn from_config_str(experiment: ExperimentKind, text: &str) -> Result<Self> {
        let mut plan = Self::new(experiment);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected 'key = value'", lineno + 1))
            })?;
            plan.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(plan)
    }

    /// Apply a single configuration key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let b = &mut self.base;
        match key {
            "subcarriers" => b.subcarriers = parse(key, value)?,
            "ifft_size" => b.ifft_size = parse(key, value)?,
            "cp_len" => b.cp_len = parse(key, value)?,
            "symbols" | "n_symbols" => b.n_symbols = parse(key, value)?,
            "modulation" => b.modulation = value.parse()?,
            "code" => b.code.family = value.parse()?,
            "pn_degree" => b.code.pn_degree = parse(key, value)?,
            "gold_degree" => b.code.gold_degree = parse(key, value)?,
            "code_offset" => b.code.offset = parse(key, value)?,
            "dwt_levels" => b.dwt_levels = parse(key, value)?,
            "users" => b.users = parse(key, value)?,
            "seed" => b.seed = parse(key, value)?,
            "schemes" | "scheme" => {
                self.schemes = list(value).map(str::parse).collect::<Result<_>>()?
            }
            "mu" => self.mus = parse_values(key, value)?,
            "renormalize" => self.renormalize = parse_bool(key, value)?,
            "thresholds" | "thresholds_db" => self.thresholds_db = parse_values(key, value)?,
            "snr" | "snr_db" => self.snr_db = parse_values(key, value)?,
            "channel" => self.channel = value.parse()?,
            "trials" => self.trials = parse(key, value)?,
            "psd_segment" => self.psd_segment = parse(key, value)?,
            "psd_overlap" => self.psd_overlap = parse(key, value)?,
            "out" | "output" => self.output = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.schemes.is_empty() {
            return fail("scheme list is empty");
        }
        if self.schemes.iter().any(|s| s.is_companded()) && self.mus.is_empty() {
            return fail("mu list is empty");
        }
        if self.mus.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
            return fail("every mu must be a positive number");
        }
        if self.trials == 0 {
            return fail("trials must be at least 1");
        }
        match self.experiment {
            ExperimentKind::Ccdf if self.thresholds_db.is_empty() => {
                return fail("threshold grid is empty")
            }
            ExperimentKind::Ber if self.snr_db.is_empty() => return fail("SNR grid is empty"),
            _ => {}
        }
        for col in self.columns() {
            self.column_config(&col).validate()?;
        }
        Ok(())
    }

    /// Output columns, scheme-major then mu.
    pub fn columns(&self) -> Vec<Column> {
        let mut cols = Vec::new();
        for &scheme in &self.schemes {
            if scheme.is_companded() {
                for &mu in &self.mus {
                    cols.push(Column {
                        label: format!("{}_mu{}", scheme.column_prefix(), format_sig6(mu)),
                        scheme,
                        mu: Some(mu),
                    });
                }
            } else {
                cols.push(Column {
                    label: scheme.column_prefix().to_string(),
                    scheme,
                    mu: None,
                });
            }
        }
        cols
    }

    pub fn column_config(&self, col: &Column) -> SystemConfig {
        SystemConfig {
            precoder: col.scheme.precoder(),
            compander: col.mu.map(|mu| CompanderConfig {
                mu,
                renormalize: self.renormalize,
            }),
            ..self.base.clone()
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid value '{value}' for '{key}'")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Config(format!(
            "invalid boolean '{value}' for '{key}'"
        ))),
    }
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
}

/// A comma/space separated list, or an inclusive `start:stop:step` range.
fn parse_values(key: &str, value: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = value.split(':').map(str::trim).collect();
    if parts.len() == 3 {
        let start: f64 = parse(key, parts[0])?;
        let stop: f64 = parse(key, parts[1])?;
        let step: f64 = parse(key, parts[2])?;
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(Error::Config(format!(
                "invalid range '{value}' for '{key}'"
            )));
        }
        return Ok(grid(start, stop, step));
    }
    list(value).map(|v| parse(key, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeFamily;
    use crate::mapping::Modulation;

    #[test]
    fn default_plan_columns() {
        let plan = ExperimentPlan::new(ExperimentKind::Ccdf);
        let labels: Vec<String> = plan.columns().into_iter().map(|c| c.label).collect();
        assert_eq!(
            labels.join(","),
            "original,comp_mu2,comp_mu3,comp_mu5,dct_mu2,dct_mu3,dct_mu5,dwt_mu2,dwt_mu3,dwt_mu5"
        );
        assert!(plan.validate().is_ok());
        assert_eq!(plan.thresholds_db.len(), 81);
        assert_eq!(plan.thresholds_db[80], 20.0);
    }

    #[test]
    fn parses_config_text() {
        let text = "# comment\nmodulation = qpsk\ncode = gold  # trailing\nmu = 2, 2.5\n\
                    schemes = original, dct\nthresholds = 1:2:0.5\nrenormalize = yes\ntrials=7\n";
        let plan = ExperimentPlan::from_config_str(ExperimentKind::Ccdf, text).unwrap();
        assert_eq!(plan.base.modulation, Modulation::Qpsk);
        assert_eq!(plan.base.code.family, CodeFamily::Gold);
        assert_eq!(plan.mus, vec![2.0, 2.5]);
        assert_eq!(plan.schemes, vec![Scheme::Original, Scheme::Dct]);
        assert_eq!(plan.thresholds_db, vec![1.0, 1.5, 2.0]);
        assert!(plan.renormalize);
        assert_eq!(plan.trials, 7);
        let labels: Vec<String> = plan.columns().into_iter().map(|c| c.label).collect();
        assert_eq!(labels, vec!["original", "dct"]);
    }

    #[test]
    fn rejects_bad_config() {
        for text in [
            "nonsense",
            "colour = red",
            "trials = -1",
            "mu = a",
            "snr = 5:1:1",
        ] {
            let err = ExperimentPlan::from_config_str(ExperimentKind::Ber, text).unwrap_err();
            assert!(matches!(err, Error::Config(_)), "{text}");
            assert_eq!(err.exit_code(), 2);
        }
        let mut plan = ExperimentPlan::new(ExperimentKind::Ccdf);
        plan.trials = 0;
        assert!(plan.validate().is_err());
        plan.trials = 1;
        plan.schemes.clear();
        assert!(plan.validate().is_err());
        let mut plan = ExperimentPlan::new(ExperimentKind::Ccdf);
        plan.set("ifft_size", "100").unwrap();
        assert!(plan.validate().is_err());
    }
}
