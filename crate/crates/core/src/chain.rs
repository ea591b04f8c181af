//! MC-CDMA transmitter and receiver.
//!
//! Transmit, per symbol period: map bits, spread each user's symbol over
//! `subcarriers` chips, sum users, precode (identity, DCT-II or Haar DWT),
//! load the chips onto the lowest `subcarriers` bins of an `ifft_size`-point
//! IFFT, prepend the cyclic prefix and optionally mu-law compress the frame.
//! The receiver runs the same steps backwards. One spread symbol fills one
//! frame, so `n` symbols produce `n` frames.
//!
//! Spreading codes shorter or longer than the spreading factor are read
//! cyclically: symbol `i` uses chips `i * Nc .. (i + 1) * Nc` of the
//! periodic sequence.

use std::fmt;
use std::str::FromStr;

use crate::codes::{self, ChipSequence, CodeFamily, LfsrSpec};
use crate::companding::{self, CompanderParams};
use crate::mapping::{self, Modulation};
use crate::numerics::{self, TransformMatrix};
use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precoder {
    None,
    Dct,
    Dwt,
}

impl fmt::Display for Precoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precoder::None => "none",
            Precoder::Dct => "dct",
            Precoder::Dwt => "dwt",
        })
    }
}

impl FromStr for Precoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" | "off" | "identity" => Ok(Precoder::None),
            "dct" => Ok(Precoder::Dct),
            "dwt" | "haar" => Ok(Precoder::Dwt),
            other => Err(Error::Config(format!("unknown precoder '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompanderConfig {
    pub mu: f64,
    /// Rescale the companded frame so its mean power equals the input's.
    pub renormalize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeConfig {
    pub family: CodeFamily,
    pub pn_degree: u32,
    pub gold_degree: u32,
    /// User `k` gets code index `k + offset`: a cyclic shift for PN, a
    /// family member for Gold, a row for Walsh-Hadamard.
    pub offset: usize,
}

impl Default for CodeConfig {
    fn default() -> Self {
        Self {
            family: CodeFamily::Pn,
            pn_degree: 7,
            gold_degree: 5,
            offset: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Spreading factor, equal to the number of occupied subcarriers.
    pub subcarriers: usize,
    pub ifft_size: usize,
    pub cp_len: usize,
    /// Symbols (and therefore frames) per call to [`Transceiver::transmit`].
    pub n_symbols: usize,
    pub modulation: Modulation,
    pub code: CodeConfig,
    pub precoder: Precoder,
    pub dwt_levels: u32,
    pub compander: Option<CompanderConfig>,
    pub users: usize,
    pub seed: u64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            subcarriers: 64,
            ifft_size: 128,
            cp_len: 16,
            n_symbols: 512,
            modulation: Modulation::Bpsk,
            code: CodeConfig::default(),
            precoder: Precoder::None,
            dwt_levels: 6,
            compander: None,
            users: 1,
            seed: 1,
        }
    }
}

impl SystemConfig {
    pub fn frame_len(&self) -> usize {
        self.ifft_size + self.cp_len
    }

    pub fn bits_per_frame(&self) -> usize {
        self.modulation.bits_per_symbol()
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.subcarriers == 0 {
            return fail("subcarriers must be positive".into());
        }
        if !self.ifft_size.is_power_of_two() {
            return fail(format!(
                "ifft_size {} is not a power of two",
                self.ifft_size
            ));
        }
        if self.ifft_size < self.subcarriers {
            return fail(format!(
                "ifft_size {} smaller than subcarriers {}",
                self.ifft_size, self.subcarriers
            ));
        }
        if self.cp_len >= self.ifft_size {
            return fail(format!(
                "cp_len {} must be below ifft_size {}",
                self.cp_len, self.ifft_size
            ));
        }
        if self.n_symbols == 0 {
            return fail("n_symbols must be positive".into());
        }
        if self.users == 0 {
            return fail("users must be at least 1".into());
        }
        if self.precoder == Precoder::Dwt
            && (self.dwt_levels == 0
                || self.dwt_levels > numerics::max_haar_levels(self.subcarriers))
        {
            return fail(format!(
                "dwt_levels {} invalid for {} subcarriers (max {})",
                self.dwt_levels,
                self.subcarriers,
                numerics::max_haar_levels(self.subcarriers)
            ));
        }
        if let Some(c) = &self.compander {
            if !(c.mu.is_finite() && c.mu > 0.0) {
                return fail(format!("mu must be positive, got {}", c.mu));
            }
        }
        let last_index = self.code.offset + self.users - 1;
        let family_size = match self.code.family {
            CodeFamily::Pn => (1usize << self.code.pn_degree.min(24)) - 1,
            CodeFamily::Gold => codes::gold_family_size(self.code.gold_degree.min(24)),
            CodeFamily::WalshHadamard => {
                if !self.subcarriers.is_power_of_two() {
                    return fail(format!(
                        "Walsh codes need a power-of-two spreading factor, got {}",
                        self.subcarriers
                    ));
                }
                self.subcarriers
            }
        };
        if last_index >= family_size {
            return fail(format!(
                "code index {last_index} exceeds the {} family size {family_size}",
                self.code.family
            ));
        }
        Ok(())
    }
}

/// Receiver-side knowledge of the compander applied to a frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompanderState {
    pub params: CompanderParams,
    /// Power-restoring gain applied after compression (1 when disabled).
    pub gain: f64,
}

/// One multicarrier symbol including its cyclic prefix.
///
/// `compander` and `fading` carry genie side information that the receiver
/// uses to invert the compander and equalize flat fading.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeFrame {
    pub samples: Vec<Complex64>,
    pub cp_len: usize,
    pub compander: Option<CompanderState>,
    pub fading: Option<Complex64>,
}

impl TimeFrame {
    pub fn body(&self) -> &[Complex64] {
        &self.samples[self.cp_len..]
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

pub fn add_cyclic_prefix(body: &[Complex64], cp_len: usize) -> Result<TimeFrame> {
    if cp_len >= body.len() && !(cp_len == 0 && !body.is_empty()) {
        return Err(Error::Sizing(format!(
            "cyclic prefix {cp_len} must be shorter than body {}",
            body.len()
        )));
    }
    let mut samples = Vec::with_capacity(body.len() + cp_len);
    samples.extend_from_slice(&body[body.len() - cp_len..]);
    samples.extend_from_slice(body);
    Ok(TimeFrame {
        samples,
        cp_len,
        compander: None,
        fading: None,
    })
}

pub fn remove_cyclic_prefix(frame: &TimeFrame) -> Result<Vec<Complex64>> {
    if frame.cp_len >= frame.samples.len() {
        return Err(Error::Sizing(format!(
            "cyclic prefix {} does not fit frame of {}",
            frame.cp_len,
            frame.samples.len()
        )));
    }
    Ok(frame.body().to_vec())
}

/// Sample-wise sum of synchronous, uncompanded user frames.
pub fn combine_users(frames: &[TimeFrame]) -> Result<TimeFrame> {
    let first = frames
        .first()
        .ok_or_else(|| Error::InvalidInput("no user frames to combine".into()))?;
    if frames.iter().any(|f| f.compander.is_some()) {
        return Err(Error::InvalidInput(
            "companded frames cannot be combined; compand the sum instead".into(),
        ));
    }
    let mut out = first.clone();
    for f in &frames[1..] {
        if f.samples.len() != out.samples.len() || f.cp_len != out.cp_len {
            return Err(Error::LengthMismatch {
                expected: out.samples.len(),
                actual: f.samples.len(),
            });
        }
        for (o, s) in out.samples.iter_mut().zip(&f.samples) {
            *o += s;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum PrecoderImpl {
    Identity,
    Dct(TransformMatrix),
    Haar(u32),
}

/// A configured transmitter/receiver pair with its code book and precoder
/// built once.
#[derive(Debug, Clone)]
pub struct Transceiver {
    cfg: SystemConfig,
    base_codes: Vec<ChipSequence>,
    precoder: PrecoderImpl,
}

impl Transceiver {
    pub fn new(cfg: SystemConfig) -> Result<Self> {
        cfg.validate()?;
        let base_codes = build_codes(&cfg)?;
        let precoder = match cfg.precoder {
            Precoder::None => PrecoderImpl::Identity,
            Precoder::Dct => PrecoderImpl::Dct(TransformMatrix::dct(cfg.subcarriers)?),
            Precoder::Dwt => PrecoderImpl::Haar(cfg.dwt_levels),
        };
        Ok(Self {
            cfg,
            base_codes,
            precoder,
        })
    }

    pub fn config(&self) -> &SystemConfig {
        &self.cfg
    }

    /// Spreading code of `user` for the symbol at `symbol_index`.
    pub fn user_code(&self, user: usize, symbol_index: usize) -> ChipSequence {
        let base = &self.base_codes[user];
        let nc = self.cfg.subcarriers;
        let p = base.len();
        base.cyclic_window((symbol_index % p) * (nc % p) % p, nc)
    }

    /// `Q = H P`.
    pub fn precode(&self, chips: &[Complex64]) -> Result<Vec<Complex64>> {
        match &self.precoder {
            PrecoderImpl::Identity => Ok(chips.to_vec()),
            PrecoderImpl::Dct(m) => m.forward(chips),
            PrecoderImpl::Haar(levels) => numerics::haar_dwt(chips, *levels),
        }
    }

    /// `P = H^T Q`.
    pub fn unprecode(&self, coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
        match &self.precoder {
            PrecoderImpl::Identity => Ok(coeffs.to_vec()),
            PrecoderImpl::Dct(m) => m.inverse(coeffs),
            PrecoderImpl::Haar(levels) => numerics::haar_idwt(coeffs, *levels),
        }
    }

    /// Build the frame for one symbol period. `user_bits[k]` holds exactly
    /// one symbol's worth of bits for user `k`.
    pub fn transmit_frame(&self, user_bits: &[&[bool]], symbol_index: usize) -> Result<TimeFrame> {
        if user_bits.len() != self.cfg.users {
            return Err(Error::LengthMismatch {
                expected: self.cfg.users,
                actual: user_bits.len(),
            });
        }
        let nc = self.cfg.subcarriers;
        let mut chips = vec![Complex64::new(0.0, 0.0); nc];
        for (user, bits) in user_bits.iter().enumerate() {
            if bits.len() != self.cfg.bits_per_frame() {
                return Err(Error::LengthMismatch {
                    expected: self.cfg.bits_per_frame(),
                    actual: bits.len(),
                });
            }
            let block = mapping::map_bits(bits, self.cfg.modulation)?;
            let spread = codes::spread(&block.symbols, &self.user_code(user, symbol_index))?;
            for (acc, c) in chips.iter_mut().zip(spread) {
                *acc += c;
            }
        }
        self.modulate_chips(&chips)
    }

    /// Precode, IFFT, add CP and compand an already spread chip vector.
    pub fn modulate_chips(&self, chips: &[Complex64]) -> Result<TimeFrame> {
        let coeffs = self.precode(chips)?;
        let mut bins = vec![Complex64::new(0.0, 0.0); self.cfg.ifft_size];
        bins[..coeffs.len()].copy_from_slice(&coeffs);
        let body = numerics::ifft(&bins)?;
        let mut frame = add_cyclic_prefix(&body, self.cfg.cp_len)?;
        if let Some(c) = &self.cfg.compander {
            let s = companding::average_amplitude(&frame.samples)?;
            let params = CompanderParams::new(c.mu, s)?;
            let mut v = companding::mu_compress(&frame.samples, &params)?;
            let gain = if c.renormalize {
                companding::power_restoring_gain(&frame.samples, &v)?
            } else {
                1.0
            };
            if gain != 1.0 {
                v.iter_mut().for_each(|x| *x *= gain);
            }
            frame.samples = v;
            frame.compander = Some(CompanderState { params, gain });
        }
        Ok(frame)
    }

    /// Single-user transmit of `n_symbols` symbols.
    pub fn transmit(&self, bits: &[bool]) -> Result<Vec<TimeFrame>> {
        if self.cfg.users != 1 {
            return Err(Error::Config(format!(
                "transmit() is single-user; configuration has {} users",
                self.cfg.users
            )));
        }
        self.transmit_users(&[bits.to_vec()])
    }

    pub fn transmit_users(&self, bits_per_user: &[Vec<bool>]) -> Result<Vec<TimeFrame>> {
        let bps = self.cfg.bits_per_frame();
        let expected = bps * self.cfg.n_symbols;
        if bits_per_user.len() != self.cfg.users {
            return Err(Error::LengthMismatch {
                expected: self.cfg.users,
                actual: bits_per_user.len(),
            });
        }
        if let Some(bad) = bits_per_user.iter().find(|b| b.len() != expected) {
            return Err(Error::LengthMismatch {
                expected,
                actual: bad.len(),
            });
        }
        (0..self.cfg.n_symbols)
            .map(|i| {
                let slices: Vec<&[bool]> = bits_per_user
                    .iter()
                    .map(|b| &b[i * bps..(i + 1) * bps])
                    .collect();
                self.transmit_frame(&slices, i)
            })
            .collect()
    }

    /// Equalize and expand a received frame, strip the CP and return the
    /// `subcarriers` chip estimates after inverse precoding.
    pub fn demodulate_chips(&self, frame: &TimeFrame) -> Result<Vec<Complex64>> {
        if frame.samples.len() != self.cfg.frame_len() || frame.cp_len != self.cfg.cp_len {
            return Err(Error::LengthMismatch {
                expected: self.cfg.frame_len(),
                actual: frame.samples.len(),
            });
        }
        let mut samples = frame.samples.clone();
        if let Some(h) = frame.fading {
            samples.iter_mut().for_each(|x| *x /= h);
        }
        if let Some(state) = &frame.compander {
            if state.gain != 1.0 {
                samples.iter_mut().for_each(|x| *x /= state.gain);
            }
            samples = companding::mu_expand(&samples, &state.params)?;
        }
        let bins = numerics::fft(&samples[self.cfg.cp_len..])?;
        self.unprecode(&bins[..self.cfg.subcarriers])
    }

    pub fn receive_frame(
        &self,
        frame: &TimeFrame,
        symbol_index: usize,
        user: usize,
    ) -> Result<Vec<bool>> {
        let symbols = self.receive_symbols(frame, symbol_index, user)?;
        Ok(mapping::demap_symbols(&symbols, self.cfg.modulation))
    }

    /// Soft symbol estimate for one user.
    pub fn receive_symbols(
        &self,
        frame: &TimeFrame,
        symbol_index: usize,
        user: usize,
    ) -> Result<Vec<Complex64>> {
        if user >= self.cfg.users {
            return Err(Error::InvalidInput(format!("user {user} not configured")));
        }
        let chips = self.demodulate_chips(frame)?;
        codes::despread(&chips, &self.user_code(user, symbol_index))
    }

    pub fn receive(&self, frames: &[TimeFrame]) -> Result<Vec<bool>> {
        self.receive_user(frames, 0)
    }

    pub fn receive_user(&self, frames: &[TimeFrame], user: usize) -> Result<Vec<bool>> {
        let mut bits = Vec::with_capacity(frames.len() * self.cfg.bits_per_frame());
        for (i, frame) in frames.iter().enumerate() {
            bits.extend(self.receive_frame(frame, i, user)?);
        }
        Ok(bits)
    }
}

fn build_codes(cfg: &SystemConfig) -> Result<Vec<ChipSequence>> {
    let indices = (0..cfg.users).map(|k| k + cfg.code.offset);
    match cfg.code.family {
        CodeFamily::Pn => {
            let m = pn_degree_sequence(cfg.code.pn_degree)?;
            Ok(indices.map(|i| m.rotated(i % m.len())).collect())
        }
        CodeFamily::Gold => {
            let (a, b) = codes::preferred_pair(cfg.code.gold_degree)?;
            indices
                .map(|i| codes::gold_codes(cfg.code.gold_degree, (&a, &b), i))
                .collect()
        }
        CodeFamily::WalshHadamard => {
            let rows = codes::walsh_hadamard(cfg.subcarriers)?;
            Ok(indices.map(|i| rows[i].clone()).collect())
        }
    }
}

fn pn_degree_sequence(degree: u32) -> Result<ChipSequence> {
    codes::pn_sequence(&LfsrSpec::default_for_degree(degree)?)
}

pub fn transmit(cfg: &SystemConfig, bits: &[bool]) -> Result<Vec<TimeFrame>> {
    Transceiver::new(cfg.clone())?.transmit(bits)
}

pub fn receive(cfg: &SystemConfig, frames: &[TimeFrame]) -> Result<Vec<bool>> {
    Transceiver::new(cfg.clone())?.receive(frames)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_bits(n: usize, seed: u64) -> Vec<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.random()).collect()
    }

    #[test]
    fn cyclic_prefix_examples() {
        let body: Vec<Complex64> = (1..=4).map(|v| Complex64::new(v as f64, 0.0)).collect();
        let f = add_cyclic_prefix(&body, 2).unwrap();
        let re: Vec<f64> = f.samples.iter().map(|c| c.re).collect();
        assert_eq!(re, vec![3.0, 4.0, 1.0, 2.0, 3.0, 4.0]);
        assert_eq!(remove_cyclic_prefix(&f).unwrap(), body);
        let id = add_cyclic_prefix(&body, 0).unwrap();
        assert_eq!(id.samples, body);
        assert!(add_cyclic_prefix(&body, 4).is_err());
        assert!(add_cyclic_prefix(&[], 0).is_err());
    }

    #[test]
    fn frame_length_with_defaults() {
        let cfg = SystemConfig::default();
        let frames = transmit(&cfg, &vec![false; 512]).unwrap();
        assert_eq!(frames.len(), 512);
        assert!(frames.iter().all(|f| f.len() == 144));
        // prefix copies the body tail
        for f in &frames {
            assert_eq!(&f.samples[..16], &f.samples[128..]);
        }
    }

    #[test]
    fn all_ones_code_gives_closed_form_rectangle() {
        // BPSK +1 on an all-ones code, no precoder: the body is the unitary
        // IFFT of a 64-bin rectangle, x[n] = 128^-1/2 sum_{k<64} e^{2 pi i kn/128}.
        let cfg = SystemConfig {
            code: CodeConfig {
                family: CodeFamily::WalshHadamard,
                offset: 0,
                ..CodeConfig::default()
            },
            n_symbols: 1,
            ..SystemConfig::default()
        };
        let frames = transmit(&cfg, &[false]).unwrap();
        let body = frames[0].body();
        for (n, x) in body.iter().enumerate() {
            let mut expect = Complex64::new(0.0, 0.0);
            for k in 0..64 {
                expect +=
                    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k * n) as f64 / 128.0);
            }
            expect /= 128f64.sqrt();
            assert!((x - expect).norm() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn precoding_preserves_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let chips: Vec<Complex64> = (0..64)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let e: f64 = chips.iter().map(|c| c.norm_sqr()).sum();
        for p in [Precoder::None, Precoder::Dct, Precoder::Dwt] {
            let t = Transceiver::new(SystemConfig {
                precoder: p,
                ..SystemConfig::default()
            })
            .unwrap();
            let q = t.precode(&chips).unwrap();
            let eq: f64 = q.iter().map(|c| c.norm_sqr()).sum();
            assert!((e - eq).abs() < 1e-10);
            let back = t.unprecode(&q).unwrap();
            assert!(back.iter().zip(&chips).all(|(a, b)| (a - b).norm() < 1e-12));
        }
    }

    #[test]
    fn round_trip_with_compander_and_renormalization() {
        for renormalize in [false, true] {
            let cfg = SystemConfig {
                modulation: Modulation::Qpsk,
                precoder: Precoder::Dct,
                compander: Some(CompanderConfig {
                    mu: 5.0,
                    renormalize,
                }),
                n_symbols: 64,
                ..SystemConfig::default()
            };
            let bits = random_bits(128, 9);
            let frames = transmit(&cfg, &bits).unwrap();
            assert_eq!(receive(&cfg, &frames).unwrap(), bits);
        }
    }

    #[test]
    fn corrupting_the_prefix_is_harmless() {
        let cfg = SystemConfig {
            n_symbols: 8,
            ..SystemConfig::default()
        };
        let bits = random_bits(8, 1);
        let mut frames = transmit(&cfg, &bits).unwrap();
        for f in frames.iter_mut() {
            for s in f.samples[..cfg.cp_len].iter_mut() {
                *s = Complex64::new(1e3, -1e3);
            }
        }
        assert_eq!(receive(&cfg, &frames).unwrap(), bits);
    }

    #[test]
    fn two_walsh_users_separate_cleanly() {
        let cfg = SystemConfig {
            code: CodeConfig {
                family: CodeFamily::WalshHadamard,
                offset: 1,
                ..CodeConfig::default()
            },
            users: 2,
            n_symbols: 32,
            ..SystemConfig::default()
        };
        let t = Transceiver::new(cfg).unwrap();
        let u0 = random_bits(32, 1);
        let u1 = random_bits(32, 2);
        let frames = t.transmit_users(&[u0.clone(), u1.clone()]).unwrap();
        assert_eq!(t.receive_user(&frames, 0).unwrap(), u0);
        assert_eq!(t.receive_user(&frames, 1).unwrap(), u1);
        assert!(t.transmit(&u0).is_err());
    }

    #[test]
    fn chip_domain_sum_equals_time_domain_combination() {
        let base = SystemConfig {
            code: CodeConfig {
                family: CodeFamily::Gold,
                ..CodeConfig::default()
            },
            users: 3,
            precoder: Precoder::Dwt,
            ..SystemConfig::default()
        };
        let multi = Transceiver::new(base.clone()).unwrap();
        let single = |k: usize| {
            Transceiver::new(SystemConfig {
                users: 1,
                code: CodeConfig {
                    offset: base.code.offset + k,
                    ..base.code
                },
                ..base.clone()
            })
            .unwrap()
        };
        let bits = [[true], [false], [true]];
        let slices: Vec<&[bool]> = bits.iter().map(|b| &b[..]).collect();
        let joint = multi.transmit_frame(&slices, 5).unwrap();
        let parts: Vec<TimeFrame> = (0..3)
            .map(|k| single(k).transmit_frame(&[&bits[k][..]], 5).unwrap())
            .collect();
        let summed = combine_users(&parts).unwrap();
        for (a, b) in joint.samples.iter().zip(&summed.samples) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn combine_users_edge_cases() {
        let f = add_cyclic_prefix(&[Complex64::new(1.0, 2.0); 8], 2).unwrap();
        assert_eq!(combine_users(std::slice::from_ref(&f)).unwrap(), f);
        let z = add_cyclic_prefix(&[Complex64::default(); 8], 2).unwrap();
        let sum = combine_users(&[z.clone(), z.clone(), z]).unwrap();
        assert!(sum.samples.iter().all(|s| s.norm() == 0.0));
        let short = add_cyclic_prefix(&[Complex64::default(); 4], 2).unwrap();
        assert!(combine_users(&[f, short]).is_err());
        assert!(combine_users(&[]).is_err());
    }

    #[test]
    fn config_validation() {
        let ok = SystemConfig::default();
        assert!(ok.validate().is_ok());
        let bad = [
            SystemConfig {
                ifft_size: 96,
                ..ok.clone()
            },
            SystemConfig {
                ifft_size: 32,
                ..ok.clone()
            },
            SystemConfig {
                cp_len: 128,
                ..ok.clone()
            },
            SystemConfig {
                users: 0,
                ..ok.clone()
            },
            SystemConfig {
                precoder: Precoder::Dwt,
                dwt_levels: 7,
                ..ok.clone()
            },
            SystemConfig {
                compander: Some(CompanderConfig {
                    mu: 0.0,
                    renormalize: false,
                }),
                ..ok.clone()
            },
            SystemConfig {
                code: CodeConfig {
                    family: CodeFamily::WalshHadamard,
                    offset: 64,
                    ..CodeConfig::default()
                },
                ..ok.clone()
            },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::Config(_))), "{cfg:?}");
        }
    }

    #[test]
    fn receive_rejects_wrong_frame_length() {
        let cfg = SystemConfig {
            n_symbols: 1,
            ..SystemConfig::default()
        };
        let f = add_cyclic_prefix(&[Complex64::new(1.0, 0.0); 64], 16).unwrap();
        assert!(matches!(
            receive(&cfg, &[f]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn pn_windows_cycle_through_the_period() {
        let t = Transceiver::new(SystemConfig::default()).unwrap();
        let base = t.user_code(0, 0);
        let second = t.user_code(0, 1);
        assert_eq!(base.len(), 64);
        assert_ne!(base, second);
        // period 127 and stride 64: 127 distinct windows before repeating
        assert_eq!(t.user_code(0, 127), base);
    }
}
