//! Spreading codes: LFSR m-sequences, Gold families and Walsh-Hadamard rows.
//!
//! Binary sequences are mapped to chips with `0 -> +1`, `1 -> -1`, so chip
//! multiplication corresponds to XOR of the underlying bits.

use std::fmt;
use std::str::FromStr;

use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeFamily {
    Pn,
    Gold,
    WalshHadamard,
}

impl CodeFamily {
    pub const ALL: [CodeFamily; 3] = [CodeFamily::Pn, CodeFamily::Gold, CodeFamily::WalshHadamard];
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeFamily::Pn => "pn",
            CodeFamily::Gold => "gold",
            CodeFamily::WalshHadamard => "walsh",
        })
    }
}

impl FromStr for CodeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pn" | "m-sequence" | "mseq" => Ok(CodeFamily::Pn),
            "gold" => Ok(CodeFamily::Gold),
            "walsh" | "hadamard" | "walsh-hadamard" | "walsh_hadamard" => {
                Ok(CodeFamily::WalshHadamard)
            }
            other => Err(Error::Config(format!("unknown code family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChipSequence {
    chips: Vec<i8>,
    family: CodeFamily,
}

impl ChipSequence {
    pub fn new(chips: Vec<i8>, family: CodeFamily) -> Result<Self> {
        if chips.is_empty() {
            return Err(Error::InvalidInput("empty chip sequence".into()));
        }
        if let Some(bad) = chips.iter().find(|&&c| c != 1 && c != -1) {
            return Err(Error::InvalidInput(format!("chip value {bad} is not +/-1")));
        }
        Ok(Self { chips, family })
    }

    pub fn chips(&self) -> &[i8] {
        &self.chips
    }

    pub fn family(&self) -> CodeFamily {
        self.family
    }

    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    /// `len` chips read cyclically starting at `start`. Used to fill a
    /// spreading factor that differs from the sequence period.
    pub fn cyclic_window(&self, start: usize, len: usize) -> ChipSequence {
        let p = self.chips.len();
        ChipSequence {
            chips: (0..len).map(|j| self.chips[(start + j) % p]).collect(),
            family: self.family,
        }
    }

    /// The sequence rotated left by `shift` chips.
    pub fn rotated(&self, shift: usize) -> ChipSequence {
        self.cyclic_window(shift, self.chips.len())
    }
}

/// Fibonacci LFSR description.
///
/// `poly` holds the low coefficients of the characteristic polynomial
/// `x^m + c_{m-1} x^{m-1} + ... + c_0` (bit `i` = `c_i`); the recurrence is
/// `s[n+m] = sum_i c_i s[n+i] (mod 2)`. Bit `i` of `seed` is `s[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LfsrSpec {
    pub degree: u32,
    pub poly: u32,
    pub seed: u32,
}

impl LfsrSpec {
    pub fn new(degree: u32, poly: u32, seed: u32) -> Self {
        Self { degree, poly, seed }
    }

    /// A primitive polynomial for degrees 2..=10, seeded with `s[0] = 1`.
    pub fn default_for_degree(degree: u32) -> Result<Self> {
        let poly = match degree {
            2 => 0b11,
            3 => 0b011,
            4 => 0b0011,
            5 => 0b0_0101,
            6 => 0b00_0011,
            7 => 0b000_1001,
            8 => 0b0001_1101,
            9 => 0b0_0001_0001,
            10 => 0b00_0000_1001,
            _ => {
                return Err(Error::Config(format!(
                    "no built-in primitive polynomial for degree {degree}"
                )))
            }
        };
        Ok(Self::new(degree, poly, 1))
    }

    pub fn period(&self) -> usize {
        (1usize << self.degree) - 1
    }

    fn validate(&self) -> Result<()> {
        if !(2..=24).contains(&self.degree) {
            return Err(Error::Sizing(format!(
                "LFSR degree {} out of range 2..=24",
                self.degree
            )));
        }
        let mask = (1u32 << self.degree) - 1;
        if self.seed & mask == 0 {
            return Err(Error::InvalidInput("LFSR seed must be nonzero".into()));
        }
        if self.poly & 1 == 0 || self.poly & !mask != 0 {
            return Err(Error::InvalidInput(format!(
                "polynomial 0x{:x} is not a valid degree-{} feedback polynomial",
                self.poly, self.degree
            )));
        }
        Ok(())
    }

    /// One period of output bits, or `None` if the register revisits its
    /// seed early (polynomial not primitive).
    fn bits(&self) -> Option<Vec<u8>> {
        let m = self.degree;
        let mask = (1u32 << m) - 1;
        let seed = self.seed & mask;
        let mut state = seed;
        let mut out = Vec::with_capacity(self.period());
        for step in 1..=self.period() {
            out.push((state & 1) as u8);
            let feedback = (state & self.poly).count_ones() & 1;
            state = (state >> 1) | (feedback << (m - 1));
            if state == seed && step < self.period() {
                return None;
            }
        }
        (state == seed).then_some(out)
    }
}

fn bits_to_chips(bits: &[u8]) -> Vec<i8> {
    bits.iter().map(|&b| if b == 0 { 1 } else { -1 }).collect()
}

/// One full period of the maximal-length sequence generated by `spec`.
///
/// Fails for an all-zero seed or when the polynomial is not primitive (the
/// state returns to the seed before `2^m - 1` steps).
pub fn pn_sequence(spec: &LfsrSpec) -> Result<ChipSequence> {
    spec.validate()?;
    let bits = spec.bits().ok_or_else(|| {
        Error::InvalidInput(format!("polynomial 0x{:x} is not primitive", spec.poly))
    })?;
    ChipSequence::new(bits_to_chips(&bits), CodeFamily::Pn)
}

/// Built-in preferred pairs (degree 5 and 7).
pub fn preferred_pair(degree: u32) -> Result<(LfsrSpec, LfsrSpec)> {
    match degree {
        // x^5+x^2+1, x^5+x^4+x^3+x^2+1
        5 => Ok((LfsrSpec::new(5, 0b0_0101, 1), LfsrSpec::new(5, 0b1_1101, 1))),
        // x^7+x^3+1, x^7+x^3+x^2+x+1
        7 => Ok((
            LfsrSpec::new(7, 0b000_1001, 1),
            LfsrSpec::new(7, 0b000_1111, 1),
        )),
        _ => Err(Error::Config(format!(
            "no built-in Gold preferred pair for degree {degree}"
        ))),
    }
}

/// Number of members in a degree-`m` Gold family: both parents plus
/// `2^m - 1` shifted XOR combinations.
pub fn gold_family_size(degree: u32) -> usize {
    (1usize << degree) + 1
}

/// Member `index` of the Gold family built from `pair`.
///
/// Index 0 is the first parent, index `2^m` the second parent, and index
/// `1..2^m` is `a XOR (b rotated by index-1)`.
pub fn gold_codes(degree: u32, pair: (&LfsrSpec, &LfsrSpec), index: usize) -> Result<ChipSequence> {
    if pair.0.degree != degree || pair.1.degree != degree {
        return Err(Error::Sizing(format!(
            "preferred pair degrees ({}, {}) do not match {degree}",
            pair.0.degree, pair.1.degree
        )));
    }
    if index >= gold_family_size(degree) {
        return Err(Error::Sizing(format!(
            "Gold index {index} outside family of {}",
            gold_family_size(degree)
        )));
    }
    let a = pn_sequence(pair.0)?;
    let b = pn_sequence(pair.1)?;
    let period = a.len();
    let chips = match index {
        0 => a.chips,
        i if i == period + 1 => b.chips,
        i => {
            let shifted = b.rotated(i - 1);
            a.chips
                .iter()
                .zip(&shifted.chips)
                .map(|(x, y)| x * y)
                .collect()
        }
    };
    ChipSequence::new(chips, CodeFamily::Gold)
}

/// Sylvester-ordered Hadamard matrix of the given order, one row per code.
pub fn walsh_hadamard(order: usize) -> Result<Vec<ChipSequence>> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::Sizing(format!(
            "Walsh order {order} is not a power of two"
        )));
    }
    // H[r][c] = (-1)^popcount(r & c)
    (0..order)
        .map(|r| {
            let row = (0..order)
                .map(|c| if (r & c).count_ones() % 2 == 0 { 1 } else { -1 })
                .collect();
            ChipSequence::new(row, CodeFamily::WalshHadamard)
        })
        .collect()
}

/// Periodic cross-correlation `sum_n a[n] b[(n + shift) mod N]`, unnormalized.
pub fn periodic_correlation(a: &ChipSequence, b: &ChipSequence, shift: usize) -> i64 {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    (0..n)
        .map(|i| i64::from(a.chips[i]) * i64::from(b.chips[(i + shift) % n]))
        .sum()
}

/// Expand each symbol into `code.len()` chips `a * c(s)`.
pub fn spread(symbols: &[Complex64], code: &ChipSequence) -> Result<Vec<Complex64>> {
    if code.is_empty() {
        return Err(Error::InvalidInput("empty spreading code".into()));
    }
    Ok(symbols
        .iter()
        .flat_map(|a| code.chips.iter().map(move |&c| a * f64::from(c)))
        .collect())
}

/// Correlate each block of `code.len()` chips with the code and normalize.
pub fn despread(chips: &[Complex64], code: &ChipSequence) -> Result<Vec<Complex64>> {
    let nc = code.len();
    if nc == 0 {
        return Err(Error::InvalidInput("empty spreading code".into()));
    }
    if !chips.len().is_multiple_of(nc) {
        return Err(Error::LengthMismatch {
            expected: chips.len().div_ceil(nc) * nc,
            actual: chips.len(),
        });
    }
    Ok(chips
        .chunks_exact(nc)
        .map(|block| {
            let products: Vec<Complex64> = block
                .iter()
                .zip(&code.chips)
                .map(|(x, &c)| x * f64::from(c))
                .collect();
            pairwise_sum(&products) / nc as f64
        })
        .collect())
}

/// Tree summation. Sums of identical terms over power-of-two lengths come
/// out exact, which makes spread/despread an exact round trip.
fn pairwise_sum(x: &[Complex64]) -> Complex64 {
    match x.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => x[0],
        n => pairwise_sum(&x[..n / 2]) + pairwise_sum(&x[n / 2..]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn degree3_balance_and_autocorrelation() {
        // x^3 + x + 1
        let seq = pn_sequence(&LfsrSpec::new(3, 0b011, 0b001)).unwrap();
        assert_eq!(seq.len(), 7);
        assert_eq!(seq.chips().iter().filter(|&&c| c == -1).count(), 4);
        assert_eq!(seq.chips().iter().filter(|&&c| c == 1).count(), 3);
        assert_eq!(periodic_correlation(&seq, &seq, 0), 7);
        for shift in 1..7 {
            assert_eq!(periodic_correlation(&seq, &seq, shift), -1, "shift {shift}");
        }
        assert_eq!(seq, pn_sequence(&LfsrSpec::new(3, 0b011, 0b001)).unwrap());
    }

    #[test]
    fn rejects_bad_lfsr_specs() {
        assert!(matches!(
            pn_sequence(&LfsrSpec::new(3, 0b011, 0)),
            Err(Error::InvalidInput(_))
        ));
        // x^4 + x^2 + 1 = (x^2+x+1)^2 is not primitive
        assert!(pn_sequence(&LfsrSpec::new(4, 0b0101, 1)).is_err());
    }

    #[test]
    fn builtin_polynomials_are_primitive() {
        for m in 2..=10 {
            let s = pn_sequence(&LfsrSpec::default_for_degree(m).unwrap()).unwrap();
            let minus = s.chips().iter().filter(|&&c| c == -1).count();
            assert_eq!(minus, 1 << (m - 1), "degree {m}");
        }
    }

    #[test]
    fn gold_family_edges() {
        let (a, b) = preferred_pair(5).unwrap();
        assert_eq!(gold_family_size(5), 33);
        assert_eq!(
            gold_codes(5, (&a, &b), 0).unwrap().chips(),
            pn_sequence(&a).unwrap().chips()
        );
        assert_eq!(
            gold_codes(5, (&a, &b), 32).unwrap().chips(),
            pn_sequence(&b).unwrap().chips()
        );
        assert!(matches!(gold_codes(5, (&a, &b), 33), Err(Error::Sizing(_))));
        let distinct: BTreeSet<Vec<i8>> = (0..33)
            .map(|i| gold_codes(5, (&a, &b), i).unwrap().chips().to_vec())
            .collect();
        assert_eq!(distinct.len(), 33);
    }

    #[test]
    fn walsh_small_orders() {
        assert_eq!(walsh_hadamard(1).unwrap()[0].chips(), &[1]);
        let h2 = walsh_hadamard(2).unwrap();
        assert_eq!(h2[0].chips(), &[1, 1]);
        assert_eq!(h2[1].chips(), &[1, -1]);
        assert!(walsh_hadamard(12).is_err());
        assert!(walsh_hadamard(0).is_err());
    }

    #[test]
    fn spread_examples() {
        let one = Complex64::new(1.0, 0.0);
        let code = ChipSequence::new(vec![1, -1, 1, -1], CodeFamily::Pn).unwrap();
        let out = spread(&[one], &code).unwrap();
        assert_eq!(out, [1.0, -1.0, 1.0, -1.0].map(|r| Complex64::new(r, 0.0)));
        let zeros = spread(&[Complex64::default()], &code).unwrap();
        assert!(zeros.iter().all(|z| z.norm() == 0.0));
        let code2 = ChipSequence::new(vec![1, -1], CodeFamily::Pn).unwrap();
        let a = Complex64::new(1.0, 1.0);
        assert_eq!(spread(&[a], &code2).unwrap(), vec![a, -a]);
    }

    #[test]
    fn despread_errors_and_orthogonality() {
        let rows = walsh_hadamard(8).unwrap();
        let a = Complex64::new(0.3, -0.7);
        let chips = spread(&[a], &rows[3]).unwrap();
        assert_eq!(despread(&chips, &rows[3]).unwrap(), vec![a]);
        assert_eq!(
            despread(&chips, &rows[5]).unwrap(),
            vec![Complex64::default()]
        );
        assert!(matches!(
            despread(&chips[..7], &rows[3]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(ChipSequence::new(vec![], CodeFamily::Pn).is_err());
        assert!(ChipSequence::new(vec![1, 0], CodeFamily::Pn).is_err());
    }

    #[test]
    fn cyclic_window_wraps() {
        let s = ChipSequence::new(vec![1, -1, -1], CodeFamily::Pn).unwrap();
        assert_eq!(s.cyclic_window(2, 5).chips(), &[-1, 1, -1, -1, 1]);
        assert_eq!(s.rotated(1).chips(), &[-1, -1, 1]);
    }
}
