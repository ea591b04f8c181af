//! BPSK / Gray-coded QPSK mapping with hard-decision demapping.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulation {
    Bpsk,
    Qpsk,
}

impl Modulation {
    pub fn bits_per_symbol(self) -> usize {
        match self {
            Modulation::Bpsk => 1,
            Modulation::Qpsk => 2,
        }
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modulation::Bpsk => "bpsk",
            Modulation::Qpsk => "qpsk",
        })
    }
}

impl FromStr for Modulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bpsk" => Ok(Modulation::Bpsk),
            "qpsk" => Ok(Modulation::Qpsk),
            other => Err(Error::Config(format!("unknown modulation '{other}'"))),
        }
    }
}

/// Unit-energy constellation points for one user.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolBlock {
    pub symbols: Vec<Complex64>,
    pub modulation: Modulation,
}

/// BPSK: `0 -> +1`, `1 -> -1`. QPSK on bit pairs `(b0, b1)`: the real part
/// is `1 - 2 b1`, the imaginary part `1 - 2 b0`, both scaled by `1/sqrt 2`,
/// which gives the Gray labelling 00, 01, 11, 10 around the circle.
pub fn map_bits(bits: &[bool], modulation: Modulation) -> Result<SymbolBlock> {
    let sign = |b: bool| if b { -1.0 } else { 1.0 };
    let symbols = match modulation {
        Modulation::Bpsk => bits.iter().map(|&b| Complex64::new(sign(b), 0.0)).collect(),
        Modulation::Qpsk => {
            if !bits.len().is_multiple_of(2) {
                return Err(Error::InvalidInput(format!(
                    "QPSK needs an even bit count, got {}",
                    bits.len()
                )));
            }
            bits.chunks_exact(2)
                .map(|p| Complex64::new(sign(p[1]), sign(p[0])) * FRAC_1_SQRT_2)
                .collect()
        }
    };
    Ok(SymbolBlock {
        symbols,
        modulation,
    })
}

/// Minimum-distance hard decisions. Points on a decision boundary resolve
/// to bit 0.
pub fn demap_symbols(symbols: &[Complex64], modulation: Modulation) -> Vec<bool> {
    match modulation {
        Modulation::Bpsk => symbols.iter().map(|s| s.re < 0.0).collect(),
        Modulation::Qpsk => symbols
            .iter()
            .flat_map(|s| [s.im < 0.0, s.re < 0.0])
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bpsk_convention() {
        let b = map_bits(&[false, true], Modulation::Bpsk).unwrap();
        assert_eq!(
            b.symbols,
            vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]
        );
    }

    #[test]
    fn qpsk_gray_table() {
        let r = FRAC_1_SQRT_2;
        let cases = [
            ([false, false], Complex64::new(r, r)),
            ([false, true], Complex64::new(-r, r)),
            ([true, true], Complex64::new(-r, -r)),
            ([true, false], Complex64::new(r, -r)),
        ];
        for (bits, point) in cases {
            let s = map_bits(&bits, Modulation::Qpsk).unwrap().symbols[0];
            assert!((s - point).norm() < 1e-15);
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
        assert!(map_bits(&[true], Modulation::Qpsk).is_err());
    }

    #[test]
    fn decisions_and_ties() {
        assert_eq!(
            demap_symbols(&[Complex64::new(0.2, 0.0)], Modulation::Bpsk),
            vec![false]
        );
        assert_eq!(
            demap_symbols(&[Complex64::new(0.0, 0.0)], Modulation::Bpsk),
            vec![false]
        );
        assert_eq!(
            demap_symbols(&[Complex64::new(-0.9, -0.9)], Modulation::Qpsk),
            vec![true, true]
        );
        assert_eq!(
            demap_symbols(&[Complex64::new(0.0, 0.0)], Modulation::Qpsk),
            vec![false, false]
        );
    }

    proptest! {
        #[test]
        fn round_trip(bits in proptest::collection::vec(any::<bool>(), 0..512).prop_map(|mut v| { if v.len() % 2 == 1 { v.pop(); } v })) {
            for m in [Modulation::Bpsk, Modulation::Qpsk] {
                let block = map_bits(&bits, m).unwrap();
                let energy: f64 = block.symbols.iter().map(|s| s.norm_sqr()).sum();
                prop_assert!((energy - block.symbols.len() as f64).abs() < 1e-9);
                prop_assert_eq!(demap_symbols(&block.symbols, m), bits.clone());
            }
        }
    }
}
