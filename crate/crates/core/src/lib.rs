//! Baseband simulator for multicarrier CDMA with orthogonal precoding
//! (DCT-II or multi-level Haar DWT) and mu-law companding.
//!
//! The transmit chain is map -> spread -> precode -> IFFT -> cyclic prefix
//! -> compress; the receiver undoes each stage in reverse. The [`metrics`]
//! module measures PAPR, CCDF, Welch PSD and BER, and [`cli`] wires the
//! pieces into reproducible CSV-producing experiments.

pub mod chain;
pub mod channel;
pub mod cli;
pub mod codes;
pub mod companding;
pub mod error;
pub mod mapping;
pub mod metrics;
pub mod numerics;
pub mod seed;

pub use error::{Error, Result};
pub use num_complex::Complex64;
