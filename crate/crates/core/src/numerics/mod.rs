//! Orthogonal transforms shared by the transmitter, receiver and metrics.
//!
//! All transforms are orthonormal: the FFT pair uses 1/sqrt(N) scaling in
//! both directions, and the DCT-II and Haar DWT matrices have orthonormal
//! rows. Complex inputs go through the real DCT/DWT by transforming the real
//! and imaginary parts independently, which is what a real matrix applied
//! to a complex vector does anyway.

mod dct;
mod fft;
mod haar;
mod window;

pub use dct::{dct_forward, dct_inverse, TransformMatrix};
pub use fft::{fft, ifft};
pub use haar::{haar_dwt, haar_idwt, max_haar_levels, QmfPair};
pub use window::hann;

use crate::{Complex64, Error, Result};

pub(crate) fn ensure_finite(x: &[Complex64]) -> Result<()> {
    if x.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput("non-finite sample".into()))
    }
}
