//! Scalar abstraction for the waveform-domain math.

use num_traits::{Float, FloatConst};
use rustfft::FftNum;

/// Sample scalar: `f32` or `f64`.
///
/// `FftNum` brings `FromPrimitive`, `Copy`, `Send`/`Sync` and everything the
/// FFT backend needs; `Float + FloatConst` covers the chirp phase math.
pub trait Scalar: Float + FloatConst + FftNum {
    /// Lossy conversion from `f64`, used for constants and RNG draws.
    fn from_f64_lossy(x: f64) -> Self {
        num_traits::FromPrimitive::from_f64(x).expect("f64 conversion")
    }

    fn to_f64_lossy(self) -> f64;
}

impl Scalar for f32 {
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn to_f64_lossy(self) -> f64 {
        self
    }
}
