//! Flat channel model: complex gain plus additive white Gaussian noise.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::num::Scalar;
use crate::waveform::Waveform;

/// Scalar complex gain `h` and complex noise variance `sigma^2`.
///
/// The default is `h = 1`, `sigma^2 = 0`: a transparent channel, matching
/// an analysis that ignores errors from noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub gain_re: f64,
    pub gain_im: f64,
    pub noise_variance: f64,
}

impl Default for ChannelModel {
    fn default() -> Self {
        Self {
            gain_re: 1.0,
            gain_im: 0.0,
            noise_variance: 0.0,
        }
    }
}

impl ChannelModel {
    pub fn new(gain: Complex<f64>, noise_variance: f64) -> Self {
        assert!(noise_variance >= 0.0);
        Self {
            gain_re: gain.re,
            gain_im: gain.im,
            noise_variance,
        }
    }

    pub fn gain(&self) -> Complex<f64> {
        Complex::new(self.gain_re, self.gain_im)
    }
}

/// Sample-wise `h * legit + jam` plus complex Gaussian noise of variance
/// `sigma^2`. The shorter waveform is treated as zero-extended.
pub fn superpose<T: Scalar, R: Rng + ?Sized>(
    legit: &Waveform<T>,
    jam: &Waveform<T>,
    channel: &ChannelModel,
    rng: &mut R,
) -> Waveform<T> {
    let len = legit.len().max(jam.len());
    let h = Complex::new(
        T::from_f64_lossy(channel.gain_re),
        T::from_f64_lossy(channel.gain_im),
    );
    let zero = Complex::new(T::zero(), T::zero());
    // Per-component std dev of circularly-symmetric noise with total
    // variance sigma^2.
    let comp_std = (channel.noise_variance / 2.0).sqrt();

    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let l = legit.samples().get(i).copied().unwrap_or(zero);
        let j = jam.samples().get(i).copied().unwrap_or(zero);
        let mut y = h * l + j;
        if comp_std > 0.0 {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            y = y + Complex::new(
                T::from_f64_lossy(re * comp_std),
                T::from_f64_lossy(im * comp_std),
            );
        }
        out.push(y);
    }
    Waveform::new(out)
}
