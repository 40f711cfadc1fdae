//! Complex baseband sample sequences at one sample per chip.

use num_complex::Complex;

use crate::num::Scalar;

/// A complex baseband waveform. A freshly modulated symbol holds exactly
/// `N` unit-magnitude samples; jamming and superposed waveforms may have
/// any length.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform<T> {
    samples: Vec<Complex<T>>,
}

impl<T: Scalar> Waveform<T> {
    pub fn new(samples: Vec<Complex<T>>) -> Self {
        Self { samples }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            samples: vec![Complex::new(T::zero(), T::zero()); len],
        }
    }

    pub fn empty() -> Self {
        Self { samples: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.samples
    }

    /// Scale every sample by a real factor.
    pub fn scale(&mut self, factor: T) {
        for s in &mut self.samples {
            *s = *s * factor;
        }
    }

    /// Append another waveform's samples.
    pub fn extend_from(&mut self, other: &Waveform<T>) {
        self.samples.extend_from_slice(&other.samples);
    }

    /// Zero-pad to `len` samples (no-op when already at least that long).
    pub fn zero_pad_to(&mut self, len: usize) {
        if self.samples.len() < len {
            self.samples
                .resize(len, Complex::new(T::zero(), T::zero()));
        }
    }

    /// The `r`-th consecutive `window`-sample slice, if fully present.
    pub fn window(&self, r: usize, window: usize) -> Option<&[Complex<T>]> {
        let start = r.checked_mul(window)?;
        let end = start.checked_add(window)?;
        self.samples.get(start..end)
    }
}
