//! Chirp-spread-spectrum modulation and FFT-based demodulation.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::Error;
use crate::num::Scalar;
use crate::params::{PhyParams, Symbol};
use crate::waveform::Waveform;

/// Modulate one symbol into `N` unit-magnitude chips.
///
/// Sample `n` carries the phase
/// `2*pi * (n^2/(2N) + (S/N - 1/2 - u[n - n_f]) * n)` with `n_f = N - S`,
/// i.e. an upchirp whose start frequency encodes the symbol and which folds
/// back once it reaches the band edge.
pub fn modulate_symbol<T: Scalar>(s: Symbol, params: PhyParams) -> Waveform<T> {
    let n_chips = params.n();
    let n_f = n_chips - s.value() as usize;
    let nf = T::from_f64_lossy(n_chips as f64);
    let sym = T::from_f64_lossy(s.value() as f64);
    let half = T::from_f64_lossy(0.5);
    let two_pi = T::TAU();

    let samples = (0..n_chips)
        .map(|n| {
            let step = if n >= n_f { T::one() } else { T::zero() };
            let nn = T::from_f64_lossy(n as f64);
            let phase = two_pi * (nn * nn / (nf + nf) + (sym / nf - half - step) * nn);
            Complex::from_polar(T::one(), phase)
        })
        .collect();
    Waveform::new(samples)
}

/// Dechirp-and-DFT demodulator for one LoRa configuration.
///
/// Holds the FFT plan and the conjugate base chirp so window-by-window
/// demodulation inside Monte Carlo loops does not replan. Cloning is cheap;
/// the plan is shared.
#[derive(Clone)]
pub struct Demodulator<T> {
    params: PhyParams,
    fft: Arc<dyn Fft<T>>,
    downchirp: Vec<Complex<T>>,
}

impl<T: Scalar> Demodulator<T> {
    pub fn new(params: PhyParams) -> Self {
        let base: Waveform<T> =
            modulate_symbol(Symbol::new(0, params).expect("0 < N"), params);
        let downchirp = base.samples().iter().map(|s| s.conj()).collect();
        let fft = FftPlanner::new().plan_fft_forward(params.n());
        Self {
            params,
            fft,
            downchirp,
        }
    }

    pub fn params(&self) -> PhyParams {
        self.params
    }

    /// Dechirped spectrum peak of one `N`-sample window: the argmax bin and
    /// its magnitude normalized so a clean unit-magnitude symbol yields 1.
    pub fn window_peak(&self, window: &[Complex<T>]) -> Result<(usize, T), Error> {
        let n = self.params.n();
        if window.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: window.len(),
            });
        }
        let mut buf: Vec<Complex<T>> = window
            .iter()
            .zip(&self.downchirp)
            .map(|(y, d)| y * d)
            .collect();
        self.fft.process(&mut buf);

        let mut best_bin = 0usize;
        let mut best_sq = T::neg_infinity();
        for (k, v) in buf.iter().enumerate() {
            let sq = v.norm_sqr();
            if sq > best_sq {
                best_sq = sq;
                best_bin = k;
            }
        }
        let peak = best_sq.sqrt() / T::from_f64_lossy(n as f64);
        Ok((best_bin, peak))
    }

    /// Demodulate one window: argmax bin as the symbol plus the normalized
    /// peak magnitude.
    pub fn demodulate_window(&self, w: &Waveform<T>) -> Result<(Symbol, T), Error> {
        let (bin, peak) = self.window_peak(w.samples())?;
        Ok((Symbol::new(bin as u32, self.params).expect("bin < N"), peak))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn p(sf: u8, cr: u8) -> PhyParams {
        PhyParams::new(sf, cr).unwrap()
    }

    #[test]
    fn samples_have_unit_magnitude() {
        let params = p(9, 1);
        for s in [0u32, 1, 200, 511] {
            let w: Waveform<f64> = modulate_symbol(Symbol::new(s, params).unwrap(), params);
            assert_eq!(w.len(), 512);
            for z in w.samples() {
                assert!((z.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn base_chirp_lands_in_bin_zero() {
        let params = p(7, 1);
        let demod = Demodulator::<f64>::new(params);
        let w = modulate_symbol(Symbol::new(0, params).unwrap(), params);
        let (s, peak) = demod.demodulate_window(&w).unwrap();
        assert_eq!(s.value(), 0);
        assert!((peak - 1.0).abs() < 1e-9);
    }

    #[test]
    fn round_trip_sf7() {
        let params = p(7, 1);
        let demod = Demodulator::<f64>::new(params);
        let w = modulate_symbol(Symbol::new(37, params).unwrap(), params);
        let (s, peak) = demod.demodulate_window(&w).unwrap();
        assert_eq!(s.value(), 37);
        assert!((peak - 1.0).abs() < 1e-9);
    }

    #[test]
    fn round_trip_exhaustive_sf10() {
        let params = p(10, 1);
        let demod = Demodulator::<f64>::new(params);
        for k in 0..1024u32 {
            let w = modulate_symbol(Symbol::new(k, params).unwrap(), params);
            let (s, _) = demod.demodulate_window(&w).unwrap();
            assert_eq!(s.value(), k);
        }
    }

    #[test]
    fn round_trip_exhaustive_all_sf_f32() {
        for sf in 7..=12u8 {
            let params = p(sf, 1);
            let demod = Demodulator::<f32>::new(params);
            // Full sweep at SF7, strided elsewhere to keep the test quick.
            let stride = if sf == 7 { 1 } else { 37 };
            for k in (0..params.n() as u32).step_by(stride) {
                let w = modulate_symbol(Symbol::new(k, params).unwrap(), params);
                let (s, _) = demod.demodulate_window(&w).unwrap();
                assert_eq!(s.value(), k, "sf={sf}");
            }
        }
    }

    #[test]
    fn argmax_is_scale_and_phase_invariant() {
        let params = p(7, 1);
        let demod = Demodulator::<f64>::new(params);
        for (scale, phi) in [(0.01, 0.0), (3.5, 1.234), (100.0, -2.9)] {
            let h = Complex64::from_polar(scale, phi);
            let mut w = modulate_symbol(Symbol::new(99, params).unwrap(), params);
            for z in w.samples_mut() {
                *z *= h;
            }
            let (s, peak) = demod.demodulate_window(&w).unwrap();
            assert_eq!(s.value(), 99);
            assert!((peak - scale).abs() < 1e-9 * scale.max(1.0));
        }
    }

    #[test]
    fn wrong_window_length_is_an_error() {
        let params = p(7, 1);
        let demod = Demodulator::<f64>::new(params);
        let w: Waveform<f64> = Waveform::zeros(100);
        assert_eq!(
            demod.demodulate_window(&w),
            Err(Error::LengthMismatch {
                expected: 128,
                actual: 100
            })
        );
    }
}
