//! Reactive jamming waveform generation and per-window evaluation.
//!
//! Three attack models are supported:
//!
//! * `Synchronized`: `n_s` independent uniform-random jamming symbols,
//!   perfectly aligned with the receiver's sampling windows.
//! * `NonSynchronized`: the same burst delayed by a chip offset, so it
//!   covers `n_s + 1` receiver windows, each seeing misaligned chirp
//!   fractions.
//! * `RepeatedSymbol`: one symbol value repeated `n_s` times; the fractions
//!   of two consecutive copies inside an interior window are phase-coherent
//!   and accumulate full symbol energy in a single bin.
//!
//! A window counts as jammed when the jammer's dechirped peak, normalized
//! to the legitimate peak of 1, exceeds 1.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::modem::{modulate_symbol, Demodulator};
use crate::num::Scalar;
use crate::params::{PhyParams, Symbol};
use crate::waveform::Waveform;

/// How a `V_A` figure in dB maps to the linear amplitude ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VaConvention {
    /// `v_a = 10^(db/20)`: the dB figure describes the amplitude ratio.
    Amp20,
    /// `v_a = 10^(db/10)`: the dB figure is read on a power scale.
    Pow10,
}

impl VaConvention {
    pub fn amplitude_from_db(&self, db: f64) -> f64 {
        match self {
            VaConvention::Amp20 => 10f64.powf(db / 20.0),
            VaConvention::Pow10 => 10f64.powf(db / 10.0),
        }
    }
}

/// Attack model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JamMode {
    Synchronized,
    NonSynchronized,
    RepeatedSymbol,
}

impl JamMode {
    /// Short name used in CSV output and CLI flags.
    pub fn tag(&self) -> &'static str {
        match self {
            JamMode::Synchronized => "sync",
            JamMode::NonSynchronized => "nosync",
            JamMode::RepeatedSymbol => "rep",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "sync" => Some(JamMode::Synchronized),
            "nosync" => Some(JamMode::NonSynchronized),
            "rep" => Some(JamMode::RepeatedSymbol),
            _ => None,
        }
    }
}

/// Truncated Gaussian chip-offset distribution with support `[0, max)`.
///
/// The standard configuration uses `mean = (N-1)/2` and `std = (N-1)/6`,
/// which keeps more than 99% of the untruncated mass inside the support;
/// out-of-support draws are rejected and redrawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OffsetDistribution {
    pub mean: f64,
    pub std: f64,
    pub max: f64,
}

const MAX_REDRAWS: usize = 1_000_000;

impl OffsetDistribution {
    pub fn for_params(params: PhyParams) -> Self {
        let n = params.n() as f64;
        Self {
            mean: (n - 1.0) / 2.0,
            std: (n - 1.0) / 6.0,
            max: n - 1.0,
        }
    }

    /// Degenerate distribution pinned at the mean (test hook).
    pub fn degenerate(params: PhyParams) -> Self {
        let mut d = Self::for_params(params);
        d.std = 0.0;
        d
    }

    /// Draw one offset in chips.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64, Error> {
        if self.std == 0.0 {
            return Ok(self.mean);
        }
        let normal = Normal::new(self.mean, self.std)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        for _ in 0..MAX_REDRAWS {
            let tau = normal.sample(rng);
            if (0.0..self.max).contains(&tau) {
                return Ok(tau);
            }
        }
        Err(Error::RejectionOverflow(MAX_REDRAWS))
    }
}

/// One jamming configuration: attack model, burst length in symbols, and
/// the jamming-to-signal amplitude ratio `v_a` at the receiver (legitimate
/// amplitude normalized to 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JamSpec {
    pub mode: JamMode,
    pub n_s: usize,
    pub v_a: f64,
    pub offset: OffsetDistribution,
}

impl JamSpec {
    pub fn new(mode: JamMode, n_s: usize, v_a: f64, params: PhyParams) -> Result<Self, Error> {
        if n_s > params.l() {
            return Err(Error::JamSymbolCount {
                n_s,
                max: params.l(),
            });
        }
        if !(v_a > 0.0) {
            return Err(Error::InvalidConfig(format!("v_a must be positive, got {v_a}")));
        }
        Ok(Self {
            mode,
            n_s,
            v_a,
            offset: OffsetDistribution::for_params(params),
        })
    }

    /// Draw the chip offset for one trial: always 0 for synchronized
    /// jamming, a truncated-Gaussian draw otherwise.
    pub fn draw_offset<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64, Error> {
        match self.mode {
            JamMode::Synchronized => Ok(0.0),
            _ => self.offset.sample(rng),
        }
    }
}

/// Generate the jamming waveform for one trial.
///
/// The offset is quantized to whole chips (`round(tau)`); the returned
/// waveform is zero-padded to a whole number of `N`-sample receiver
/// windows. `n_s == 0` yields an empty waveform.
pub fn gen_jam_waveform<T: Scalar, R: Rng + ?Sized>(
    spec: &JamSpec,
    params: PhyParams,
    tau: f64,
    rng: &mut R,
) -> Result<Waveform<T>, Error> {
    if spec.n_s > params.l() {
        return Err(Error::JamSymbolCount {
            n_s: spec.n_s,
            max: params.l(),
        });
    }
    if spec.mode == JamMode::Synchronized && tau != 0.0 {
        return Err(Error::SyncNonzeroOffset(tau));
    }
    if spec.n_s == 0 {
        return Ok(Waveform::empty());
    }

    let n = params.n();
    let delay = tau.round().max(0.0) as usize;
    let symbols: Vec<Symbol> = match spec.mode {
        JamMode::RepeatedSymbol => {
            let value = rng.gen_range(0..n as u32);
            vec![Symbol::new(value, params).expect("value < N"); spec.n_s]
        }
        _ => (0..spec.n_s)
            .map(|_| {
                let value = rng.gen_range(0..n as u32);
                Symbol::new(value, params).expect("value < N")
            })
            .collect(),
    };

    let mut wave: Waveform<T> = Waveform::zeros(delay);
    for s in &symbols {
        wave.extend_from(&modulate_symbol(*s, params));
    }
    wave.scale(T::from_f64_lossy(spec.v_a));
    let windows = (wave.len() + n - 1) / n;
    wave.zero_pad_to(windows * n);
    Ok(wave)
}

/// Per-window jamming evaluation of a jam-only waveform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JamWindowReport {
    /// Normalized dechirped peak magnitude of each window.
    pub peaks: Vec<f64>,
    /// `peak > 1` per window.
    pub indicators: Vec<bool>,
    /// Number of jammed windows (sum of indicators).
    pub n_ss: usize,
}

/// Dechirp every `N`-sample window of `jam` and record which windows clear
/// the unit threshold.
pub fn window_indicators<T: Scalar>(
    demod: &Demodulator<T>,
    jam: &Waveform<T>,
) -> Result<JamWindowReport, Error> {
    let n = demod.params().n();
    if jam.len() % n != 0 {
        return Err(Error::PartialWindow {
            len: jam.len(),
            window: n,
        });
    }
    let windows = jam.len() / n;
    let mut peaks = Vec::with_capacity(windows);
    let mut indicators = Vec::with_capacity(windows);
    for r in 0..windows {
        let (_, peak) = demod.window_peak(jam.window(r, n).expect("whole windows"))?;
        let peak = peak.to_f64_lossy();
        peaks.push(peak);
        indicators.push(peak > 1.0);
    }
    let n_ss = indicators.iter().filter(|&&b| b).count();
    Ok(JamWindowReport {
        peaks,
        indicators,
        n_ss,
    })
}
