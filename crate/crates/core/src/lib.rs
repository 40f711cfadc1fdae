//! Software LoRa physical layer with a jamming-resilience toolkit.
//!
//! The crate models the LoRa transmit/receive chain (whitening, Hamming
//! coding, diagonal interleaving, chirp-spread-spectrum modulation) at one
//! sample per chip, generates reactive jamming waveforms in three flavours
//! (synchronized, non-synchronized, repeated-symbol), and estimates frame
//! success rates both in closed form and by full-chain Monte Carlo
//! simulation.
//!
//! Waveform-domain code is generic over the sample scalar via [`Scalar`]
//! (`f32` or `f64`); probabilities and statistics are plain `f64`.

pub mod airtime;
pub mod analytic;
pub mod block;
pub mod channel;
pub mod error;
pub mod hamming;
pub mod interleaver;
pub mod jam;
pub mod modem;
pub mod num;
pub mod params;
pub mod sim;
pub mod tables;
pub mod waveform;
pub mod whitening;

pub use error::Error;
pub use num::Scalar;
pub use params::{PhyParams, Symbol};
pub use waveform::Waveform;

/// Single-precision baseband waveform.
pub type Waveform32 = Waveform<f32>;
/// Double-precision baseband waveform.
pub type Waveform64 = Waveform<f64>;

/// Single-precision demodulator.
pub type Demodulator32 = modem::Demodulator<f32>;
/// Double-precision demodulator.
pub type Demodulator64 = modem::Demodulator<f64>;

pub type Result<T> = std::result::Result<T, Error>;
