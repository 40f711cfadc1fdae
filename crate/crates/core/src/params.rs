//! LoRa configuration parameters and symbol values.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// One LoRa physical-layer configuration.
///
/// All derived dimensions follow from the spreading factor `sf` and the
/// coding rate index `cr`:
/// * `N = 2^sf` chips (and DFT bins) per symbol,
/// * `m = sf` codewords per interleaving block,
/// * `l = 4 + cr` bits per codeword, which is also the number of symbols
///   produced by one interleaving block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhyParams {
    sf: u8,
    cr: u8,
}

impl PhyParams {
    pub fn new(sf: u8, cr: u8) -> Result<Self, Error> {
        if !(7..=12).contains(&sf) {
            return Err(Error::InvalidSpreadingFactor(sf));
        }
        if !(1..=4).contains(&cr) {
            return Err(Error::InvalidCodingRate(cr));
        }
        Ok(Self { sf, cr })
    }

    pub fn sf(&self) -> u8 {
        self.sf
    }

    pub fn cr(&self) -> u8 {
        self.cr
    }

    /// Chips (and samples, at one sample per chip) per symbol.
    pub fn n(&self) -> usize {
        1 << self.sf
    }

    /// Codewords per interleaving block.
    pub fn m(&self) -> usize {
        self.sf as usize
    }

    /// Bits per codeword; also symbols per interleaving block.
    pub fn l(&self) -> usize {
        self.cr as usize + 4
    }

    /// True when the coding rate corrects single-bit errors (CR 3 and 4);
    /// CR 1 and 2 only detect errors.
    pub fn corrects_single_errors(&self) -> bool {
        self.cr >= 3
    }
}

/// A modulated symbol value in `[0, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol(u32);

impl Symbol {
    pub fn new(value: u32, params: PhyParams) -> Result<Self, Error> {
        let n = params.n() as u32;
        if value >= n {
            return Err(Error::SymbolOutOfRange { value, n });
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> u32 {
        self.0
    }
}
