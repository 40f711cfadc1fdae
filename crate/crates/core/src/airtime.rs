//! Airtime accounting, signal-to-jamming ratio, and jamming-symbol gain.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::params::PhyParams;

/// Symbol budget of one frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirtimeBudget {
    /// Preamble length in symbols: upchirps + 2.25 downchirps + 2 network
    /// identifier symbols. The minimum (6 upchirps) is 10.25 symbols.
    pub preamble_symbols: f64,
    /// Payload section symbols, including the 8 fixed chain symbols.
    pub payload_symbols: u32,
    pub total_symbols: f64,
}

/// Symbols a conventional LoRa transceiver emits for an empty frame
/// (minimum preamble plus the 8 chain symbols); the reference length for
/// the jamming-symbol gain.
pub const CONVENTIONAL_JAMMER_SYMBOLS: f64 = 18.25;

/// Standard LoRa payload symbol count plus preamble accounting.
///
/// `payload_symbols = 8 + max(ceil((8*PL - 4*SF + 28 + 16*CRC - 20*IH)
/// / (4*SF)) * (CR + 4), 0)` where `IH = 1` drops the explicit header.
pub fn airtime_symbols(
    params: PhyParams,
    payload_bytes: u32,
    explicit_header: bool,
    crc: bool,
    preamble_upchirps: f64,
) -> AirtimeBudget {
    let sf = params.sf() as i64;
    let cr = params.cr() as i64;
    let pl = payload_bytes as i64;
    let crc = if crc { 1i64 } else { 0 };
    let ih = if explicit_header { 0i64 } else { 1 };

    let numerator = 8 * pl - 4 * sf + 28 + 16 * crc - 20 * ih;
    let blocks = if numerator > 0 {
        (numerator + 4 * sf - 1) / (4 * sf)
    } else {
        0
    };
    let payload_symbols = (8 + (blocks * (cr + 4)).max(0)) as u32;

    let preamble_symbols = preamble_upchirps + 2.25 + 2.0;
    AirtimeBudget {
        preamble_symbols,
        payload_symbols,
        total_symbols: preamble_symbols + payload_symbols as f64,
    }
}

/// Signal-to-jamming ratio in dB: the power-weighted ratio of legitimate
/// frame symbols to jamming symbols.
pub fn sjr_db(
    params: PhyParams,
    payload_bytes: u32,
    node_power_dbm: f64,
    jam_power_dbm: f64,
    n_s: usize,
    explicit_header: bool,
    crc: bool,
    preamble_upchirps: f64,
) -> Result<f64, Error> {
    if n_s == 0 {
        return Err(Error::JamSymbolCount { n_s, max: params.l() });
    }
    let budget = airtime_symbols(params, payload_bytes, explicit_header, crc, preamble_upchirps);
    let legit = budget.total_symbols * 10f64.powf(node_power_dbm / 10.0);
    let jam = n_s as f64 * 10f64.powf(jam_power_dbm / 10.0);
    Ok(10.0 * (legit / jam).log10())
}

/// Jamming-symbol gain in dB over a conventional-transceiver jammer that
/// must emit `reference_symbols` (18.25 by default).
pub fn symbol_gain_db(n_s: usize, reference_symbols: f64) -> Result<f64, Error> {
    if n_s == 0 {
        return Err(Error::JamSymbolCount { n_s, max: usize::MAX });
    }
    Ok(10.0 * (reference_symbols / n_s as f64).log10())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(sf: u8, cr: u8) -> PhyParams {
        PhyParams::new(sf, cr).unwrap()
    }

    #[test]
    fn empty_implicit_payload_clamps_to_eight_symbols() {
        let b = airtime_symbols(p(7, 1), 0, false, false, 8.0);
        assert_eq!(b.payload_symbols, 8);
        assert_eq!(b.preamble_symbols, 12.25);
    }

    #[test]
    fn sf7_cr1_180_bytes() {
        // ceil(1456 / 28) * 5 + 8 == 268 with CRC and explicit header.
        let b = airtime_symbols(p(7, 1), 180, true, true, 8.0);
        assert_eq!(b.payload_symbols, 268);
    }

    #[test]
    fn sf10_cr3_60_bytes() {
        let b = airtime_symbols(p(10, 3), 60, true, true, 8.0);
        // ceil(484 / 40) = 13 codeword blocks.
        assert_eq!(b.payload_symbols, 8 + 13 * 7);
    }

    #[test]
    fn sjr_zero_for_matched_budget() {
        // Equal powers and as many jam symbols as legitimate ones.
        let b = airtime_symbols(p(7, 1), 180, true, false, 6.0);
        let total = b.total_symbols as usize; // 278.25 truncated; use exact
        let sjr = sjr_db(p(7, 1), 180, 10.0, 10.0, total, true, false, 6.0).unwrap();
        assert!(sjr.abs() < 0.01, "sjr {sjr}");
    }

    #[test]
    fn sjr_rejects_zero_jam_symbols() {
        assert!(sjr_db(p(7, 1), 180, 10.0, 13.0, 0, true, false, 6.0).is_err());
    }

    #[test]
    fn symbol_gain_values() {
        assert!((symbol_gain_db(2, 18.25).unwrap() - 9.60).abs() < 0.05);
        assert!((symbol_gain_db(4, 18.25).unwrap() - 6.59).abs() < 0.05);
        assert!((symbol_gain_db(3, 18.25).unwrap() - 7.84).abs() < 0.05);
        // Matching the reference length gives no gain.
        assert!(symbol_gain_db(18, 18.0).unwrap().abs() < 1e-12);
        assert!(symbol_gain_db(0, 18.25).is_err());
    }
}
