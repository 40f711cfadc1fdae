//! Hamming codes (4,5), (4,6), (4,7) and (4,8) selected by the coding rate
//! index `cr` in 1..=4.
//!
//! Layout is systematic with the data nibble first: a codeword is
//! `[d0 d1 d2 d3 p0 .. p_{cr-1}]` where `d0` is the nibble MSB and
//!
//! * `p0 = d0 ^ d1 ^ d2 ^ d3` for CR 1,
//! * `p0 = d0 ^ d1 ^ d2`, `p1 = d1 ^ d2 ^ d3` for CR 2,
//! * `p0 = d0 ^ d1 ^ d2`, `p1 = d1 ^ d2 ^ d3`, `p2 = d0 ^ d1 ^ d3` for CR 3,
//! * CR 4 appends the overall parity of the CR 3 codeword.
//!
//! CR 1 and 2 only detect errors; CR 3 and 4 correct any single-bit error.
//! Decoding is by nearest valid codeword over the 16 candidates.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Outcome of decoding one codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecodeStatus {
    /// Exact match with a valid codeword.
    Ok,
    /// A single-bit error was corrected (CR 3 and 4 only).
    Corrected,
    /// An error was detected but not corrected (CR 1 and 2).
    Detected,
    /// Uncorrectable: no codeword within the correction radius (CR 4).
    Failed,
}

impl DecodeStatus {
    /// True when the decoder believes the data nibble is intact.
    pub fn is_success(&self) -> bool {
        matches!(self, DecodeStatus::Ok | DecodeStatus::Corrected)
    }
}

fn nibble_bits(nibble: u8) -> [u8; 4] {
    [
        (nibble >> 3) & 1,
        (nibble >> 2) & 1,
        (nibble >> 1) & 1,
        nibble & 1,
    ]
}

/// Encode a nibble into a `4 + cr`-bit codeword, data bits first.
pub fn encode(nibble: u8, cr: u8) -> Result<Vec<u8>, Error> {
    if !(1..=4).contains(&cr) {
        return Err(Error::InvalidCodingRate(cr));
    }
    let [d0, d1, d2, d3] = nibble_bits(nibble & 0x0F);
    let mut cw = vec![d0, d1, d2, d3];
    match cr {
        1 => cw.push(d0 ^ d1 ^ d2 ^ d3),
        2 => {
            cw.push(d0 ^ d1 ^ d2);
            cw.push(d1 ^ d2 ^ d3);
        }
        _ => {
            cw.push(d0 ^ d1 ^ d2);
            cw.push(d1 ^ d2 ^ d3);
            cw.push(d0 ^ d1 ^ d3);
            if cr == 4 {
                let overall = cw.iter().fold(0, |acc, b| acc ^ b);
                cw.push(overall);
            }
        }
    }
    Ok(cw)
}

fn hamming_distance(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Decode a `4 + cr`-bit codeword.
///
/// CR 3 and 4 correct any single-bit error; CR 1 and 2 report any mismatch
/// as detected (never silently miscorrecting) and return the received data
/// bits unchanged.
pub fn decode(cw: &[u8], cr: u8) -> Result<(u8, DecodeStatus), Error> {
    if !(1..=4).contains(&cr) {
        return Err(Error::InvalidCodingRate(cr));
    }
    let l = cr as usize + 4;
    if cw.len() != l {
        return Err(Error::LengthMismatch {
            expected: l,
            actual: cw.len(),
        });
    }

    let mut best_nibble = 0u8;
    let mut best_dist = usize::MAX;
    for nibble in 0..16u8 {
        let candidate = encode(nibble, cr)?;
        let d = hamming_distance(cw, &candidate);
        if d < best_dist {
            best_dist = d;
            best_nibble = nibble;
        }
        if d == 0 {
            break;
        }
    }

    if best_dist == 0 {
        return Ok((best_nibble, DecodeStatus::Ok));
    }
    if cr <= 2 {
        let received = (cw[0] << 3) | (cw[1] << 2) | (cw[2] << 1) | cw[3];
        return Ok((received, DecodeStatus::Detected));
    }
    if best_dist == 1 {
        Ok((best_nibble, DecodeStatus::Corrected))
    } else {
        let received = (cw[0] << 3) | (cw[1] << 2) | (cw[2] << 1) | cw[3];
        Ok((received, DecodeStatus::Failed))
    }
}
