//! One interleaving block through the full coding chain:
//! whiten -> Hamming encode -> interleave -> symbol mapping, and back.
//!
//! A block carries `m` payload nibbles and produces `l` symbols. Each
//! interleaved row of `m` bits is read MSB-first as the symbol value
//! (`m == sf`, so a row fills the symbol bit width exactly).

use crate::error::Error;
use crate::hamming::{self, DecodeStatus};
use crate::interleaver;
use crate::params::{PhyParams, Symbol};
use crate::whitening;

fn nibbles_to_bits(nibbles: &[u8]) -> Vec<u8> {
    let mut bits = Vec::with_capacity(nibbles.len() * 4);
    for &n in nibbles {
        for k in (0..4).rev() {
            bits.push((n >> k) & 1);
        }
    }
    bits
}

fn bits_to_nibbles(bits: &[u8]) -> Vec<u8> {
    bits.chunks(4)
        .map(|c| (c[0] << 3) | (c[1] << 2) | (c[2] << 1) | c[3])
        .collect()
}

/// Encode `m` payload nibbles into the block's `l` symbols.
pub fn build_block(payload_nibbles: &[u8], params: PhyParams) -> Result<Vec<Symbol>, Error> {
    let (m, l) = (params.m(), params.l());
    if payload_nibbles.len() != m {
        return Err(Error::DimensionMismatch { rows: m, cols: 4 });
    }

    let whitened = bits_to_nibbles(&whitening::whiten(
        &nibbles_to_bits(payload_nibbles),
        whitening::DEFAULT_SEED,
    ));
    let codewords: Vec<Vec<u8>> = whitened
        .iter()
        .map(|&n| hamming::encode(n, params.cr()))
        .collect::<Result<_, _>>()?;
    let rows = interleaver::interleave(&codewords, params)?;

    let symbols = (0..l)
        .map(|i| {
            let value = rows[i]
                .iter()
                .fold(0u32, |acc, &bit| (acc << 1) | bit as u32);
            Symbol::new(value, params).expect("m-bit value < N")
        })
        .collect();
    Ok(symbols)
}

/// Decode the block's `l` symbols back into `m` nibbles.
///
/// `success` is true iff every codeword decoded with status `Ok` or
/// `Corrected`. Note an undetected error pattern can still corrupt the
/// payload while reporting success; callers that know the transmitted
/// payload should compare it as well.
pub fn decode_block(symbols: &[Symbol], params: PhyParams) -> Result<(Vec<u8>, bool), Error> {
    let (m, l) = (params.m(), params.l());
    if symbols.len() != l {
        return Err(Error::DimensionMismatch { rows: l, cols: m });
    }

    let rows: Vec<Vec<u8>> = symbols
        .iter()
        .map(|s| {
            (0..m)
                .map(|j| ((s.value() >> (m - 1 - j)) & 1) as u8)
                .collect()
        })
        .collect();
    let codewords = interleaver::deinterleave(&rows, params)?;

    let mut success = true;
    let mut whitened = Vec::with_capacity(m);
    for cw in &codewords {
        let (nibble, status) = hamming::decode(cw, params.cr())?;
        success &= status.is_success();
        whitened.push(nibble);
    }

    let nibbles = bits_to_nibbles(&whitening::dewhiten(
        &nibbles_to_bits(&whitened),
        whitening::DEFAULT_SEED,
    ));
    Ok((nibbles, success))
}

/// Decode-time status of each codeword, for diagnostics.
pub fn decode_block_statuses(
    symbols: &[Symbol],
    params: PhyParams,
) -> Result<Vec<DecodeStatus>, Error> {
    let (m, l) = (params.m(), params.l());
    if symbols.len() != l {
        return Err(Error::DimensionMismatch { rows: l, cols: m });
    }
    let rows: Vec<Vec<u8>> = symbols
        .iter()
        .map(|s| {
            (0..m)
                .map(|j| ((s.value() >> (m - 1 - j)) & 1) as u8)
                .collect()
        })
        .collect();
    interleaver::deinterleave(&rows, params)?
        .iter()
        .map(|cw| hamming::decode(cw, params.cr()).map(|(_, s)| s))
        .collect()
}
