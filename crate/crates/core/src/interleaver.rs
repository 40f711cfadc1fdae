//! LoRa diagonal interleaving.
//!
//! The interleaver maps an `m x l` bit matrix (row `j` = codeword `j`) to an
//! `l x m` matrix (row `i` = interleaved symbol `i`). Row `i` of the output
//! is column `i` of the input read bottom-up, then rotated right `i` times:
//!
//! ```text
//! out[i][j] = in[(m - 1 - j + i) mod m][i]
//! ```
//!
//! This index formula is the fixed, documented layout; every output row
//! contains exactly one bit from each input codeword, so one corrupted
//! symbol flips at most one bit per codeword.

use crate::error::Error;
use crate::params::PhyParams;

fn check_dims(block: &[Vec<u8>], rows: usize, cols: usize) -> Result<(), Error> {
    if block.len() != rows || block.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch { rows, cols });
    }
    Ok(())
}

/// `m x l` codeword matrix -> `l x m` symbol-bit matrix.
pub fn interleave(block: &[Vec<u8>], params: PhyParams) -> Result<Vec<Vec<u8>>, Error> {
    let (m, l) = (params.m(), params.l());
    check_dims(block, m, l)?;
    let out = (0..l)
        .map(|i| {
            (0..m)
                .map(|j| block[(m - 1 - j + i) % m][i] & 1)
                .collect()
        })
        .collect();
    Ok(out)
}

/// Inverse of [`interleave`]: `l x m` symbol-bit matrix -> `m x l` codewords.
pub fn deinterleave(block: &[Vec<u8>], params: PhyParams) -> Result<Vec<Vec<u8>>, Error> {
    let (m, l) = (params.m(), params.l());
    check_dims(block, l, m)?;
    let out = (0..m)
        .map(|a| {
            (0..l)
                .map(|i| block[i][(m - 1 - a + i) % m] & 1)
                .collect()
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn params(sf: u8, cr: u8) -> PhyParams {
        PhyParams::new(sf, cr).unwrap()
    }

    fn random_block(m: usize, l: usize, rng: &mut impl Rng) -> Vec<Vec<u8>> {
        (0..m)
            .map(|_| (0..l).map(|_| rng.gen_range(0..2u8)).collect())
            .collect()
    }

    /// Independent construction: take column i bottom-up, then rotate the
    /// row right i times. Cross-checks the closed-form index formula.
    fn interleave_by_construction(block: &[Vec<u8>], m: usize, l: usize) -> Vec<Vec<u8>> {
        (0..l)
            .map(|i| {
                let column_bottom_up: Vec<u8> = (0..m).map(|j| block[m - 1 - j][i]).collect();
                let mut row = vec![0u8; m];
                for (j, &bit) in column_bottom_up.iter().enumerate() {
                    row[(j + i) % m] = bit;
                }
                row
            })
            .collect()
    }

    #[test]
    fn matches_matrix_construction_oracle() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for sf in 7..=12u8 {
            for cr in 1..=4u8 {
                let p = params(sf, cr);
                for _ in 0..20 {
                    let block = random_block(p.m(), p.l(), &mut rng);
                    assert_eq!(
                        interleave(&block, p).unwrap(),
                        interleave_by_construction(&block, p.m(), p.l())
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(12);
        for sf in 7..=12u8 {
            for cr in 1..=4u8 {
                let p = params(sf, cr);
                let block = random_block(p.m(), p.l(), &mut rng);
                let out = interleave(&block, p).unwrap();
                assert_eq!(deinterleave(&out, p).unwrap(), block);
            }
        }
    }

    #[test]
    fn all_zeros_maps_to_all_zeros() {
        let p = params(7, 1);
        let block = vec![vec![0u8; p.l()]; p.m()];
        let out = interleave(&block, p).unwrap();
        assert!(out.iter().flatten().all(|&b| b == 0));
    }

    #[test]
    fn single_bit_lands_in_exactly_one_position() {
        let p = params(7, 1);
        for j in 0..p.m() {
            for k in 0..p.l() {
                let mut block = vec![vec![0u8; p.l()]; p.m()];
                block[j][k] = 1;
                let out = interleave(&block, p).unwrap();
                let ones: usize = out.iter().flatten().map(|&b| b as usize).sum();
                assert_eq!(ones, 1, "input bit ({j},{k})");
                // The set bit must sit in output row k (column k of input).
                let row_ones: usize = out[k].iter().map(|&b| b as usize).sum();
                assert_eq!(row_ones, 1);
            }
        }
    }

    #[test]
    fn every_output_row_touches_every_codeword() {
        // Mark each input row with its own value and check each output row
        // holds a permutation of all row marks.
        let p = params(10, 4);
        let block: Vec<Vec<u8>> = (0..p.m())
            .map(|j| vec![(j % 2) as u8; p.l()])
            .collect();
        let out = interleave(&block, p).unwrap();
        for row in &out {
            let ones: usize = row.iter().map(|&b| b as usize).sum();
            assert_eq!(ones, p.m() / 2);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let p = params(7, 1);
        let block = vec![vec![0u8; 4]; 7];
        assert_eq!(
            interleave(&block, p),
            Err(Error::DimensionMismatch { rows: 7, cols: 5 })
        );
    }
}
