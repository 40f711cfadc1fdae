//! Randomized invariants over the codec and modulation chain.

use lorajam_core::block::{build_block, decode_block};
use lorajam_core::hamming;
use lorajam_core::interleaver::{deinterleave, interleave};
use lorajam_core::modem::{modulate_symbol, Demodulator};
use lorajam_core::params::{PhyParams, Symbol};
use lorajam_core::whitening::{dewhiten, whiten, DEFAULT_SEED};
use proptest::prelude::*;

fn phy_params() -> impl Strategy<Value = PhyParams> {
    (7u8..=12, 1u8..=4).prop_map(|(sf, cr)| PhyParams::new(sf, cr).unwrap())
}

proptest! {
    #[test]
    fn whitening_is_an_involution(bits in prop::collection::vec(0u8..2, 0..256)) {
        let once = whiten(&bits, DEFAULT_SEED);
        prop_assert_eq!(dewhiten(&once, DEFAULT_SEED), bits);
    }

    #[test]
    fn hamming_round_trips_clean_codewords(nibble in 0u8..16, cr in 1u8..=4) {
        let cw = hamming::encode(nibble, cr).unwrap();
        prop_assert_eq!(cw.len(), cr as usize + 4);
        let (out, _) = hamming::decode(&cw, cr).unwrap();
        prop_assert_eq!(out, nibble);
    }

    #[test]
    fn hamming_corrects_any_single_flip(
        nibble in 0u8..16,
        cr in 3u8..=4,
        pos in 0usize..8,
    ) {
        let mut cw = hamming::encode(nibble, cr).unwrap();
        let pos = pos % cw.len();
        cw[pos] ^= 1;
        let (out, _) = hamming::decode(&cw, cr).unwrap();
        prop_assert_eq!(out, nibble);
    }

    #[test]
    fn interleaver_is_invertible(params in phy_params(), seed in any::<u64>()) {
        let (m, l) = (params.m(), params.l());
        let mut state = seed | 1;
        let matrix: Vec<Vec<u8>> = (0..m)
            .map(|_| {
                (0..l)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                        (state >> 63) as u8
                    })
                    .collect()
            })
            .collect();
        let inter = interleave(&matrix, params).unwrap();
        prop_assert_eq!(deinterleave(&inter, params).unwrap(), matrix);
    }

    #[test]
    fn block_round_trips(params in phy_params(), seed in any::<u64>()) {
        let mut state = seed | 1;
        let payload: Vec<u8> = (0..params.m())
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                ((state >> 60) & 0xF) as u8
            })
            .collect();
        let symbols = build_block(&payload, params).unwrap();
        prop_assert_eq!(symbols.len(), params.l());
        let (decoded, ok) = decode_block(&symbols, params).unwrap();
        prop_assert!(ok);
        prop_assert_eq!(decoded, payload);
    }

    #[test]
    fn modulation_round_trips(params in phy_params(), raw in any::<u32>()) {
        let s = Symbol::new(raw % params.n() as u32, params).unwrap();
        let demod = Demodulator::<f64>::new(params);
        let wave = modulate_symbol(s, params);
        let (out, peak) = demod.demodulate_window(&wave).unwrap();
        prop_assert_eq!(out, s);
        prop_assert!((peak - 1.0).abs() < 1e-9);
    }
}
