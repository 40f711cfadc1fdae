//! Payload whitening.
//!
//! Bits are XORed with the output of an 8-bit Galois LFSR using the
//! polynomial `x^8 + x^6 + x^5 + x^4 + 1` (taps mask `0xB8`), one output
//! bit (the register LSB) per shift. The default seed is `0xFF`. The exact
//! sequence only matters for cross-implementation golden vectors; the
//! analysis merely requires the whitened bits to look uniformly random.

/// Default LFSR seed.
pub const DEFAULT_SEED: u8 = 0xFF;

/// Generate `len` whitening bits (values 0/1) from the given seed.
pub fn whitening_sequence(len: usize, seed: u8) -> Vec<u8> {
    let mut state = if seed == 0 { DEFAULT_SEED } else { seed };
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(state & 1);
        let lsb = state & 1;
        state >>= 1;
        if lsb != 0 {
            state ^= 0xB8;
        }
    }
    out
}

/// XOR `bits` with the whitening sequence. Involution: applying it twice
/// returns the input, so dewhitening is the same operation.
pub fn whiten(bits: &[u8], seed: u8) -> Vec<u8> {
    whitening_sequence(bits.len(), seed)
        .iter()
        .zip(bits)
        .map(|(w, b)| w ^ (b & 1))
        .collect()
}

/// Inverse of [`whiten`].
pub fn dewhiten(bits: &[u8], seed: u8) -> Vec<u8> {
    whiten(bits, seed)
}
