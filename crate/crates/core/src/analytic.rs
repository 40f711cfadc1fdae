//! Closed-form and semi-numerical frame-success-rate predictions.
//!
//! With random whitened payloads and uniform-random jamming symbols, every
//! bit of a jammed window flips with probability 0.5 (a BSC(0.5)). For a
//! block of `m` codewords spread over `l` symbols by the interleaver:
//!
//! * CR 1-2 (detect-only): `P_sync(n_s) = 0.5^(m * n_s)`.
//! * CR 3-4 (single-error-correcting):
//!   `P_sync(n_s) = 0.5^(m*(n_s-1)) * (0.5 * (1 + n_s))^m`.
//!
//! The per-codeword success probability is `0.5^n_s * (1 + n_s)`, i.e. the
//! chance of at most one flipped bit among the `n_s` bits the jammed
//! windows contribute to that codeword.
//!
//! Misaligned attacks have no closed form; their success probability is the
//! expectation of `P_sync(n_ss)` over the chip-offset distribution, with
//! the jammed-window count `n_ss` evaluated numerically per draw.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::jam::{self, JamMode, JamSpec};
use crate::modem::Demodulator;
use crate::params::PhyParams;
use crate::waveform::Waveform;

/// Bit-level survival probabilities of the jammed channel. Both are 0.5:
/// a jammed window replaces the symbol with a uniform-random one, so each
/// of its bits is equally likely to survive or flip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BscParams {
    pub p: f64,
    pub p_bar: f64,
}

impl Default for BscParams {
    fn default() -> Self {
        Self { p: 0.5, p_bar: 0.5 }
    }
}

/// A success-probability estimate. Closed forms carry `n_tau_samples == 0`
/// and `std_err == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuccessEstimate {
    pub value: f64,
    pub n_tau_samples: usize,
    pub std_err: f64,
}

impl SuccessEstimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            n_tau_samples: 0,
            std_err: 0.0,
        }
    }
}

/// Probability that one codeword survives `n_s` jammed windows with at
/// most one flipped bit: `0.5^n_s * (1 + n_s)`.
pub fn codeword_success(n_s: usize) -> f64 {
    0.5f64.powi(n_s as i32) * (1.0 + n_s as f64)
}

/// Maximum jammed-window count `p_sync` accepts: a misaligned burst of
/// `l` symbols can cover `l + 1` windows.
fn max_jammed(params: PhyParams) -> usize {
    params.l() + 1
}

/// Block success probability under synchronized jamming of `n_s` windows.
///
/// Valid whenever the jamming amplitude exceeds the legitimate one
/// (`v_a > 1`); the value is then independent of `v_a`. Accepts counts up
/// to `l + 1` so it can also consume jammed-window counts of misaligned
/// bursts.
pub fn p_sync(n_s: usize, params: PhyParams) -> Result<SuccessEstimate, Error> {
    if n_s > max_jammed(params) {
        return Err(Error::JamSymbolCount {
            n_s,
            max: max_jammed(params),
        });
    }
    if n_s == 0 {
        return Ok(SuccessEstimate::exact(1.0));
    }
    let m = params.m();
    // powi keeps the values exact dyadic rationals, so they can be compared
    // bit-for-bit against the enumeration oracle.
    let value = if params.corrects_single_errors() {
        codeword_success(n_s).powi(m as i32)
    } else {
        0.5f64.powi((m * n_s) as i32)
    };
    Ok(SuccessEstimate::exact(value))
}

/// Independent enumeration oracle for [`p_sync`].
///
/// Enumerates all `2^(m*n_s)` flip patterns over the bits the jammed
/// windows contribute, routes each bit to its codeword through the
/// interleaver index mapping, and counts patterns where every codeword
/// stays within the code's correction radius (0 flips for CR 1-2, 1 for
/// CR 3-4).
pub fn p_sync_bruteforce(n_s: usize, params: PhyParams) -> Result<f64, Error> {
    let m = params.m();
    let bits = m * n_s;
    if bits > 24 {
        return Err(Error::Intractable(bits));
    }
    if n_s > params.l() {
        return Err(Error::JamSymbolCount {
            n_s,
            max: params.l(),
        });
    }
    if n_s == 0 {
        return Ok(1.0);
    }

    // codeword index of bit j of jammed symbol i.
    let codeword_of = |i: usize, j: usize| (m - 1 - j + i) % m;
    let tolerance = if params.corrects_single_errors() { 1 } else { 0 };

    let mut good = 0u64;
    for pattern in 0u64..(1u64 << bits) {
        let mut flips = vec![0u32; m];
        for b in 0..bits {
            if (pattern >> b) & 1 == 1 {
                let (i, j) = (b / m, b % m);
                flips[codeword_of(i, j)] += 1;
            }
        }
        if flips.iter().all(|&f| f <= tolerance) {
            good += 1;
        }
    }
    Ok(good as f64 / (1u64 << bits) as f64)
}

fn mc_mean<F>(trials: usize, mut one: F) -> Result<SuccessEstimate, Error>
where
    F: FnMut() -> Result<f64, Error>,
{
    assert!(trials >= 1);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        let v = one()?;
        sum += v;
        sum_sq += v * v;
    }
    let n = trials as f64;
    let mean = sum / n;
    let var = ((sum_sq / n) - mean * mean).max(0.0);
    let std_err = if trials > 1 {
        (var / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(SuccessEstimate {
        value: mean,
        n_tau_samples: trials,
        std_err,
    })
}

/// Mean success probability under non-synchronized jamming: per offset
/// draw, generate the misaligned burst, count jammed windows numerically,
/// and average `P_sync(n_ss)`.
pub fn p_nosync_mean<R: Rng + ?Sized>(
    n_s: usize,
    params: PhyParams,
    spec: &JamSpec,
    trials: usize,
    rng: &mut R,
) -> Result<SuccessEstimate, Error> {
    let spec = JamSpec {
        mode: JamMode::NonSynchronized,
        n_s,
        ..*spec
    };
    let demod = Demodulator::<f64>::new(params);
    mc_mean(trials, || {
        let tau = spec.offset.sample(rng)?;
        let wave: Waveform<f64> = jam::gen_jam_waveform(&spec, params, tau, rng)?;
        let report = jam::window_indicators(&demod, &wave)?;
        Ok(p_sync(report.n_ss, params)?.value)
    })
}

/// Mean success probability under repeated-symbol jamming.
///
/// The jammed-window count per draw is evaluated numerically over all
/// covered windows. For `v_a > 1` every interior window accumulates the
/// full amplitude and is always jammed, so the count reduces to
/// `n_s - 1` plus the two boundary indicators.
pub fn p_rep_mean<R: Rng + ?Sized>(
    n_s: usize,
    params: PhyParams,
    spec: &JamSpec,
    trials: usize,
    rng: &mut R,
) -> Result<SuccessEstimate, Error> {
    if n_s == 0 {
        return Err(Error::JamSymbolCount { n_s, max: params.l() });
    }
    let spec = JamSpec {
        mode: JamMode::RepeatedSymbol,
        n_s,
        ..*spec
    };
    let demod = Demodulator::<f64>::new(params);
    mc_mean(trials, || {
        let tau = spec.offset.sample(rng)?;
        let wave: Waveform<f64> = jam::gen_jam_waveform(&spec, params, tau, rng)?;
        let report = jam::window_indicators(&demod, &wave)?;
        Ok(p_sync(report.n_ss, params)?.value)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn p(sf: u8, cr: u8) -> PhyParams {
        PhyParams::new(sf, cr).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(p_sync(0, p(7, 1)).unwrap().value, 1.0);
        assert_eq!(p_sync(0, p(10, 4)).unwrap().value, 1.0);
        assert!((p_sync(1, p(7, 1)).unwrap().value - 0.0078125).abs() < 1e-15);
        assert_eq!(p_sync(1, p(7, 3)).unwrap().value, 1.0);
        let expected = 0.75f64.powi(7);
        assert!((p_sync(2, p(7, 4)).unwrap().value - expected).abs() < 1e-12);
        // Cross-check Eq-by-codeword: P_sync == codeword_success^m.
        assert!(
            (p_sync(2, p(7, 4)).unwrap().value - codeword_success(2).powi(7)).abs() < 1e-12
        );
    }

    #[test]
    fn codeword_success_values() {
        assert_eq!(codeword_success(0), 1.0);
        assert_eq!(codeword_success(1), 1.0);
        assert_eq!(codeword_success(5), 6.0 / 32.0);

        // Brute-force oracle: enumerate all jam-bit patterns of one
        // codeword and count those with at most one flip.
        for n_s in 0..=8usize {
            let total = 1u32 << n_s;
            let good = (0..total)
                .filter(|pat| pat.count_ones() <= 1)
                .count() as f64;
            assert!((codeword_success(n_s) - good / total as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn class_equality_and_monotonicity() {
        for sf in [7u8, 10] {
            for n_s in 0..=5usize {
                let a = p_sync(n_s, p(sf, 1)).unwrap().value;
                let b = p_sync(n_s, p(sf, 2)).unwrap().value;
                assert_eq!(a, b);
                let c = p_sync(n_s, p(sf, 3)).unwrap().value;
                let d = p_sync(n_s, p(sf, 4)).unwrap().value;
                assert_eq!(c, d);
            }
            for cr in 1..=4u8 {
                let mut prev = f64::INFINITY;
                for n_s in 0..=p(sf, cr).l() {
                    let v = p_sync(n_s, p(sf, cr)).unwrap().value;
                    assert!(v <= prev);
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn bruteforce_matches_closed_form() {
        for cr in [1u8, 3] {
            for n_s in 0..=3usize {
                let params = p(7, cr);
                let bf = p_sync_bruteforce(n_s, params).unwrap();
                let cf = p_sync(n_s, params).unwrap().value;
                assert_eq!(bf, cf, "cr={cr} n_s={n_s}");
            }
        }
    }

    #[test]
    fn bruteforce_rejects_intractable_sizes() {
        assert_eq!(
            p_sync_bruteforce(4, p(7, 4)),
            Err(Error::Intractable(28))
        );
    }

    #[test]
    fn nosync_saturates_at_high_amplitude() {
        let params = p(7, 3);
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let mut spec = JamSpec::new(JamMode::NonSynchronized, 2, 100.0, params).unwrap();
        // Keep offsets away from the support edges so even the boundary
        // window fractions clear the threshold at v_a = 100.
        spec.offset.std = 5.0;
        let est = p_nosync_mean(2, params, &spec, 200, &mut rng).unwrap();
        // Every covered window jammed: estimate == P_sync(n_s + 1).
        let expected = p_sync(3, params).unwrap().value;
        assert!((est.value - expected).abs() < 1e-12, "est {}", est.value);
    }

    #[test]
    fn nosync_below_threshold_is_harmless() {
        let params = p(7, 1);
        let mut rng = ChaCha12Rng::seed_from_u64(32);
        let spec = JamSpec::new(JamMode::NonSynchronized, 3, 0.5, params).unwrap();
        let est = p_nosync_mean(3, params, &spec, 100, &mut rng).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.std_err, 0.0);
    }

    #[test]
    fn rep_effective_count_is_at_least_interior_windows() {
        let params = p(7, 1);
        let demod = Demodulator::<f64>::new(params);
        let spec = JamSpec::new(JamMode::RepeatedSymbol, 4, 2.0, params).unwrap();
        for seed in 0..20u64 {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let tau = spec.offset.sample(&mut rng).unwrap();
            let wave: Waveform<f64> =
                jam::gen_jam_waveform(&spec, params, tau, &mut rng).unwrap();
            let report = jam::window_indicators(&demod, &wave).unwrap();
            assert!(report.n_ss >= 3, "tau={tau} n_ss={}", report.n_ss);
        }
    }

    #[test]
    fn rep_requires_at_least_one_symbol() {
        let params = p(7, 1);
        let mut rng = ChaCha12Rng::seed_from_u64(33);
        let spec = JamSpec::new(JamMode::RepeatedSymbol, 1, 2.0, params).unwrap();
        assert!(p_rep_mean(0, params, &spec, 10, &mut rng).is_err());
    }

    #[test]
    fn stderr_shrinks_with_trials() {
        let params = p(7, 1);
        let spec = JamSpec::new(JamMode::NonSynchronized, 2, 1.2, params).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(34);
        let small = p_nosync_mean(2, params, &spec, 500, &mut rng).unwrap();
        let large = p_nosync_mean(2, params, &spec, 2000, &mut rng).unwrap();
        // 4x the trials should roughly halve the standard error.
        let ratio = small.std_err / large.std_err;
        assert!((ratio - 2.0).abs() < 0.4, "ratio {ratio}");
    }
}
