//! Full-chain Monte Carlo experiments and sweeps.
//!
//! A trial pushes a random payload through modulate -> jam -> demodulate ->
//! decode and reports whether the frame survived. Trials are seeded
//! individually from the experiment seed, so results are bit-identical
//! regardless of how they are partitioned across workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, SuccessEstimate};
use crate::block;
use crate::channel::{self, ChannelModel};
use crate::error::Error;
use crate::jam::{self, JamMode, JamSpec, VaConvention};
use crate::modem::{modulate_symbol, Demodulator};
use crate::params::{PhyParams, Symbol};
use crate::waveform::Waveform;

/// Success rates of zero are exported as this floor so they stay visible
/// on log-scale plots. Stored counts are never floored.
pub const FSR_DISPLAY_FLOOR: f64 = 1e-5;

/// What one trial transmits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PayloadPolicy {
    /// One interleaving block (the analysis unit).
    SingleBlock,
    /// A payload of this many bytes, split into interleaving blocks; the
    /// jamming burst hits the first block.
    PayloadBytes(u32),
}

/// One Monte Carlo experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub phy: PhyParams,
    pub jam: JamSpec,
    pub trials: usize,
    pub payload_policy: PayloadPolicy,
    pub channel: ChannelModel,
    pub seed: u64,
}

/// Estimated frame success rate with raw counts and a Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub successes: u64,
    pub trials: u64,
    pub fsr: f64,
    pub ci95: (f64, f64),
    pub floor_applied: bool,
}

impl ExperimentResult {
    /// Display value: the raw rate, floored at `FSR_DISPLAY_FLOOR` when no
    /// trial succeeded.
    pub fn fsr_floored(&self) -> f64 {
        if self.floor_applied {
            FSR_DISPLAY_FLOOR
        } else {
            self.fsr
        }
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Per-trial RNG stream, independent of worker partitioning.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial)))
}

fn block_count(cfg: &ExperimentConfig) -> usize {
    match cfg.payload_policy {
        PayloadPolicy::SingleBlock => 1,
        PayloadPolicy::PayloadBytes(bytes) => {
            let nibbles = 2 * bytes as usize;
            nibbles.div_ceil(cfg.phy.m()).max(1)
        }
    }
}

/// Run one trial: random payload, full transmit chain, jamming on the
/// first block, window-by-window demodulation, decode.
///
/// Success means the frame decoded without uncorrected errors *and* the
/// recovered payload equals the transmitted one; an undetected error
/// pattern therefore counts as a failure.
pub fn run_trial<R: Rng + ?Sized>(
    cfg: &ExperimentConfig,
    demod: &Demodulator<f64>,
    rng: &mut R,
) -> Result<bool, Error> {
    let params = cfg.phy;
    let (m, l, n) = (params.m(), params.l(), params.n());

    for blk in 0..block_count(cfg) {
        let payload: Vec<u8> = (0..m).map(|_| rng.gen_range(0..16u8)).collect();
        let symbols = block::build_block(&payload, params)?;
        let mut legit: Waveform<f64> = Waveform::zeros(0);
        for s in &symbols {
            legit.extend_from(&modulate_symbol(*s, params));
        }

        let jam_wave: Waveform<f64> = if blk == 0 && cfg.jam.n_s > 0 {
            let tau = cfg.jam.draw_offset(rng)?;
            jam::gen_jam_waveform(&cfg.jam, params, tau, rng)?
        } else {
            Waveform::empty()
        };

        let received = channel::superpose(&legit, &jam_wave, &cfg.channel, rng);
        // Only the block's own l windows matter; a burst running past the
        // block tail lands on whatever follows the block, not on it.
        let mut rx_symbols = Vec::with_capacity(l);
        for r in 0..l {
            let window = received.window(r, n).expect("block windows present");
            let (bin, _) = demod.window_peak(window)?;
            rx_symbols.push(Symbol::new(bin as u32, params).expect("bin < N"));
        }

        let (decoded, ok) = block::decode_block(&rx_symbols, params)?;
        if !(ok && decoded == payload) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Repeat [`run_trial`] with per-trial derived seeds, split across
/// `workers` threads, and aggregate. The outcome is independent of the
/// worker count.
pub fn run_experiment(cfg: &ExperimentConfig, workers: usize) -> Result<ExperimentResult, Error> {
    if cfg.trials == 0 {
        return Err(Error::InvalidConfig("trials must be >= 1".into()));
    }
    let workers = workers.max(1).min(cfg.trials);
    let trials = cfg.trials as u64;

    let chunk = trials.div_ceil(workers as u64);
    let successes: u64 = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let cfg = *cfg;
                scope.spawn(move || -> Result<u64, Error> {
                    let demod = Demodulator::<f64>::new(cfg.phy);
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(trials);
                    let mut count = 0u64;
                    for t in lo..hi {
                        let mut rng = trial_rng(cfg.seed, t);
                        if run_trial(&cfg, &demod, &mut rng)? {
                            count += 1;
                        }
                    }
                    Ok(count)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .sum::<Result<u64, Error>>()
    })?;

    let fsr = successes as f64 / trials as f64;
    Ok(ExperimentResult {
        successes,
        trials,
        fsr,
        ci95: wilson_interval(successes, trials, 1.959964),
        floor_applied: successes == 0,
    })
}

/// One cell of a sweep: Monte Carlo result next to the analytic estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub sf: u8,
    pub cr: u8,
    pub mode: JamMode,
    pub n_s: usize,
    pub v_a_db: f64,
    pub trials: u64,
    pub successes: u64,
    pub fsr: f64,
    pub fsr_floored: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub analytic: f64,
    pub analytic_stderr: f64,
}

/// Cartesian sweep template.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub sf: u8,
    pub cr_list: Vec<u8>,
    pub modes: Vec<JamMode>,
    pub va_db_list: Vec<f64>,
    pub va_convention: VaConvention,
    pub ns_range: Vec<usize>,
    pub trials: usize,
    pub tau_trials: usize,
    pub payload_policy: PayloadPolicy,
    pub channel: ChannelModel,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            sf: 7,
            cr_list: vec![1, 2, 3, 4],
            modes: vec![
                JamMode::Synchronized,
                JamMode::NonSynchronized,
                JamMode::RepeatedSymbol,
            ],
            va_db_list: vec![1.8, 4.8],
            va_convention: VaConvention::Amp20,
            ns_range: (0..=5).collect(),
            trials: 1000,
            tau_trials: 1000,
            payload_policy: PayloadPolicy::SingleBlock,
            channel: ChannelModel::default(),
            seed: 1,
            workers: 1,
        }
    }
}

/// Analytic estimate for one sweep cell.
pub fn analytic_estimate(
    params: PhyParams,
    mode: JamMode,
    n_s: usize,
    v_a: f64,
    tau_trials: usize,
    rng: &mut impl Rng,
) -> Result<SuccessEstimate, Error> {
    if n_s == 0 {
        return Ok(SuccessEstimate::exact(1.0));
    }
    let spec = JamSpec::new(mode, n_s, v_a, params)?;
    match mode {
        JamMode::Synchronized => analytic::p_sync(n_s, params),
        JamMode::NonSynchronized => {
            analytic::p_nosync_mean(n_s, params, &spec, tau_trials, rng)
        }
        JamMode::RepeatedSymbol => analytic::p_rep_mean(n_s, params, &spec, tau_trials, rng),
    }
}

/// Run the full cartesian sweep.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, Error> {
    let mut rows = Vec::new();
    let mut cell = 0u64;
    for &cr in &cfg.cr_list {
        let params = PhyParams::new(cfg.sf, cr)?;
        for &mode in &cfg.modes {
            for &va_db in &cfg.va_db_list {
                let v_a = cfg.va_convention.amplitude_from_db(va_db);
                for &n_s in &cfg.ns_range {
                    cell += 1;
                    if n_s > params.l() {
                        continue;
                    }
                    let exp_cfg = ExperimentConfig {
                        phy: params,
                        jam: JamSpec::new(mode, n_s, v_a, params)?,
                        trials: cfg.trials,
                        payload_policy: cfg.payload_policy,
                        channel: cfg.channel,
                        seed: splitmix64(cfg.seed ^ cell),
                    };
                    let result = run_experiment(&exp_cfg, cfg.workers)?;
                    let mut arng = trial_rng(cfg.seed ^ 0xA11A, cell);
                    let analytic =
                        analytic_estimate(params, mode, n_s, v_a, cfg.tau_trials, &mut arng)?;
                    rows.push(SweepRow {
                        sf: cfg.sf,
                        cr,
                        mode,
                        n_s,
                        v_a_db: va_db,
                        trials: result.trials,
                        successes: result.successes,
                        fsr: result.fsr,
                        fsr_floored: result.fsr_floored(),
                        ci_lo: result.ci95.0,
                        ci_hi: result.ci95.1,
                        analytic: analytic.value,
                        analytic_stderr: analytic.std_err,
                    });
                }
            }
        }
    }
    consistency_check(&rows)?;
    Ok(rows)
}

/// Internal sanity checks over a finished result table.
pub fn consistency_check(rows: &[SweepRow]) -> Result<(), Error> {
    for row in rows {
        if row.successes > row.trials {
            return Err(Error::ConsistencyCheck("successes exceed trials".into()));
        }
        for v in [row.fsr, row.ci_lo, row.ci_hi, row.analytic] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::ConsistencyCheck(format!(
                    "probability {v} outside [0,1]"
                )));
            }
        }
        if (row.fsr - row.successes as f64 / row.trials as f64).abs() > 1e-12 {
            return Err(Error::ConsistencyCheck("fsr does not match counts".into()));
        }
    }
    Ok(())
}

/// CSV header of the sweep result schema.
pub const CSV_HEADER: &str =
    "sf,cr,mode,n_s,v_a_db,trials,successes,fsr,fsr_floored,ci_lo,ci_hi,analytic,analytic_stderr";

/// Serialize sweep rows to the documented CSV schema. Output is a pure
/// function of the rows, so identical sweeps give byte-identical files.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.sf,
            r.cr,
            r.mode.tag(),
            r.n_s,
            r.v_a_db,
            r.trials,
            r.successes,
            r.fsr,
            r.fsr_floored,
            r.ci_lo,
            r.ci_hi,
            r.analytic,
            r.analytic_stderr
        ));
    }
    out
}
