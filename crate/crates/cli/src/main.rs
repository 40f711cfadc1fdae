//! `lorajam`: analytic curves, Monte Carlo sweeps, and efficiency tables
//! for LoRa under reactive jamming.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime error, 3 internal
//! consistency-check failure.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lorajam_core::jam::{JamMode, VaConvention};
use lorajam_core::params::PhyParams;
use lorajam_core::sim::{
    analytic_estimate, rows_to_csv, sweep, trial_rng, PayloadPolicy, SweepConfig,
};
use lorajam_core::tables;
use lorajam_core::Error as CoreError;

const EXIT_USAGE: u8 = 1;
const EXIT_RUNTIME: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

/// LoRa jamming-resilience analyzer.
///
/// Every long flag can also be set through an environment variable with
/// the `LORAJAM_` prefix (for example `LORAJAM_TRIALS=5000`), and through
/// a flat `key=value` config file passed with `--config`. Precedence:
/// command line, then environment, then config file, then defaults.
#[derive(Parser, Debug)]
#[command(name = "lorajam", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form and semi-analytic frame success rates, no waveform
    /// simulation of the legitimate link.
    Theory(SweepArgs),
    /// Full-chain Monte Carlo sweep with analytic estimates alongside.
    Simulate(SweepArgs),
    /// Signal-to-jamming ratio and jamming-symbol gain tables next to the
    /// published reference values.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VaConventionArg {
    /// dB figure is an amplitude ratio: v_a = 10^(db/20).
    Amp20,
    /// dB figure is read on a power scale: v_a = 10^(db/10).
    Pow10,
}

impl From<VaConventionArg> for VaConvention {
    fn from(v: VaConventionArg) -> Self {
        match v {
            VaConventionArg::Amp20 => VaConvention::Amp20,
            VaConventionArg::Pow10 => VaConvention::Pow10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Flat key=value config file (same keys as the long flags, with
    /// underscores; lists comma-separated).
    #[arg(long, env = "LORAJAM_CONFIG")]
    config: Option<PathBuf>,
    /// Spreading factor, 7..=12.
    #[arg(long, env = "LORAJAM_SF")]
    sf: Option<u8>,
    /// Coding rates to sweep, comma-separated subset of 1..=4.
    #[arg(long, env = "LORAJAM_CR", value_delimiter = ',')]
    cr: Option<Vec<u8>>,
    /// Jamming burst lengths in symbols, comma-separated.
    #[arg(long, env = "LORAJAM_NS", value_delimiter = ',')]
    ns: Option<Vec<usize>>,
    /// Jamming amplitude points in dB, comma-separated.
    #[arg(long = "va-db", env = "LORAJAM_VA_DB", value_delimiter = ',')]
    va_db: Option<Vec<f64>>,
    /// How the dB figures map to a linear amplitude.
    #[arg(long = "va-convention", env = "LORAJAM_VA_CONVENTION", value_enum)]
    va_convention: Option<VaConventionArg>,
    /// Attack models, comma-separated subset of sync,nosync,rep.
    #[arg(long, env = "LORAJAM_MODES", value_delimiter = ',')]
    modes: Option<Vec<String>>,
    /// Monte Carlo trials per sweep cell.
    #[arg(long, env = "LORAJAM_TRIALS")]
    trials: Option<usize>,
    /// Offset draws behind each semi-analytic estimate.
    #[arg(long = "tau-trials", env = "LORAJAM_TAU_TRIALS")]
    tau_trials: Option<usize>,
    /// Root seed; identical seeds give byte-identical output.
    #[arg(long, env = "LORAJAM_SEED")]
    seed: Option<u64>,
    /// Worker threads; does not affect the results.
    #[arg(long, env = "LORAJAM_WORKERS")]
    workers: Option<usize>,
    /// Simulate frames of this many payload bytes instead of a single
    /// interleaving block.
    #[arg(long = "payload-bytes", env = "LORAJAM_PAYLOAD_BYTES")]
    payload_bytes: Option<u32>,
    /// Output file; stdout when omitted. A run manifest is written next
    /// to the file as `<out>.manifest.json`.
    #[arg(long, env = "LORAJAM_OUT")]
    out: Option<PathBuf>,
    #[arg(long, env = "LORAJAM_FORMAT", value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// Output file; stdout when omitted.
    #[arg(long, env = "LORAJAM_OUT")]
    out: Option<PathBuf>,
    #[arg(long, env = "LORAJAM_FORMAT", value_enum)]
    format: Option<FormatArg>,
}

/// Flat key=value file: one pair per line, `#` starts a comment.
fn parse_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let mut pairs = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected key=value", path.display(), ln + 1))?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn parse_list<T: std::str::FromStr>(value: &str, key: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|e| anyhow!("config key {key}: {e}"))
        })
        .collect()
}

fn parse_modes(tags: &[String]) -> Result<Vec<JamMode>> {
    tags.iter()
        .map(|t| {
            JamMode::from_tag(t.trim())
                .ok_or_else(|| anyhow!("unknown mode {t:?}; expected sync, nosync, or rep"))
        })
        .collect()
}

/// Final, merged settings for theory/simulate runs.
#[derive(Debug, Clone, Serialize)]
struct ResolvedSweep {
    sf: u8,
    cr: Vec<u8>,
    ns: Vec<usize>,
    va_db: Vec<f64>,
    va_convention: VaConvention,
    modes: Vec<JamMode>,
    trials: usize,
    tau_trials: usize,
    seed: u64,
    workers: usize,
    payload_bytes: Option<u32>,
    format: String,
}

fn resolve(args: &SweepArgs) -> Result<ResolvedSweep> {
    let defaults = SweepConfig::default();
    let mut r = ResolvedSweep {
        sf: defaults.sf,
        cr: defaults.cr_list,
        ns: defaults.ns_range,
        va_db: defaults.va_db_list,
        va_convention: defaults.va_convention,
        modes: defaults.modes,
        trials: defaults.trials,
        tau_trials: defaults.tau_trials,
        seed: defaults.seed,
        workers: std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1),
        payload_bytes: None,
        format: "csv".into(),
    };

    if let Some(path) = &args.config {
        for (key, value) in parse_config_file(path)? {
            match key.as_str() {
                "sf" => r.sf = value.parse().map_err(|e| anyhow!("config key sf: {e}"))?,
                "cr" => r.cr = parse_list(&value, "cr")?,
                "ns" => r.ns = parse_list(&value, "ns")?,
                "va_db" => r.va_db = parse_list(&value, "va_db")?,
                "va_convention" => {
                    r.va_convention = match value.as_str() {
                        "amp20" => VaConvention::Amp20,
                        "pow10" => VaConvention::Pow10,
                        other => bail!("config key va_convention: unknown value {other:?}"),
                    }
                }
                "modes" => r.modes = parse_modes(&parse_list::<String>(&value, "modes")?)?,
                "trials" => {
                    r.trials = value.parse().map_err(|e| anyhow!("config key trials: {e}"))?
                }
                "tau_trials" => {
                    r.tau_trials = value
                        .parse()
                        .map_err(|e| anyhow!("config key tau_trials: {e}"))?
                }
                "seed" => r.seed = value.parse().map_err(|e| anyhow!("config key seed: {e}"))?,
                "workers" => {
                    r.workers = value
                        .parse()
                        .map_err(|e| anyhow!("config key workers: {e}"))?
                }
                "payload_bytes" => {
                    r.payload_bytes = Some(
                        value
                            .parse()
                            .map_err(|e| anyhow!("config key payload_bytes: {e}"))?,
                    )
                }
                "format" => match value.as_str() {
                    "csv" | "json" => r.format = value,
                    other => bail!("config key format: unknown value {other:?}"),
                },
                other => bail!("unknown config key {other:?}"),
            }
        }
    }

    if let Some(sf) = args.sf {
        r.sf = sf;
    }
    if let Some(cr) = &args.cr {
        r.cr = cr.clone();
    }
    if let Some(ns) = &args.ns {
        r.ns = ns.clone();
    }
    if let Some(va) = &args.va_db {
        r.va_db = va.clone();
    }
    if let Some(conv) = args.va_convention {
        r.va_convention = conv.into();
    }
    if let Some(modes) = &args.modes {
        r.modes = parse_modes(modes)?;
    }
    if let Some(trials) = args.trials {
        r.trials = trials;
    }
    if let Some(tau) = args.tau_trials {
        r.tau_trials = tau;
    }
    if let Some(seed) = args.seed {
        r.seed = seed;
    }
    if let Some(workers) = args.workers {
        r.workers = workers;
    }
    if let Some(bytes) = args.payload_bytes {
        r.payload_bytes = Some(bytes);
    }
    if let Some(fmt) = args.format {
        r.format = match fmt {
            FormatArg::Csv => "csv".into(),
            FormatArg::Json => "json".into(),
        };
    }

    // Validate eagerly so bad settings surface before any work is done.
    for &cr in &r.cr {
        PhyParams::new(r.sf, cr).map_err(|e| anyhow!(e))?;
    }
    if r.trials == 0 || r.tau_trials == 0 {
        bail!("trials and tau-trials must be >= 1");
    }
    if r.modes.is_empty() || r.cr.is_empty() || r.ns.is_empty() || r.va_db.is_empty() {
        bail!("cr, ns, va-db, and modes must be non-empty");
    }
    Ok(r)
}

/// Provenance record written next to every file output.
#[derive(Debug, Serialize)]
struct RunManifest<'a> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'a str,
    settings: &'a ResolvedSweep,
    output: String,
    rows: usize,
    duration_ms: u128,
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            std::io::stdout().write_all(body.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_manifest(
    out: &Option<PathBuf>,
    subcommand: &str,
    settings: &ResolvedSweep,
    rows: usize,
    started: Instant,
) -> Result<()> {
    let Some(path) = out else { return Ok(()) };
    let manifest = RunManifest {
        tool: "lorajam",
        version: env!("CARGO_PKG_VERSION"),
        subcommand,
        settings,
        output: path.display().to_string(),
        rows,
        duration_ms: started.elapsed().as_millis(),
    };
    let mut manifest_path = path.as_os_str().to_owned();
    manifest_path.push(".manifest.json");
    let body = serde_json::to_string_pretty(&manifest)?;
    fs::write(&manifest_path, body)
        .with_context(|| format!("writing {}", PathBuf::from(&manifest_path).display()))?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct TheoryRow {
    sf: u8,
    cr: u8,
    mode: &'static str,
    n_s: usize,
    v_a_db: f64,
    estimate: f64,
    std_err: f64,
    tau_samples: usize,
}

fn run_theory(args: &SweepArgs) -> Result<()> {
    let started = Instant::now();
    let r = resolve(args)?;
    let mut rows = Vec::new();
    let mut cell = 0u64;
    for &cr in &r.cr {
        let params = PhyParams::new(r.sf, cr).map_err(|e| anyhow!(e))?;
        for &mode in &r.modes {
            for &va_db in &r.va_db {
                let v_a = r.va_convention.amplitude_from_db(va_db);
                for &n_s in &r.ns {
                    cell += 1;
                    if n_s > params.l() {
                        continue;
                    }
                    let mut rng = trial_rng(r.seed ^ 0xA11A, cell);
                    let est = analytic_estimate(params, mode, n_s, v_a, r.tau_trials, &mut rng)?;
                    rows.push(TheoryRow {
                        sf: r.sf,
                        cr,
                        mode: mode.tag(),
                        n_s,
                        v_a_db: va_db,
                        estimate: est.value,
                        std_err: est.std_err,
                        tau_samples: est.n_tau_samples,
                    });
                }
            }
        }
    }

    let body = if r.format == "json" {
        let mut s = serde_json::to_string_pretty(&rows)?;
        s.push('\n');
        s
    } else {
        let mut s = String::from("sf,cr,mode,n_s,v_a_db,estimate,std_err,tau_samples\n");
        for row in &rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                row.sf,
                row.cr,
                row.mode,
                row.n_s,
                row.v_a_db,
                row.estimate,
                row.std_err,
                row.tau_samples
            ));
        }
        s
    };
    emit(&args.out, &body)?;
    emit_manifest(&args.out, "theory", &r, rows.len(), started)
}

fn run_simulate(args: &SweepArgs) -> Result<()> {
    let started = Instant::now();
    let r = resolve(args)?;
    let cfg = SweepConfig {
        sf: r.sf,
        cr_list: r.cr.clone(),
        modes: r.modes.clone(),
        va_db_list: r.va_db.clone(),
        va_convention: r.va_convention,
        ns_range: r.ns.clone(),
        trials: r.trials,
        tau_trials: r.tau_trials,
        payload_policy: match r.payload_bytes {
            Some(bytes) => PayloadPolicy::PayloadBytes(bytes),
            None => PayloadPolicy::SingleBlock,
        },
        channel: Default::default(),
        seed: r.seed,
        workers: r.workers,
    };
    let rows = sweep(&cfg)?;
    let body = if r.format == "json" {
        let mut s = serde_json::to_string_pretty(&rows)?;
        s.push('\n');
        s
    } else {
        rows_to_csv(&rows)
    };
    emit(&args.out, &body)?;
    emit_manifest(&args.out, "simulate", &r, rows.len(), started)
}

fn run_tables(args: &TablesArgs) -> Result<()> {
    let sjr = tables::sjr_table()?;
    let gain = tables::gain_table()?;
    let json = matches!(args.format, Some(FormatArg::Json));
    let body = if json {
        let mut s = serde_json::to_string_pretty(&serde_json::json!({
            "sjr": sjr,
            "symbol_gain": gain,
        }))?;
        s.push('\n');
        s
    } else {
        let mut s = String::from("table,sf,cr,n_s,reference_db,computed_db,delta_db\n");
        for (name, rows) in [("sjr", &sjr), ("symbol_gain", &gain)] {
            for row in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{:.3},{:+.3}\n",
                    name, row.sf, row.cr, row.n_s, row.reference_db, row.computed_db, row.delta_db
                ));
            }
        }
        s
    };
    emit(&args.out, &body)?;
    Ok(())
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<CoreError>() {
        Some(CoreError::ConsistencyCheck(_)) => EXIT_CONSISTENCY,
        _ => EXIT_RUNTIME,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Theory(args) => run_theory(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Tables(args) => run_tables(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lorajam: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
