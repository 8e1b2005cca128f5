use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use liar_core::trace::{gnuplot_script, time_grid, write_csv, DEFAULT_SIGNIFICANT_DIGITS};
use liar_core::verify::{all_passed, run_suite, Faults, MAX_VERIFY_M};
use liar_core::{
    build_initial_state, count_paradoxical, enumerate_paradoxical, probability_trace, reasoning_cycle,
    verify_minimality, CollapseMode, Configuration, Hypothesis, TraceSpec,
};
use serde::Serialize;

const PRECISION_ENV: &str = "LIAR_PRECISION";

/// Simulator for the m-sentence Liar Paradox.
#[derive(Debug, Parser)]
#[command(name = "liar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of paradoxical configurations with m sentences.
    Count {
        #[arg(long)]
        m: usize,
    },
    /// List every paradoxical configuration with m sentences, one JSON object per line.
    Enumerate {
        #[arg(long)]
        m: usize,
    },
    /// Print the reasoning cycle of a configuration.
    Cycle {
        #[command(flatten)]
        config: ConfigArg,
        /// Starting hypothesis, e.g. `1:T`.
        #[arg(long, default_value = "1:T")]
        start: Hypothesis,
        #[arg(long)]
        json: bool,
    },
    /// Write the equiponderate initial state as JSON.
    State {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write truth/falsehood probabilities over time as CSV.
    Trace(TraceArgs),
    /// Audit that each sentence needs exactly 2m dimensions.
    CheckDim {
        #[arg(long)]
        m: usize,
    },
    /// Run the invariant suite and print a PASS/FAIL table.
    Verify {
        #[arg(long, default_value_t = MAX_VERIFY_M)]
        m_max: usize,
        #[arg(long, hide = true)]
        inject_branch_flip: bool,
        #[arg(long, hide = true, default_value_t = 0)]
        inject_kappa_offset: u64,
    },
}

#[derive(Debug, clap::Args)]
struct ConfigArg {
    /// Inline JSON, a preset (`liar1`, `liar8`) or a path to a JSON file.
    #[arg(long)]
    config: String,
}

#[derive(Debug, clap::Args)]
struct TraceArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Initial measurement, e.g. `1:T`.
    #[arg(long, default_value = "1:T")]
    start: Hypothesis,
    /// Sentences to report (comma separated); all by default.
    #[arg(long, value_delimiter = ',')]
    sentences: Vec<usize>,
    /// Last sample time in reasoning steps; one full cycle (2m) by default.
    #[arg(long)]
    t_max: Option<f64>,
    /// Sample spacing in reasoning steps.
    #[arg(long, default_value_t = 0.05)]
    dt: f64,
    /// Output time units per step: a number, `pi`, `pi/2`, `3*pi/4`, ...
    #[arg(long, default_value = "1")]
    time_scale: String,
    /// Keep the unnormalized post-measurement state.
    #[arg(long)]
    raw_collapse: bool,
    /// Emit a JSON array instead of CSV.
    #[arg(long)]
    json: bool,
    /// Also write a gnuplot script for the CSV (requires --out).
    #[arg(long)]
    gnuplot: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Everything that determines a run's output.
#[derive(Debug, Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sentences: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    collapse: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    precision: Option<usize>,
}

impl<'a> RunManifest<'a> {
    fn new(command: &'a str) -> Self {
        RunManifest {
            command,
            config: None,
            out: None,
            start: None,
            sentences: None,
            t_max: None,
            dt: None,
            time_scale: None,
            collapse: None,
            precision: None,
        }
    }

    fn line(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }
}

/// A run that completed but whose checks did not all pass.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<VerificationFailed>() => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Count { m } => {
            if m == 0 {
                bail!("m must be at least 1");
            }
            println!("{}", count_paradoxical(m));
        }
        Command::Enumerate { m } => {
            let mut out = BufWriter::new(io::stdout().lock());
            for c in enumerate_paradoxical(m)? {
                writeln!(out, "{}", serde_json::to_string(&c)?)?;
            }
            out.flush()?;
        }
        Command::Cycle { config, start, json } => {
            let c = load_config(&config.config)?;
            let cycle = reasoning_cycle(&c, start)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&cycle)?);
            } else {
                println!("{cycle}");
            }
        }
        Command::State { config, out } => {
            let c = load_config(&config.config)?;
            let psi = build_initial_state(&c)?;
            let manifest = RunManifest {
                config: Some(&config.config),
                out: out.as_deref().map(display_path),
                ..RunManifest::new("state")
            };
            eprintln!("# {}", manifest.line());
            let mut text = serde_json::to_string_pretty(&psi)?;
            text.push('\n');
            emit(out.as_deref(), text.as_bytes())?;
        }
        Command::Trace(args) => trace(args)?,
        Command::CheckDim { m } => {
            let report = verify_minimality(m)?;
            print!("{}", report.transcript());
            let summary = serde_json::json!({
                "m": m,
                "n_sufficient": 2 * m,
                "n_insufficient": 2 * m - 1,
                "sufficient": report.sufficient,
                "necessary": report.necessary,
                "result": if report.passed { "PASS" } else { "FAIL" },
            });
            println!("{summary}");
            if !report.passed {
                return Err(VerificationFailed.into());
            }
        }
        Command::Verify { m_max, inject_branch_flip, inject_kappa_offset } => {
            if m_max == 0 || m_max > MAX_VERIFY_M {
                bail!("--m-max must be in 1..={MAX_VERIFY_M}, got {m_max}");
            }
            let faults = Faults { flip_pi_branch: inject_branch_flip, kappa_offset: inject_kappa_offset };
            let results = run_suite(m_max, faults)?;
            for r in &results {
                println!("{r}");
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if all_passed(&results) {
                println!("all {} checks passed (m <= {m_max})", results.len());
            } else {
                println!("{failed} of {} checks failed (m <= {m_max})", results.len());
                return Err(VerificationFailed.into());
            }
        }
    }
    Ok(())
}

fn trace(args: TraceArgs) -> Result<()> {
    let config = load_config(&args.config.config)?;
    let precision = precision()?;
    let time_scale = parse_time_scale(&args.time_scale)?;
    let t_max = args.t_max.unwrap_or(2.0 * config.m() as f64);
    if args.gnuplot.is_some() && (args.out.is_none() || args.json) {
        bail!("--gnuplot needs a CSV written with --out");
    }
    let mode = if args.raw_collapse { CollapseMode::Raw } else { CollapseMode::Renormalize };
    let spec = TraceSpec {
        sentences: args.sentences.clone(),
        times: time_grid(t_max, args.dt, time_scale)?,
        time_scale,
        mode,
        ..TraceSpec::default()
    };
    let rows = probability_trace(&config, args.start, &spec)?;

    let manifest = RunManifest {
        config: Some(&args.config.config),
        out: args.out.as_deref().map(display_path),
        start: Some(format!("{}:{}", args.start.sentence, args.start.value.as_char())),
        sentences: Some(&args.sentences),
        t_max: Some(t_max),
        dt: Some(args.dt),
        time_scale: Some(time_scale),
        collapse: Some(if args.raw_collapse { "raw" } else { "renormalize" }),
        precision: Some(precision),
        ..RunManifest::new("trace")
    };
    let mut buf = Vec::new();
    if args.json {
        eprintln!("# {}", manifest.line());
        serde_json::to_writer_pretty(&mut buf, &rows)?;
        buf.push(b'\n');
    } else {
        writeln!(buf, "# {}", manifest.line())?;
        write_csv(&rows, precision, &mut buf)?;
    }
    emit(args.out.as_deref(), &buf)?;

    if let (Some(script), Some(data)) = (&args.gnuplot, &args.out) {
        let sentences: Vec<usize> =
            if args.sentences.is_empty() { (1..=config.m()).collect() } else { args.sentences.clone() };
        fs::write(script, gnuplot_script(&display_path(data), &sentences))
            .with_context(|| format!("writing {}", script.display()))?;
    }
    Ok(())
}

fn display_path(p: &Path) -> String {
    p.display().to_string()
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn load_config(arg: &str) -> Result<Configuration> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).context("parsing inline configuration");
    }
    match trimmed {
        "liar1" => return Ok(Configuration::single_liar()),
        "liar8" => return Ok(Configuration::eight_liar()),
        _ => {}
    }
    let text = fs::read_to_string(trimmed).with_context(|| format!("reading configuration {trimmed}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing configuration {trimmed}"))
}

fn precision() -> Result<usize> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_SIGNIFICANT_DIGITS),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(d) if (1..=17).contains(&d) => Ok(d),
            _ => bail!("{PRECISION_ENV} must be an integer in 1..=17, got {v:?}"),
        },
    }
}

/// Parses `1.5`, `pi`, `pi/2`, `3*pi/4`, `2pi`.
fn parse_time_scale(s: &str) -> Result<f64> {
    let s = s.trim().to_ascii_lowercase().replace(' ', "");
    let value = if let Some(pos) = s.find("pi") {
        let (before, after) = (&s[..pos], &s[pos + 2..]);
        let factor = match before.trim_end_matches('*') {
            "" => 1.0,
            f => f.parse::<f64>().with_context(|| format!("bad time scale {s:?}"))?,
        };
        let divisor = match after {
            "" => 1.0,
            d => d
                .strip_prefix('/')
                .and_then(|d| d.parse::<f64>().ok())
                .with_context(|| format!("bad time scale {s:?}"))?,
        };
        factor * std::f64::consts::PI / divisor
    } else {
        s.parse::<f64>().with_context(|| format!("bad time scale {s:?}"))?
    };
    if !(value > 0.0 && value.is_finite()) {
        bail!("time scale must be positive and finite, got {s:?}");
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use liar_core::Truth;
    use std::f64::consts::PI;

    #[test]
    fn time_scales() {
        assert_eq!(parse_time_scale("1").unwrap(), 1.0);
        assert_eq!(parse_time_scale("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_time_scale("PI").unwrap(), PI);
        assert_eq!(parse_time_scale("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_time_scale("2pi").unwrap(), 2.0 * PI);
        assert!(parse_time_scale("0").is_err());
        assert!(parse_time_scale("pi/").is_err());
        assert!(parse_time_scale("tau").is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(load_config("liar8").unwrap(), Configuration::eight_liar());
        let inline = r#"{"m": 1, "referent": [1], "negating": [true]}"#;
        assert_eq!(load_config(inline).unwrap(), Configuration::single_liar());
        assert!(load_config(r#"{"m": 2, "referent": [1, 2], "negating": [true, false]}"#).is_err());
    }

    #[test]
    fn truth_flag_round_trip() {
        let h: Hypothesis = "3:F".parse().unwrap();
        assert_eq!(h, Hypothesis::new(3, Truth::False));
    }
}
