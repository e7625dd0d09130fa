use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use discroot::curve::CurveSpec;
use discroot::harness::{run_suite, Suite, SuiteConfig, VerificationReport};

/// Verify the constructions of n-th roots of elliptic-curve discriminants.
#[derive(Parser)]
#[command(name = "discroot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON-lines report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record per-curve wall time in milliseconds.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite over enumerated, sampled or listed curves.
    Verify {
        /// torsor-selftest, cube-roots, fourth-roots, pairing, tate, coates, transform or galois.
        #[arg(long)]
        suite: String,
        /// Primes to enumerate curves over (repeatable).
        #[arg(long = "p", default_values_t = [13u64])]
        primes: Vec<u64>,
        /// Use every curve over each prime (the default).
        #[arg(long, conflicts_with = "sample")]
        all_curves: bool,
        /// Use a seeded sample of this many curves per prime.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Torsion levels (repeatable; default both 3 and 4).
        #[arg(long = "n", value_parser = clap::value_parser!(u32).range(3..=4))]
        levels: Vec<u32>,
        /// JSON array of curve specs, e.g. [{"p":13,"a":[0,0,0,1,2]}].
        #[arg(long)]
        curves: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        precision: i64,
        /// Isogeny degrees for the coates suite (repeatable).
        #[arg(long = "degree")]
        degrees: Vec<u32>,
        #[arg(long)]
        budget: Option<usize>,
        /// Random samples (torsor-selftest) or random changes (transform).
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Tate curve series checks.
    Tate {
        #[arg(long = "n", value_parser = clap::value_parser!(u32).range(3..=4))]
        n: u32,
        #[arg(long, default_value_t = 8)]
        precision: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Discriminant classes along isogenies of degree prime to 12.
    Coates {
        #[arg(long = "p")]
        p: u64,
        #[arg(long)]
        degree: u32,
        /// Examine at most this many curves.
        #[arg(long)]
        budget: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustive torsor combinatorics on (Z/n)^2.
    TorsorSelftest {
        #[arg(long = "n", value_parser = clap::value_parser!(u32).range(3..=4))]
        n: u32,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(report: &VerificationReport, out: &Option<PathBuf>) -> ExitCode {
    let text = report.to_jsonl();
    let written = match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return usage(e);
    }
    let failures = report.failures().len();
    eprintln!("{}: {} properties, {} failed", report.suite, report.lines.len(), failures);
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (suite, cfg, out) = match cli.command {
        Command::Verify {
            suite,
            primes,
            all_curves: _,
            sample,
            seed,
            levels,
            curves,
            precision,
            degrees,
            budget,
            samples,
            output,
        } => {
            let suite: Suite = match suite.parse() {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let curves = match curves.map(|path| -> Result<Vec<CurveSpec>, String> {
                let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                let list: Vec<CurveSpec> = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                Ok(list.into_iter().map(|c| CurveSpec::new(c.p, c.ext_degree, c.a)).collect())
            }) {
                Some(Err(e)) => return usage(e),
                Some(Ok(c)) => Some(c),
                None => None,
            };
            let d = SuiteConfig::default();
            let default_samples = if suite == Suite::Transform { 100 } else { d.samples };
            let cfg = SuiteConfig {
                primes,
                curves,
                sample,
                seed,
                levels: if levels.is_empty() { d.levels } else { levels },
                precision,
                degrees: if degrees.is_empty() { d.degrees } else { degrees },
                budget,
                samples: samples.unwrap_or(default_samples),
                timings: output.timings,
            };
            (suite, cfg, output.out)
        }
        Command::Tate { n, precision, output } => {
            let cfg = SuiteConfig { levels: vec![n], precision, timings: output.timings, ..Default::default() };
            (Suite::Tate, cfg, output.out)
        }
        Command::Coates { p, degree, budget, output } => {
            let cfg = SuiteConfig { primes: vec![p], degrees: vec![degree], budget, timings: output.timings, ..Default::default() };
            (Suite::Coates, cfg, output.out)
        }
        Command::TorsorSelftest { n, samples, seed, output } => {
            let cfg = SuiteConfig { levels: vec![n], samples, seed, timings: output.timings, ..Default::default() };
            (Suite::TorsorSelftest, cfg, output.out)
        }
    };
    match run_suite(suite, &cfg) {
        Ok(report) => emit(&report, &out),
        Err(e) => usage(e),
    }
}
