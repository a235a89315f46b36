//! `sgk` — exact verification driver for the minimal Schubert datum: dump
//! chart data, decide semistability of points, run the identity suites, and
//! print the tower dimension table.
//!
//! Exit codes: 0 all checks pass, 1 some check fails (or the point is not
//! semistable), 2 usage, configuration or input-format error.

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::json;
use sgk_core::jsonio::{datum_dump_json, point_from_str, semistability_report_to_json};
use sgk_core::{
    is_semistable, run_suite, tower_dimensions, FieldSpec, MinimalSchubertDatum, Suite, SuiteConfig,
};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(
    name = "sgk",
    version,
    about = "Exact verification toolkit for torus quotients of minimal Schubert varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the (r, q) datum as JSON: word, one-line data, column sets,
    /// interval roots and the peak pairing table
    Gen {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide semistability of a point file (entry list or matrix form)
    Semistable {
        #[arg(long)]
        point: PathBuf,
    },
    /// Run a verification suite, one JSON record per check plus a summary
    Verify {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: usize,
        /// lemmas | orbits | sections | charts | tower | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        /// Base seed; the SGK_SEED environment variable overrides this
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// rational | fp:P with P prime and larger than 2^30
        #[arg(long, default_value = "rational")]
        field: String,
    },
    /// Print the dimension table of the tower stages
    Tower {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}

fn effective_seed(flag: u64) -> anyhow::Result<u64> {
    match std::env::var("SGK_SEED") {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse()
            .context("SGK_SEED must be a 64-bit unsigned integer"),
        _ => Ok(flag),
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Gen { r, q, out } => {
            let datum = MinimalSchubertDatum::shared(r, q)?;
            let dump = datum_dump_json(&datum);
            let text = serde_json::to_string_pretty(&dump)?;
            std::fs::write(&out, text + "\n")
                .with_context(|| format!("writing {}", out.display()))?;
            Ok(0)
        }
        Command::Semistable { point } => {
            let text = std::fs::read_to_string(&point)
                .with_context(|| format!("reading {}", point.display()))?;
            let p = point_from_str(&text)?;
            let report = is_semistable(&p);
            println!("{}", semistability_report_to_json(&report));
            Ok(if report.semistable { 0 } else { 1 })
        }
        Command::Verify {
            r,
            q,
            suite,
            samples,
            seed,
            field,
        } => {
            let suite: Suite = suite.parse()?;
            let field = FieldSpec::parse(&field)?;
            let seed = effective_seed(seed)?;
            let cfg = SuiteConfig {
                r,
                q,
                suite,
                samples,
                seed,
                field,
            };
            let records = run_suite(&cfg)?;
            let failed = records.iter().filter(|rec| !rec.passed()).count();
            for record in &records {
                println!("{}", serde_json::to_string(record)?);
            }
            let timestamp = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs().to_string())
                .unwrap_or_default();
            let summary = json!({
                "check": "summary",
                "params": {
                    "r": r,
                    "q": q,
                    "suite": suite.name(),
                    "samples": samples,
                    "seed": seed,
                    "field": field.to_string(),
                },
                "total": records.len(),
                "passed": records.len() - failed,
                "failed": failed,
                "status": if failed == 0 { "pass" } else { "fail" },
                "timestamp": timestamp,
            });
            println!("{summary}");
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Tower { r, q } => {
            if r < 1 {
                anyhow::bail!("r must be at least 1 (got {r})");
            }
            let dims = tower_dimensions(r, q)?;
            let fiber_dims: Vec<usize> = (1..=r).map(|k| k * (q - 1)).collect();
            println!(
                "{}",
                json!({"r": r, "q": q, "dims": dims, "fiber_projective_dims": fiber_dims})
            );
            Ok(0)
        }
    }
}
