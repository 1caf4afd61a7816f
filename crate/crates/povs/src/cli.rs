//! Command-line front end.
//!
//! Three subcommands: `test` runs the six statistics on a CSV sample,
//! `simulate` executes a campaign from a JSON configuration, and `report`
//! aggregates one or two results files into robustness or power tables.
//! Exit codes: 0 success, 2 input/config error, 3 degenerate statistic.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::report::{
    aggregate_power, read_results_csv, result_rows, robustness_summary, write_power_csv,
    write_power_text, write_results_csv, write_robustness_csv, write_robustness_text,
};
use crate::sample::ingest_csv;
use crate::sim::{run_campaign, CampaignConfig, RobustnessBand};
use crate::ttest::{run_tests, Method, TestResult};

#[derive(Debug, Parser)]
#[command(
    name = "povs",
    about = "Tests and simulations for partially overlapping samples",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run test statistics on a CSV sample (header `group1,group2`;
    /// an empty field marks a value missing from that group).
    Test {
        /// Input CSV file.
        #[arg(long)]
        input: PathBuf,
        /// Method to run: new1|new2|rnk1|rnk2|int1|int2, a comma-separated
        /// list, or `all`.
        #[arg(long, default_value = "all")]
        method: String,
        /// Two-sided significance level.
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = TestFormat::Text)]
        format: TestFormat,
    },
    /// Run a simulation campaign described by a JSON configuration.
    Simulate {
        /// Campaign configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output directory for `results.csv` and `report.json`.
        #[arg(long)]
        out: PathBuf,
        /// Worker thread bound (does not affect results).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Aggregate simulation results into tables.
    Report {
        /// Results CSV from a null-hypothesis campaign.
        #[arg(long)]
        h0: PathBuf,
        /// Results CSV from a matched alternative-hypothesis campaign
        /// (required for the power style).
        #[arg(long)]
        h1: Option<PathBuf>,
        #[arg(long, value_enum)]
        style: ReportStyle,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportStyle {
    Robustness,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
}

/// Dispatches a parsed invocation, writing to `out` (normally stdout).
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<()> {
    match cli.command {
        Command::Test {
            input,
            method,
            alpha,
            format,
        } => cmd_test(&input, &method, alpha, format, out),
        Command::Simulate {
            config,
            out: out_dir,
            threads,
        } => cmd_simulate(&config, &out_dir, threads, out),
        Command::Report {
            h0,
            h1,
            style,
            format,
        } => cmd_report(&h0, h1.as_deref(), style, format, out),
    }
}

/// The process exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_degenerate() {
        3
    } else {
        2
    }
}

fn parse_methods(selector: &str) -> Result<Vec<Method>> {
    if selector.eq_ignore_ascii_case("all") {
        return Ok(Method::ALL.to_vec());
    }
    selector.split(',').map(|tok| tok.trim().parse()).collect()
}

fn cmd_test<W: Write>(
    input: &Path,
    method_selector: &str,
    alpha: f64,
    format: TestFormat,
    out: &mut W,
) -> Result<()> {
    let methods = parse_methods(method_selector)?;
    let file = File::open(input)?;
    let sample = ingest_csv(file)?;
    let outcomes = run_tests(&sample, &methods, alpha);
    let mut results = Vec::with_capacity(outcomes.len());
    let mut first_err = None;
    for outcome in outcomes {
        match outcome {
            Ok(res) => results.push(res),
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    match format {
        TestFormat::Text => {
            for res in &results {
                writeln!(
                    out,
                    "{}: t = {:.6}, df = {:.6}, p = {:.6} -> {} (alpha = {})",
                    res.method,
                    res.statistic,
                    res.df,
                    res.p_value,
                    if res.reject {
                        "reject H0"
                    } else {
                        "do not reject H0"
                    },
                    res.alpha,
                )?;
                for warning in &res.warnings {
                    writeln!(out, "  warning: {warning}")?;
                }
            }
        }
        TestFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&results)?)?;
        }
        TestFormat::Csv => {
            write_test_csv(out, &results)?;
        }
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Machine-readable test output; the header and column order are stable.
pub fn write_test_csv<W: Write>(mut w: W, results: &[TestResult]) -> Result<()> {
    writeln!(w, "method,statistic,df,p_value,reject,alpha,warnings")?;
    for res in results {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            res.method,
            res.statistic,
            res.df,
            res.p_value,
            res.reject,
            res.alpha,
            res.warnings.join("; "),
        )?;
    }
    Ok(())
}

fn cmd_simulate<W: Write>(
    config_path: &Path,
    out_dir: &Path,
    threads: Option<usize>,
    out: &mut W,
) -> Result<()> {
    let config_text = std::fs::read_to_string(config_path)?;
    let config: CampaignConfig = serde_json::from_str(&config_text)
        .map_err(|e| Error::Config(format!("{}: {e}", config_path.display())))?;
    config.validate()?;

    let started = Instant::now();
    let report = match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(|| run_campaign(&config))?
        }
        None => run_campaign(&config)?,
    };
    let elapsed = started.elapsed();

    std::fs::create_dir_all(out_dir)?;
    let results_path = out_dir.join("results.csv");
    let report_path = out_dir.join("report.json");
    let outcome = (|| -> Result<()> {
        let rows = result_rows(&report);
        let mut results_file = File::create(&results_path)?;
        write_results_csv(&mut results_file, &rows)?;
        let mut report_file = File::create(&report_path)?;
        writeln!(report_file, "{}", serde_json::to_string_pretty(&report)?)?;
        Ok(())
    })();
    if outcome.is_err() {
        // No partial outputs on failure.
        let _ = std::fs::remove_file(&results_path);
        let _ = std::fs::remove_file(&report_path);
        return outcome;
    }

    writeln!(
        out,
        "{} cells x {} methods, {} replicates each -> {} ({:.1}s)",
        report.cells.len(),
        config.methods.len(),
        config.replicates,
        out_dir.display(),
        elapsed.as_secs_f64(),
    )?;
    Ok(())
}

fn cmd_report<W: Write>(
    h0_path: &Path,
    h1_path: Option<&Path>,
    style: ReportStyle,
    format: ReportFormat,
    out: &mut W,
) -> Result<()> {
    let h0 = read_results_csv(File::open(h0_path)?)?;
    let band = RobustnessBand::default();
    match style {
        ReportStyle::Robustness => {
            let counts = robustness_summary(&h0, band);
            match format {
                ReportFormat::Csv => write_robustness_csv(out, &counts),
                ReportFormat::Text => write_robustness_text(out, &counts),
            }
        }
        ReportStyle::Power => {
            let h1_path = h1_path.ok_or_else(|| {
                Error::Config(
                    "the power style needs --h1 with the alternative-hypothesis results".into(),
                )
            })?;
            let h1 = read_results_csv(File::open(h1_path)?)?;
            let rows = aggregate_power(&h0, &h1, band)?;
            match format {
                ReportFormat::Csv => write_power_csv(out, &rows),
                ReportFormat::Text => write_power_text(out, &rows),
            }
        }
    }
}
