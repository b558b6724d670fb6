//! Command-line front end.
//!
//! Exit status: 0 success, 1 a verification check failed, 2 bad usage or
//! input, 3 a size cap was exceeded.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{
    borel_tanner_pmf, borel_tanner_residual, fit_squared_peaks, forest_peak_index, format_srec_report,
    srec_polynomial, srec_second_column_check, tree_peak_index,
};
use crate::counting::{
    forest_record_table_recurrence, record_table, Method, RecordKind, BRUTE_FORCE_CAP, TABLE_CAP,
};
use crate::decomposition::{decompose, reconstruct, RecordDecomposition};
use crate::series::{cayley_tree, forest_record_series, tree_record_series, SERIES_CAP};
use crate::tree::RootedTree;
use crate::verify::{run_suite, Suite};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Largest truncation accepted by `pmf`.
pub const PMF_CAP: usize = 100_000;
/// Largest `n` accepted by `peaks --kind tree`.
pub const TREE_PEAK_CAP: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "tree-records", version, about = "Records in rooted labelled trees and forests")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of record numbers R•(n,k) or R(n,k).
    Table {
        #[arg(long, value_enum)]
        kind: RecordKind,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "formula")]
        method: Method,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Record decomposition of a tree given as JSON (`-` reads stdin).
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Rebuilds the tree from a decomposition given as JSON (`-` reads stdin).
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Coefficients n! [z^n t^k] of a generating function.
    Series {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Cross-validation suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Greatest index maximizing each row.
    Peaks {
        #[arg(long, value_enum, default_value = "forest")]
        kind: RecordKind,
        #[arg(long)]
        n_max: usize,
        /// Also print a least-squares fit of k*(n)^2 against n.
        #[arg(long)]
        fit: bool,
        /// Smallest n included in the fit.
        #[arg(long, default_value_t = 1)]
        fit_from: usize,
    },
    /// Sum-of-record-depths polynomials over rooted trees.
    Srec {
        #[arg(long)]
        n_max: usize,
        /// Compare low columns with two-component unrooted forests instead.
        #[arg(long)]
        report: bool,
    },
    /// Borel–Tanner probabilities and the truncation residual.
    Pmf {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Bfile,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// The Cayley tree function.
    #[value(name = "T")]
    Cayley,
    Tree,
    Forest,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        return Err(Error::CapExceeded { what, value, cap });
    }
    Ok(())
}

fn at_least_one(what: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidArgument(format!("{what} must be at least 1")));
    }
    Ok(())
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn print_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Table {
            kind,
            n_max,
            method,
            format,
        } => {
            at_least_one("--n-max", n_max)?;
            cap("table n_max", n_max, TABLE_CAP)?;
            match method {
                Method::Brute => cap("brute force n_max", n_max, BRUTE_FORCE_CAP)?,
                Method::Series => cap("series order", n_max, SERIES_CAP)?,
                Method::Formula | Method::Recurrence => {}
            }
            let table = record_table(kind, n_max, method)?;
            match format {
                TableFormat::Csv => write!(out, "{}", table.to_csv())?,
                TableFormat::Bfile => write!(out, "{}", table.to_bfile())?,
                TableFormat::Json => print_json(out, &table.to_json())?,
            }
        }
        Command::Decompose { input } => {
            let tree: RootedTree = serde_json::from_str(&read_input(&input)?)?;
            let d = decompose(&tree.plant())?;
            let mut value = serde_json::to_value(&d)?;
            let object = value.as_object_mut().expect("decompositions serialize as objects");
            object.insert("type".into(), serde_json::to_value(d.bonsai_type())?);
            object.insert("records".into(), serde_json::to_value(tree.records())?);
            print_json(out, &value)?;
        }
        Command::Reconstruct { input } => {
            let d: RecordDecomposition = serde_json::from_str(&read_input(&input)?)?;
            print_json(out, &serde_json::to_value(reconstruct(&d))?)?;
        }
        Command::Series { order, which } => {
            cap("series order", order, SERIES_CAP)?;
            let series = match which {
                Which::Cayley => cayley_tree(order),
                Which::Tree => tree_record_series(order),
                Which::Forest => forest_record_series(order)?,
            };
            print_json(out, &series.to_json())?;
        }
        Command::Verify { suite, n_max } => {
            at_least_one("--n-max", n_max)?;
            let report = run_suite(suite, n_max)?;
            write!(out, "{}", report.render())?;
            if !report.passed() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Peaks {
            kind,
            n_max,
            fit,
            fit_from,
        } => {
            at_least_one("--n-max", n_max)?;
            at_least_one("--fit-from", fit_from)?;
            if fit && fit_from >= n_max {
                return Err(Error::InvalidArgument("--fit-from must be below --n-max".into()));
            }
            let peaks: Vec<(usize, usize)> = match kind {
                RecordKind::Tree => {
                    cap("tree peaks n_max", n_max, TREE_PEAK_CAP)?;
                    (1..=n_max).map(|n| tree_peak_index(n).map(|k| (n, k))).collect::<Result<_>>()?
                }
                RecordKind::Forest => {
                    cap("forest peaks n_max", n_max, TABLE_CAP)?;
                    let table = forest_record_table_recurrence(n_max);
                    (1..=n_max)
                        .map(|n| forest_peak_index(&table, n).map(|k| (n, k)))
                        .collect::<Result<_>>()?
                }
            };
            writeln!(out, "n,k_star,k_star_squared")?;
            for &(n, k) in &peaks {
                writeln!(out, "{n},{k},{}", k * k)?;
            }
            if fit {
                let result = fit_squared_peaks(peaks[fit_from - 1..].to_vec())?;
                let summary = json!({
                    "slope": result.slope,
                    "intercept": result.intercept,
                    "n_min": fit_from,
                    "n_max": n_max,
                });
                writeln!(out, "{}", serde_json::to_string(&summary)?)?;
            }
        }
        Command::Srec { n_max, report } => {
            at_least_one("--n-max", n_max)?;
            cap("srec n_max", n_max, BRUTE_FORCE_CAP)?;
            if report {
                write!(out, "{}", format_srec_report(&srec_second_column_check(n_max)?))?;
            } else {
                writeln!(out, "n,coefficients")?;
                for n in 1..=n_max {
                    let coeffs: Vec<String> = srec_polynomial(n)?.dense().iter().map(u64::to_string).collect();
                    writeln!(out, "{n},{}", coeffs.join(","))?;
                }
            }
        }
        Command::Pmf { k, rho, n_max } => {
            at_least_one("--k", k)?;
            cap("pmf n_max", n_max, PMF_CAP)?;
            if n_max < k {
                return Err(Error::InvalidArgument("--n-max must be at least --k".into()));
            }
            let values = (k..=n_max)
                .map(|n| borel_tanner_pmf(k, rho, n).map(|p| json!({ "n": n, "p": p })))
                .collect::<Result<Vec<_>>>()?;
            let residual = borel_tanner_residual(k, rho, n_max)?;
            print_json(
                out,
                &json!({ "k": k, "rho": rho, "n_max": n_max, "values": values, "residual": residual }),
            )?;
        }
    }
    Ok(EXIT_OK)
}
