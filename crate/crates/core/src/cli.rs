//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{MtIndex, RootOfUnity};
use crate::decompose::{decompose, format_level2, format_level2_pretty, to_level2};
use crate::error::{Error, Result};
use crate::eval::{eval_decomposition, eval_mt_direct, EvalConfig, ValueWithError};
use crate::verify::{
    check_relation, cross_check_grid, parse_fixtures, parse_relations, render_table, summarize, verify_fixture_set,
    verify_r212, Report, DEFAULT_FIXTURES, DEFAULT_RELATIONS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "tornheim", version, about = "Colored Tornheim double series: decomposition, evaluation, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the double polylogarithm decomposition.
    Decompose {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, value_enum, default_value_t = Notation::Li)]
        notation: Notation,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate through the decomposition.
    Eval {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate by direct summation of the double series.
    Oracle {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 20000)]
        cutoff: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the fixture, grid and R(2,1,2) checks.
    Verify {
        /// Fixture file (defaults to the built-in set).
        #[arg(long)]
        fixtures: Option<String>,
        #[arg(long, default_value_t = 7)]
        grid_weight: u32,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        orders: Vec<u64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print every grid case, not only failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Check closed-form relations, one per line.
    Relation {
        /// Relation file (defaults to the built-in set).
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    r: u32,
    /// Root of unity `k/N`, `1` or `-1`.
    #[arg(long, default_value = "1/2")]
    alpha: RootOfUnity,
    #[arg(long, default_value = "0/1")]
    beta: RootOfUnity,
}

impl SeriesArgs {
    fn index(&self) -> Result<MtIndex> {
        MtIndex::new(self.p, self.q, self.r)
    }

    fn record(&self, idx: MtIndex, v: &ValueWithError) -> serde_json::Value {
        json!({
            "index": [idx.p(), idx.q(), idx.r()],
            "alpha": self.alpha.as_fraction(),
            "beta": self.beta.as_fraction(),
            "value": { "re": v.value.re, "im": v.value.im },
            "error_bound": v.error_bound,
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Notation {
    Li,
    Bar,
    Pretty,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io { path: "<stdout>".into(), msg: e.to_string() }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.into(), msg: e.to_string() })
}

fn config(tol: f64) -> Result<EvalConfig> {
    let cfg = EvalConfig::default().with_tolerance(tol);
    cfg.validate()?;
    Ok(cfg)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Decompose { series, notation, format } => {
            let d = decompose(series.index()?, series.alpha, series.beta);
            let text = match (format, notation) {
                (Format::Json, _) => d.to_json().to_string(),
                (Format::Text, Notation::Li) => d.to_string(),
                (Format::Text, Notation::Bar) => format_level2(&to_level2(&d)?),
                (Format::Text, Notation::Pretty) => format_level2_pretty(&to_level2(&d)?),
            };
            writeln!(out, "{text}").map_err(io)?;
        }
        Command::Eval { series, tol, format } => {
            let idx = series.index()?;
            let v = eval_decomposition(&decompose(idx, series.alpha, series.beta), &config(tol)?)?;
            print_value(out, format, &series, idx, &v)?;
        }
        Command::Oracle { series, cutoff, format } => {
            let idx = series.index()?;
            if cutoff < 2 {
                return Err(Error::InvalidConfig("cutoff >= 2 required".into()));
            }
            let cfg = EvalConfig::default().with_oracle_cutoff(cutoff);
            let v = eval_mt_direct(idx, series.alpha, series.beta, &cfg)?;
            print_value(out, format, &series, idx, &v)?;
        }
        Command::Verify { fixtures, grid_weight, orders, tol, format, verbose } => {
            let cfg = config(tol)?;
            let text = match &fixtures {
                Some(path) => read_file(path)?,
                None => DEFAULT_FIXTURES.to_string(),
            };
            let fixture_reports = verify_fixture_set(&parse_fixtures(&text)?);
            let grid = cross_check_grid(grid_weight, &orders, &cfg)?;
            let r212 = vec![verify_r212(&cfg)?];
            let sections = [("fixtures", fixture_reports), ("grid", grid), ("R(2,1,2)", r212)];
            let mut all_ok = true;
            for (name, reports) in &sections {
                all_ok &= reports.iter().all(Report::passed);
                match format {
                    Format::Json => print_json_lines(out, reports)?,
                    Format::Text => {
                        let shown: Vec<Report> = if *name == "grid" && !verbose {
                            reports.iter().filter(|r| !r.passed()).cloned().collect()
                        } else {
                            reports.clone()
                        };
                        print_section(out, name, reports, &shown)?;
                    }
                }
            }
            return Ok(if all_ok { EXIT_OK } else { EXIT_FAIL });
        }
        Command::Relation { file, tol, format } => {
            let cfg = config(tol)?;
            let text = match &file {
                Some(path) => read_file(path)?,
                None => DEFAULT_RELATIONS.to_string(),
            };
            let reports = parse_relations(&text)?
                .iter()
                .map(|spec| check_relation(spec, &cfg))
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Json => print_json_lines(out, &reports)?,
                Format::Text => print_section(out, "relations", &reports, &reports)?,
            }
            return Ok(if reports.iter().all(Report::passed) { EXIT_OK } else { EXIT_FAIL });
        }
    }
    Ok(EXIT_OK)
}

fn print_value(
    out: &mut dyn Write,
    format: Format,
    series: &SeriesArgs,
    idx: MtIndex,
    v: &ValueWithError,
) -> Result<()> {
    match format {
        Format::Text => writeln!(out, "{v}"),
        Format::Json => writeln!(out, "{}", series.record(idx, v)),
    }
    .map_err(io)
}

fn print_json_lines(out: &mut dyn Write, reports: &[Report]) -> Result<()> {
    for r in reports {
        writeln!(out, "{}", r.to_json()).map_err(io)?;
    }
    Ok(())
}

fn print_section(out: &mut dyn Write, name: &str, reports: &[Report], shown: &[Report]) -> Result<()> {
    let s = summarize(reports);
    writeln!(out, "== {name}: {}/{} passed ({:.0} ms)", s.passed, s.total, s.ms).map_err(io)?;
    if !shown.is_empty() {
        write!(out, "{}", render_table(shown)).map_err(io)?;
    }
    Ok(())
}
