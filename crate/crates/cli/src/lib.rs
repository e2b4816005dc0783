//! Command-line front end for `torbundle`.
//!
//! Exit codes: 0 success, 1 the input is well formed but is not a valid
//! action (or `l` is invalid, or an oracle disagrees), 2 malformed input or
//! arguments.

pub mod input;
pub mod report;

use std::io::Read;
use std::ops::Range;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use torbundle::{validate_action, ActionData, IntMatrix, ManifoldParams};

use crate::input::{parse_input, Format, InputDoc};
use crate::report::{render_text, to_json, Report};

pub const DEFAULT_L: i64 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "torbundle",
    version,
    about = "Invariants of Z/p actions on Z^n and of flat torus bundles"
)]
pub struct Cli {
    /// Input document (JSON or TOML); reads stdin when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct LArg {
    /// Odd sphere dimension l >= 3; overrides `l` from the input.
    #[arg(long)]
    pub l: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that rho is an order-p action free away from the origin.
    Validate,
    /// H^1, abelianization, conjugacy classes, fixed points and r_j.
    Invariants,
    /// L-groups and Whitehead groups over a degree range.
    Ltheory {
        /// Half-open range `A..B`, or inclusive `A..=B`.
        #[arg(long = "m-range", default_value = "0..4", allow_hyphen_values = true)]
        m_range: String,
    },
    /// Structure sets of BGamma and M.
    StructureSet(LArg),
    /// Obstruction groups that detect elements of S_geo(M).
    Detect(LArg),
    /// Run every brute-force oracle.
    Verify,
    /// Everything.
    Report {
        #[command(flatten)]
        l: LArg,
        #[arg(long = "m-range", default_value = "0..4", allow_hyphen_values = true)]
        m_range: String,
        /// Leave out the oracle section.
        #[arg(long)]
        no_oracles: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stdout: String, stderr: String) -> Self {
        Self {
            code,
            stdout,
            stderr,
        }
    }
}

pub fn parse_m_range(s: &str) -> Option<Range<i64>> {
    let (a, b, inclusive) = if let Some((a, b)) = s.split_once("..=") {
        (a, b, true)
    } else {
        let (a, b) = s.split_once("..")?;
        (a, b, false)
    };
    let a: i64 = a.trim().parse().ok()?;
    let b: i64 = b.trim().parse().ok()?;
    let end = if inclusive { b.checked_add(1)? } else { b };
    (a <= end).then_some(a..end)
}

fn read_doc(cli: &Cli, stdin: &mut dyn Read) -> Result<InputDoc, String> {
    let (text, format) = match &cli.input {
        Some(path) => (
            std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
            Format::from_path(path),
        ),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            (s, None)
        }
    };
    parse_input(&text, format).map_err(|e| e.to_string())
}

fn to_matrix(rows: &[Vec<BigInt>]) -> IntMatrix {
    IntMatrix::from_rows(rows).expect("input rows are square")
}

enum Failure {
    Invalid(String),
    Malformed(String),
}

fn emit(cli: &Cli, report: &Report) -> String {
    if cli.json {
        to_json(report) + "\n"
    } else {
        render_text(report)
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run_cli<I, T>(argv: I, stdin: &mut dyn Read) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput::ok(text)
            } else {
                CliOutput::fail(2, String::new(), text)
            };
        }
    };
    let doc = match read_doc(&cli, stdin) {
        Ok(s) => s,
        Err(e) => return CliOutput::fail(2, String::new(), e + "\n"),
    };

    let l_flag = match &cli.command {
        Command::StructureSet(l) | Command::Detect(l) | Command::Report { l, .. } => l.l,
        _ => None,
    };
    let l = l_flag.or(doc.l).unwrap_or(DEFAULT_L);
    let mut report = Report::new(&doc, Some(l));

    let action = match validate_action(doc.p, to_matrix(&doc.rho)) {
        Ok(a) => a,
        Err(e) => {
            report.set_invalid(&e);
            return CliOutput::fail(1, emit(&cli, &report), format!("error: {e}\n"));
        }
    };
    report.set_valid(&action);

    match fill(&cli, &mut report, action, l) {
        Ok(()) => {}
        Err(Failure::Malformed(msg)) => {
            return CliOutput::fail(2, String::new(), format!("error: {msg}\n"))
        }
        Err(Failure::Invalid(msg)) => {
            report.set_invalid(&msg);
            return CliOutput::fail(1, emit(&cli, &report), format!("error: {msg}\n"));
        }
    }

    let disagree = report.oracles.as_ref().is_some_and(|o| !o.all_agree);
    let out = emit(&cli, &report);
    if disagree {
        CliOutput::fail(1, out, "error: oracle disagreement\n".into())
    } else {
        CliOutput::ok(out)
    }
}

fn fill(cli: &Cli, report: &mut Report, action: ActionData, l: i64) -> Result<(), Failure> {
    let lib = |e: torbundle::Error| Failure::Invalid(e.to_string());
    let range = |s: &str| {
        parse_m_range(s)
            .ok_or_else(|| Failure::Malformed(format!("invalid --m-range `{s}`, expected A..B")))
    };
    let params = |a: ActionData| ManifoldParams::new(a, l).map_err(|e| lib(e.into()));

    match &cli.command {
        Command::Validate => {}
        Command::Invariants => {
            report.add_group_invariants(&action).map_err(lib)?;
            report.add_r_vector(&params(action)?);
        }
        Command::Ltheory { m_range } => {
            let degrees = range(m_range)?;
            let mp = params(action)?;
            report.add_r_vector(&mp);
            report.add_l_theory(&mp, degrees).map_err(lib)?;
        }
        Command::StructureSet(_) => {
            let mp = params(action)?;
            report.add_r_vector(&mp);
            report.add_structure_sets(&mp);
        }
        Command::Detect(_) => {
            let mp = params(action)?;
            report.add_detection(&mp).map_err(lib)?;
        }
        Command::Verify => {
            report.add_oracles(&action).map_err(lib)?;
        }
        Command::Report {
            m_range,
            no_oracles,
            ..
        } => {
            let degrees = range(m_range)?;
            report.add_group_invariants(&action).map_err(lib)?;
            if !no_oracles {
                report.add_oracles(&action).map_err(lib)?;
            }
            let mp = params(action)?;
            report.add_r_vector(&mp);
            report.add_l_theory(&mp, degrees).map_err(lib)?;
            report.add_structure_sets(&mp);
            report.add_detection(&mp).map_err(lib)?;
        }
    }
    Ok(())
}
