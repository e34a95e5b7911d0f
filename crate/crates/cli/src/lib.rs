//! The `gueo` command line: classification tables, fibration graphs as DOT or
//! JSON, the verification suites and inspection of single elements.
//!
//! [`run`] does all the work and returns the process exit code, so the binary
//! is a thin wrapper and tests can drive commands in-process.

pub mod dot;
pub mod json;
pub mod table;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gueo_core::sigma_conj;
use gueo_core::strata;
use gueo_core::verify::{self, Report, Suite};
use gueo_core::weyl::MAX_RANK;
use gueo_core::{roots, WeylElement};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Above this rank `element` skips the exponential parts of its report.
pub const ELEMENT_SEARCH_MAX_N: usize = 20;

const MAX_OMEGA: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "gueo", version, about = "Ekedahl-Oort strata of the GU(2, n-2) basic locus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every label (k, l) for one n.
    Classify {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
    },
    /// Inspect the element s_{i_1} ... s_{i_r} tau_1^omega.
    Element {
        #[arg(long = "n")]
        n: usize,
        /// Comma-separated simple reflection indices; may be empty.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        omega: i64,
        /// Similitude factor; w_{k,l} lives at -1.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        similitude: i64,
        #[arg(long, value_enum, value_delimiter = ',')]
        show: Vec<Field>,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Field {
    Length,
    Window,
    Omega,
    Similitude,
    SuppSigma,
    SWSigma,
    PhiW,
    Lp,
    Verdict,
}

impl Field {
    const ALL: [Field; 9] = [
        Field::Length,
        Field::Window,
        Field::Omega,
        Field::Similitude,
        Field::SuppSigma,
        Field::SWSigma,
        Field::PhiW,
        Field::Lp,
        Field::Verdict,
    ];

    fn key(self) -> &'static str {
        match self {
            Field::Length => "length",
            Field::Window => "window",
            Field::Omega => "omega",
            Field::Similitude => "similitude",
            Field::SuppSigma => "supp_sigma",
            Field::SWSigma => "s_w_sigma",
            Field::PhiW => "phi_w",
            Field::Lp => "lp",
            Field::Verdict => "verdict",
        }
    }
}

/// A bad argument value that clap itself cannot see.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.is::<UsageError>() {
                EXIT_USAGE
            } else {
                EXIT_VERIFY_FAILED
            }
        }
    }
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<u8> {
    match command {
        Command::Classify { n, format } => cmd_classify(*n, *format, out),
        Command::Verify { suite, n_max } => cmd_verify(*suite, *n_max, out),
        Command::Element {
            n,
            word,
            omega,
            similitude,
            show,
        } => cmd_element(*n, word, *omega, *similitude, show, out),
    }
}

fn check_rank(n: usize) -> Result<()> {
    if !(2..=MAX_RANK).contains(&n) {
        return Err(usage(format!("n must lie in 2..={MAX_RANK}, got {n}")));
    }
    Ok(())
}

pub fn cmd_classify(n: usize, format: OutputFormat, out: &mut dyn Write) -> Result<u8> {
    check_rank(n)?;
    let text = match format {
        OutputFormat::Table => table::render(&strata::all_records(n)?),
        OutputFormat::Json => json::render(n, &strata::all_records(n)?)?,
        OutputFormat::Dot => dot::render(&strata::stratum_graph(n)?),
    };
    out.write_all(text.as_bytes()).context("writing output")?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(suite: Suite, n_max: Option<usize>, out: &mut dyn Write) -> Result<u8> {
    if let Some(n) = n_max {
        check_rank(n)?;
    }
    write_reports(&verify::run(suite, n_max), out)
}

/// One line per report; the exit code is 1 if any report failed.
pub fn write_reports(reports: &[Report], out: &mut dyn Write) -> Result<u8> {
    let mut code = EXIT_OK;
    for report in reports {
        if report.passed() {
            writeln!(out, "{}: PASS ({} checks)", report.name, report.checks)?;
        } else {
            code = EXIT_VERIFY_FAILED;
            writeln!(
                out,
                "{}: FAIL ({} of {} checks failed); first counterexample: {}",
                report.name,
                report.failures.len(),
                report.checks,
                report.first_failure().unwrap_or("?")
            )?;
        }
    }
    Ok(code)
}

/// Parses `"0,1,2"` (spaces allowed, empty for the identity) into indices below `n`.
pub fn parse_word(n: usize, word: &str) -> Result<Vec<usize>> {
    let word = word.trim();
    if word.is_empty() {
        return Ok(Vec::new());
    }
    word.split(',')
        .map(|part| {
            let part = part.trim();
            let i: usize = part
                .parse()
                .map_err(|_| usage(format!("malformed word letter `{part}`")))?;
            if i >= n {
                return Err(usage(format!("letter s{i} out of range for n = {n}")));
            }
            Ok(i)
        })
        .collect()
}

pub fn cmd_element(
    n: usize,
    word: &str,
    omega: i64,
    similitude: i64,
    show: &[Field],
    out: &mut dyn Write,
) -> Result<u8> {
    check_rank(n)?;
    let letters = parse_word(n, word)?;
    if omega.unsigned_abs() > MAX_OMEGA {
        return Err(usage(format!("|omega| must be at most {MAX_OMEGA}")));
    }
    let w = &WeylElement::from_word(n, &letters)? * &WeylElement::tau1(n).pow(omega);
    let w = w.with_similitude(similitude);
    let fields: &[Field] = if show.is_empty() { &Field::ALL } else { show };
    let small = n <= ELEMENT_SEARCH_MAX_N;
    for &field in fields {
        let value = match field {
            Field::Length => w.length().to_string(),
            Field::Window => format!("{:?}", w.window()),
            Field::Omega => w.omega_component().to_string(),
            Field::Similitude => w.similitude().to_string(),
            Field::SuppSigma => roots::supp_sigma(&w).to_string(),
            Field::SWSigma => roots::s_w_sigma(&w).to_string(),
            Field::PhiW => format!("{} of {} positive roots", roots::phi_w(&w).len(), n * (n - 1) / 2),
            Field::Lp if small => roots::r_count(&w).to_string(),
            Field::Lp => format!("skipped (n > {ELEMENT_SEARCH_MAX_N})"),
            Field::Verdict => verdict(&w)?,
        };
        writeln!(out, "{}: {value}", field.key())?;
    }
    Ok(EXIT_OK)
}

fn verdict(w: &WeylElement) -> Result<String> {
    let n = w.rank();
    let in_coset = w.omega_component() == strata::tau(n).omega_component() && w.similitude() == -1;
    if !in_coset || !w.is_min_coset_rep() {
        return Ok("n/a (not a minimal coset representative in the tau coset)".to_string());
    }
    if !sigma_conj::support_is_full(w) {
        return Ok("nonempty (proper sigma-support)".to_string());
    }
    if n > ELEMENT_SEARCH_MAX_N {
        return Ok(format!("skipped (n > {ELEMENT_SEARCH_MAX_N})"));
    }
    let v = sigma_conj::is_empty_basic_by_cosets(w)?;
    Ok(match v.witness {
        Some(r) if v.empty => format!("empty (witness r = {:?})", r.window()),
        _ => "nonempty".to_string(),
    })
}
