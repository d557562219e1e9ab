//! Command-line front end of the `nls-thermo` binary.
//!
//! Exit status: 0 on success, 1 when verification (or certification)
//! fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::genrand::random_gibbs_instance;
use crate::instance::InstanceFile;
use crate::report::{run_verification, Suite, VerifyOptions};
use crate::spin_boson::{
    analytic_transition_matrix, numerical_transition_matrix, spin1_gibbs_matrix, SpinBosonParams,
};
use crate::sweep::{sweep, write_csv};
use crate::tolerance;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest tolerated deviation between the closed-form and the dynamical
/// spin-boson matrix.
pub const ORACLE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(
    name = "nls-thermo",
    version,
    about = "Heat and entropy flow between an N-level system and a heat bath"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate β⟨ΔQ⟩, β₀⟨ΔQ⟩ and ⟨ΔS⟩ on a uniform β grid (CSV).
    Sweep(SweepArgs),
    /// Run the verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Generate a random Gibbs-matrix instance (JSON).
    Gen(GenArgs),
    /// Materialize a built-in example instance (JSON).
    Example(ExampleArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
struct SourceArgs {
    /// Instance JSON file.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Random Gibbs instance with N levels (use with --seed).
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    /// Built-in example (`spin1`, use with --beta0).
    #[arg(long, value_name = "NAME")]
    example: Option<String>,
}

#[derive(Debug, Args)]
struct SourceOptions {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta0: f64,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    beta_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_max: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    options: SourceOptions,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = 201)]
    steps: usize,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Emit a JSON array instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fluctuation,
    Information,
    Response,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Fluctuation => Suite::Fluctuation,
            SuiteArg::Information => Suite::Information,
            SuiteArg::Response => Suite::Response,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    options: SourceOptions,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = 21)]
    steps: usize,
    /// Restrict to these suites (repeatable); all by default.
    #[arg(long, value_enum)]
    suite: Vec<SuiteArg>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Number of levels (at least 2).
    #[arg(value_parser = clap::value_parser!(u64).range(2..))]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExampleArgs {
    /// Example name; only `spin1` exists.
    name: String,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta0: f64,
    /// Also build the matrix from time-averaged dynamics and report the
    /// largest entrywise deviation.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// Runs the CLI with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
        Command::Gen(a) => cmd_gen(a, stdout),
        Command::Example(a) => cmd_example(a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Failed(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILED
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

enum CliError {
    Failed(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Certification { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("I/O: {e}"))
    }
}

fn load(source: &SourceArgs, options: &SourceOptions) -> Result<(String, InstanceFile), CliError> {
    if let Some(path) = &source.input {
        return Ok((
            format!("file {}", path.display()),
            InstanceFile::read(path)?,
        ));
    }
    if let Some(n) = source.random {
        let inst = random_gibbs_instance(n, options.seed)?;
        return Ok((
            format!("random n={n} seed={}", options.seed),
            InstanceFile::from_gibbs(&inst.gibbs),
        ));
    }
    match source.example.as_deref() {
        Some("spin1") => {
            let g = spin1_gibbs_matrix(options.beta0)?;
            Ok((
                format!("spin1 beta0={}", options.beta0),
                InstanceFile::from_gibbs(&g),
            ))
        }
        Some(other) => Err(CliError::Usage(format!("unknown example `{other}`"))),
        None => Err(CliError::Usage("no instance source given".into())),
    }
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => Ok(stdout.write_all(bytes)?),
    }
}

fn cmd_sweep(a: SweepArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let (_, file) = load(&a.source, &a.options)?;
    let g = file.to_gibbs(tolerance::FIXED_POINT)?;
    let scale = g.beta0().max(1.0);
    let rows = sweep(
        &g,
        a.grid.beta_min.unwrap_or(-5.0 * scale),
        a.grid.beta_max.unwrap_or(5.0 * scale),
        a.steps,
    )?;
    let mut buf = Vec::new();
    if a.json {
        serde_json::to_writer_pretty(&mut buf, &rows).expect("records serialize");
        buf.push(b'\n');
    } else {
        write_csv(&mut buf, &rows)?;
    }
    emit(&a.out, stdout, &buf)?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    a: VerifyArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let (descriptor, file) = load(&a.source, &a.options)?;
    let mut options = VerifyOptions {
        beta_min: a.grid.beta_min,
        beta_max: a.grid.beta_max,
        steps: a.steps,
        timing: a.timing,
        ..Default::default()
    };
    if !a.suite.is_empty() {
        options.suites = a.suite.into_iter().map(Suite::from).collect();
    }
    let report = run_verification(&file, &descriptor, &options)?;
    emit(&a.out, stdout, report.to_json().as_bytes())?;
    let failed: Vec<&str> = report.failures().map(|c| c.label.as_str()).collect();
    if report.pass {
        let _ = writeln!(
            stderr,
            "PASS {} ({} checks)",
            descriptor,
            report.checks.len()
        );
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(stderr, "FAIL {}: {}", descriptor, failed.join(", "));
        Ok(EXIT_FAILED)
    }
}

fn cmd_gen(a: GenArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let inst = random_gibbs_instance(a.n as usize, a.seed)?;
    emit(
        &a.out,
        stdout,
        InstanceFile::from_gibbs(&inst.gibbs).to_json().as_bytes(),
    )?;
    Ok(EXIT_OK)
}

fn cmd_example(
    a: ExampleArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    if a.name != "spin1" {
        return Err(CliError::Usage(format!("unknown example `{}`", a.name)));
    }
    let g = spin1_gibbs_matrix(a.beta0)?;
    emit(
        &a.out,
        stdout,
        InstanceFile::from_gibbs(&g).to_json().as_bytes(),
    )?;
    if a.oracle {
        let params = SpinBosonParams::new(
            a.beta0,
            a.lambda,
            40.max(SpinBosonParams::from_tail_bound(a.beta0, a.lambda)?.n_max),
        )?;
        let numeric = numerical_transition_matrix(&params)?;
        let analytic = analytic_transition_matrix(a.beta0)?;
        let deviation = (numeric.as_matrix() - analytic.as_matrix()).abs().max();
        let _ = writeln!(
            stderr,
            "oracle max deviation: {deviation:.3e} (n_max = {}, lambda = {})",
            params.n_max, params.lambda
        );
        if deviation >= ORACLE_TOLERANCE {
            return Ok(EXIT_FAILED);
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("nls-thermo").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["gen", "1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["sweep"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["sweep", "--random", "3", "--example", "spin1"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["example", "spin2"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["example", "spin1", "--beta0", "-1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["sweep", "--example", "spin1", "--steps", "1"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn example_has_half_in_the_middle() {
        let (code, out, _) = run_capture(&["example", "spin1", "--beta0", "1"]);
        assert_eq!(code, 0);
        let file = InstanceFile::from_json(&out).unwrap();
        assert_eq!(file.transition[1][1], 0.5);
    }

    #[test]
    fn example_oracle() {
        let (code, _, err) = run_capture(&["example", "spin1", "--oracle"]);
        assert_eq!(code, 0, "{err}");
        assert!(err.contains("oracle max deviation"));
    }
}
