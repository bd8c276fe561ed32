//! The `wishart` command line.
//!
//! Every subcommand reads a JSON parameter file (or stdin for `-`), runs one
//! engine, and prints a single JSON document or a CSV table. Exit codes:
//! 0 success, 2 invalid input, 3 numerical failure, 4 enumeration budget
//! exceeded.

mod commands;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::budget::{self, Budget};
use crate::error::{Error, ErrorClass};
use crate::model::Convention;
use crate::numeric::C64;
use output::{Object, Table, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "wishart", version, about = "Moments, cumulants and trace products of complex Wishart matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Sign convention for the non-central part; overrides the input file.
    #[arg(long, global = true)]
    pub convention: Option<Convention>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments E[(Tr W)^i] for i = 1..=order.
    Moments(OrderArgs),
    /// Cumulants of Tr W for i = 1..=order.
    Cumulants(OrderArgs),
    /// Joint moment E ∏ Tr(W H_j)^{i_j}.
    JointMoments(JointArgs),
    /// Joint cumulant of Tr(W H_1), ..., Tr(W H_m).
    JointCumulants(JointArgs),
    /// Generalized product moment over the cycles of a permutation, with its
    /// expansion into central and non-central parts.
    Generalized(GeneralizedArgs),
    /// d-permanent of the `sigma` matrix, optionally through the master
    /// theorem at a multi-index.
    Permanent(PermanentArgs),
    /// Spectral polykays of the eigenvalues of `sigma`.
    Polykay(PolykayArgs),
    /// Necklaces of a given kind.
    Necklaces(NecklaceArgs),
    /// Monte Carlo check of the closed forms (standard convention).
    McVerify(McArgs),
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    /// Parameter file, or `-` for stdin.
    pub params_file: String,
    #[arg(long, default_value_t = 4)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct JointArgs {
    pub params_file: String,
    /// Multi-index, e.g. `1,2`; defaults to the file's `index`.
    #[arg(long, value_delimiter = ',')]
    pub index: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct GeneralizedArgs {
    pub params_file: String,
    /// Permutation of the directions in 1-based cycle notation, e.g. `(1 2)(3)`.
    /// Omitted fixed points are allowed; the default is the identity.
    #[arg(long)]
    pub cycles: Option<String>,
}

#[derive(Debug, Args)]
pub struct PermanentArgs {
    pub params_file: String,
    /// Complex weight d, e.g. `-1` or `0.5+0.5i`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha")]
    pub d: Option<C64>,
    /// Moment sequence a_1,a_2,... replacing d^k.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<C64>>,
    /// Multi-index for the master-theorem route; defaults to the file's `index`.
    #[arg(long, value_delimiter = ',')]
    pub index: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct PolykayArgs {
    pub params_file: String,
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    /// Also estimate E[κ] over compressions to this size.
    #[arg(long)]
    pub compress: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct NecklaceArgs {
    /// Symbol counts, e.g. `1,1,1`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub kind: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    pub params_file: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Multi-index for a joint-moment check; needs `h`.
    #[arg(long, value_delimiter = ',')]
    pub index: Option<Vec<usize>>,
    /// Distributional identity to test: degrees-split, sheffer or m-split.
    #[arg(long)]
    pub identity: Option<crate::mc::DistributionIdentity>,
}

/// Exit code with the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command produced, before rendering.
pub(crate) struct Report {
    pub convention: Convention,
    pub options: Object,
    pub results: Value,
    pub table: Table,
    pub warnings: Vec<String>,
}

pub(crate) struct Invocation<'a> {
    pub command_name: &'static str,
    pub convention_flag: Option<Convention>,
    pub stdin: &'a mut dyn Read,
    pub input_bytes: Option<Vec<u8>>,
}

impl Invocation<'_> {
    pub fn read_input(&mut self, path: &str) -> Result<&[u8], Error> {
        let mut bytes = Vec::new();
        if path == "-" {
            self.stdin
                .read_to_end(&mut bytes)
                .map_err(|e| Error::InvalidParameter(format!("cannot read stdin: {e}")))?;
        } else {
            bytes = std::fs::read(path).map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}")))?;
        }
        Ok(self.input_bytes.insert(bytes))
    }
}

fn exit_code(error: &Error) -> i32 {
    match error.class() {
        ErrorClass::Validation => EXIT_VALIDATION,
        ErrorClass::Numerical => EXIT_NUMERICAL,
        ErrorClass::Budget => EXIT_BUDGET,
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn failure(error: &Error) -> Outcome {
    Outcome { code: exit_code(error), stdout: String::new(), stderr: format!("error: {error}\n") }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_VALIDATION, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match Budget::from_env() {
        Ok(b) => budget::set(b),
        Err(e) => return failure(&e),
    }
    let mut invocation = Invocation {
        command_name: commands::name(&cli.command),
        convention_flag: cli.convention,
        stdin,
        input_bytes: None,
    };
    let report = match commands::dispatch(&cli.command, &mut invocation) {
        Ok(report) if !output::is_finite(&report.results) => {
            return failure(&Error::NonFinite("a result overflowed or is undefined".into()))
        }
        Ok(report) => report,
        Err(e) => return failure(&e),
    };
    // Commands without an input file hash their command line instead.
    let hashed = invocation.input_bytes.clone().unwrap_or_else(|| {
        args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ").into_bytes()
    });
    let input_sha256 = sha256_hex(&hashed);
    let version = env!("CARGO_PKG_VERSION");
    let stdout = match cli.format {
        Format::Json => {
            let doc = Object::new()
                .with("command", invocation.command_name)
                .with("convention", report.convention.as_str())
                .with("input_sha256", input_sha256)
                .with("options", report.options)
                .with("results", report.results)
                .with("version", version)
                .with("warnings", report.warnings.clone());
            output::to_json(&doc.into())
        }
        Format::Csv => {
            let leading = [
                ("command", Value::from(invocation.command_name)),
                ("convention", Value::from(report.convention.as_str())),
                ("version", Value::from(version)),
                ("input_sha256", Value::from(input_sha256)),
            ];
            match output::to_csv(&report.table, &leading) {
                Ok(text) => text,
                Err(e) => return failure(&Error::InvalidParameter(format!("cannot write CSV: {e}"))),
            }
        }
    };
    let stderr = report.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    Outcome { code: EXIT_OK, stdout, stderr }
}
