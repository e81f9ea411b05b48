//! Command-line front end. Every command writes its report to `out` and
//! diagnostics to `err`, and returns the process exit status.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::check_prime;
use crate::catalog::{self, GRAMMAR, VERIFICATION_SET};
use crate::error::{Error, Result};
use crate::group::DEFAULT_ELEMENT_BUDGET;
use crate::report::{analyze_named, check_line, CartanReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "mackey-cartan",
    version,
    about = "Exact Cartan determinants of Mackey algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the report for one group and prime.
    Analyze(AnalyzeArgs),
    /// Run every oracle check and print one line per check.
    Verify(CommonArgs),
    /// List the accepted group specs and the built-in verification set.
    Catalog,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Group spec, e.g. S4, EA(3,2), C3xS3, file:gens.txt; `catalog` for the built-in set (verify only)
    #[arg(long = "group")]
    pub group: String,
    #[arg(long = "prime")]
    pub prime: u64,
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Refuse groups of larger order
    #[arg(long = "max-order", default_value_t = DEFAULT_ELEMENT_BUDGET)]
    pub max_order: usize,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Attach oracle verification records to the report
    #[arg(long = "verify")]
    pub verify: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub group_spec: String,
    pub prime: u64,
    pub format: OutputFormat,
    pub verify: bool,
    pub max_order: usize,
}

impl CliConfig {
    pub fn new(group_spec: &str, prime: u64) -> Self {
        CliConfig {
            group_spec: group_spec.to_string(),
            prime,
            format: OutputFormat::Text,
            verify: false,
            max_order: DEFAULT_ELEMENT_BUDGET,
        }
    }

    fn validate(&self) -> Result<()> {
        check_prime(self.prime)?;
        if self.max_order == 0 {
            return Err(Error::Precondition(
                "--max-order must be at least 1".to_string(),
            ));
        }
        Ok(())
    }
}

impl From<CommonArgs> for CliConfig {
    fn from(a: CommonArgs) -> Self {
        CliConfig {
            group_spec: a.group,
            prime: a.prime,
            format: a.format,
            verify: false,
            max_order: a.max_order,
        }
    }
}

fn report_for(config: &CliConfig, spec: &str, verify: bool) -> Result<CartanReport> {
    let group = catalog::build(spec, config.max_order)?;
    analyze_named(spec.trim(), &group, config.prime, verify)
}

fn emit_error(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_INPUT
}

pub fn cmd_analyze(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let report = match config
        .validate()
        .and_then(|_| report_for(config, &config.group_spec, config.verify))
    {
        Ok(r) => r,
        Err(e) => return emit_error(err, &e),
    };
    let body = match config.format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json() + "\n",
    };
    let _ = out.write_all(body.as_bytes());
    if report.verified() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

pub fn cmd_verify(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Err(e) = config.validate() {
        return emit_error(err, &e);
    }
    let specs: Vec<&str> = if config.group_spec.trim() == "catalog" {
        VERIFICATION_SET
            .iter()
            .copied()
            .filter(|s| matches!(catalog::nominal_order(s), Ok(Some(n)) if n <= config.max_order as u128))
            .collect()
    } else {
        vec![config.group_spec.as_str()]
    };
    let mut reports = Vec::with_capacity(specs.len());
    for spec in specs {
        match report_for(config, spec, true) {
            Ok(r) => reports.push(r),
            Err(e) => return emit_error(err, &e),
        }
    }
    let mut all_pass = true;
    match config.format {
        OutputFormat::Text => {
            for r in &reports {
                for record in r.verification.iter().flatten() {
                    all_pass &= record.passed();
                    let _ = writeln!(out, "{}", check_line(record));
                }
            }
        }
        OutputFormat::Json => {
            all_pass = reports.iter().all(CartanReport::verified);
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            );
        }
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

pub fn cmd_catalog(out: &mut dyn Write) -> i32 {
    let _ = writeln!(out, "group specs:");
    for (spec, what) in GRAMMAR {
        let _ = writeln!(out, "  {spec:<12} {what}");
    }
    let _ = writeln!(out, "verification set:");
    let _ = writeln!(out, "  {}", VERIFICATION_SET.join(" "));
    EXIT_OK
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                return EXIT_INPUT;
            }
            let _ = out.write_all(rendered.as_bytes());
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Analyze(a) => {
            let verify = a.verify;
            let config = CliConfig {
                verify,
                ..CliConfig::from(a.common)
            };
            cmd_analyze(&config, out, err)
        }
        Command::Verify(c) => cmd_verify(&CliConfig::from(c), out, err),
        Command::Catalog => cmd_catalog(out),
    }
}
