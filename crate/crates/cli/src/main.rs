mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gtk_core::group::DEFAULT_ORDER_CAP;
use gtk_core::io::{parse_fixture_capped, Fixture, FixtureError};
use gtk_core::{GroupAnalysis, GroupError, TableError, TheoremError};

#[derive(Parser)]
#[command(name = "gtk", version, about = "Character tables and G-character tables of small finite groups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized alternative Δ
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Refuse groups larger than this
    #[arg(long, global = true, env = "GTK_MAX_ORDER", default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table
    Table { fixture: PathBuf },
    /// List the normal subgroups with their indices
    Normals { fixture: PathBuf },
    /// G-character table of a normal subgroup
    Gtable {
        fixture: PathBuf,
        #[arg(long)]
        normal: usize,
    },
    /// Lower or upper central G-series of a normal subgroup
    Series {
        fixture: PathBuf,
        #[arg(long)]
        normal: usize,
        #[arg(long, conflicts_with = "upper")]
        lower: bool,
        #[arg(long)]
        upper: bool,
    },
    /// Run one detector or theorem check
    Check {
        #[command(subcommand)]
        check: Check,
    },
    /// Full invariant suite for the group and each normal subgroup
    Verify { fixture: PathBuf },
}

#[derive(Subcommand)]
enum Check {
    Thompson {
        fixture: PathBuf,
        #[arg(long)]
        normal: usize,
        #[arg(short = 'p')]
        p: usize,
    },
    Nmi {
        fixture: PathBuf,
    },
    Gnmi {
        fixture: PathBuf,
        #[arg(long)]
        normal: usize,
    },
    Taketa {
        fixture: PathBuf,
        #[arg(long)]
        normal: usize,
    },
    Fratt {
        fixture: PathBuf,
        #[arg(long)]
        normal: usize,
    },
}

/// How a command ended, mapped onto the process exit code.
pub enum Outcome {
    Ok,
    CheckFailed,
}

pub enum Failure {
    Usage(String),
    Internal(String),
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<gtk_core::CliffordError> for Failure {
    fn from(e: gtk_core::CliffordError) -> Self {
        TheoremError::from(e).into()
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        TheoremError::from(e).into()
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(path: &PathBuf, cap: usize) -> Result<Fixture, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_fixture_capped(&text, cap).map_err(|e| match e {
        FixtureError::Syntax(s) => Failure::Usage(format!("{}: syntax error at {s}", path.display())),
        FixtureError::Validation(v) => Failure::Usage(format!("{}: {v}", path.display())),
    })
}

fn analyse(path: &PathBuf, cap: usize) -> Result<(Fixture, GroupAnalysis), Failure> {
    let fixture = load(path, cap)?;
    let an = GroupAnalysis::with_cap(&fixture.group, cap)?;
    Ok((fixture, an))
}

fn normal_index(an: &GroupAnalysis, k: usize) -> Result<usize, Failure> {
    if k < an.normals().len() {
        Ok(k)
    } else {
        Err(Failure::Usage(format!(
            "normal subgroup index {k} out of range; the group has {} (see `gtk normals`)",
            an.normals().len()
        )))
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let out = output::Printer::new(cli.format);
    let cap = cli.max_order;
    match &cli.command {
        Command::Table { fixture } => {
            let (fx, an) = analyse(fixture, cap)?;
            out.table(&fx, an.table())?;
            Ok(Outcome::Ok)
        }
        Command::Normals { fixture } => {
            let (fx, an) = analyse(fixture, cap)?;
            out.normals(&fx, &an);
            Ok(Outcome::Ok)
        }
        Command::Gtable { fixture, normal } => {
            let (fx, an) = analyse(fixture, cap)?;
            let i = normal_index(&an, *normal)?;
            out.gtable(&fx, &an, i, cli.seed)?;
            Ok(Outcome::Ok)
        }
        Command::Series { fixture, normal, upper, .. } => {
            let (fx, an) = analyse(fixture, cap)?;
            let i = normal_index(&an, *normal)?;
            out.series(&fx, &an, i, *upper)?;
            Ok(Outcome::Ok)
        }
        Command::Check { check } => run_check(&out, check, cap),
        Command::Verify { fixture } => {
            let (fx, an) = analyse(fixture, cap)?;
            let report = gtk_core::verify::verify_group(&an, cli.seed.unwrap_or(1))?;
            out.verify(&fx, &report);
            Ok(if report.ok() { Outcome::Ok } else { Outcome::CheckFailed })
        }
    }
}

fn run_check(out: &output::Printer, check: &Check, cap: usize) -> Result<Outcome, Failure> {
    use gtk_core::theorems;
    let (name, fixture, normal, theorem) = match check {
        Check::Thompson { fixture, normal, .. } => ("thompson", fixture, Some(*normal), true),
        Check::Nmi { fixture } => ("nmi", fixture, None, false),
        Check::Gnmi { fixture, normal } => ("gnmi", fixture, Some(*normal), false),
        Check::Taketa { fixture, normal } => ("taketa", fixture, Some(*normal), true),
        Check::Fratt { fixture, normal } => ("fratt", fixture, Some(*normal), true),
    };
    let (fx, an) = analyse(fixture, cap)?;
    let i = normal.map(|k| normal_index(&an, k)).transpose()?;
    let verdict = match check {
        Check::Thompson { p, .. } => {
            if !is_prime(*p) {
                return Err(Failure::Usage(format!("-p {p} is not a prime")));
            }
            theorems::thompson_check(&an, i.unwrap(), *p)?
        }
        Check::Nmi { .. } => theorems::is_nmi_group(&an)?,
        Check::Gnmi { .. } => theorems::is_g_invariant_nmi_subgroup(&an, i.unwrap())?,
        Check::Taketa { .. } => theorems::taketa_check(&an, i.unwrap())?,
        Check::Fratt { .. } => theorems::fratt_check(&an, i.unwrap())?,
    };
    out.verdict(&fx, &an, name, i, &verdict);
    let failed = theorem && verdict.status == gtk_core::Status::Fails;
    Ok(if failed { Outcome::CheckFailed } else { Outcome::Ok })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("gtk: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("gtk: internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
