//! `steiner6`: admissibility checks, the full elimination suite, the
//! residual search and the group catalog from the command line.
//!
//! Exit codes: 0 success, 1 mismatch with the expected outcome, 2 usage
//! error, 3 I/O error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use steiner_core::dec::parse_canonical_uint;
use steiner_core::design::DesignParams;
use steiner_core::engine::residual::{search_residual, SearchBounds};
use steiner_core::engine::{run_suite, verify_all, Filter, SuiteOptions};
use steiner_core::groups::{catalog_for_degree, Family, GroupSpec};
use steiner_core::report::{self, Format};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "steiner6", version, about = "Exact case elimination for block-transitive Steiner 6-designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Counting identities, divisibility sieve and bounds for t-(v,k,λ).
    Check {
        t: String,
        v: String,
        k: String,
        lambda: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run every case elimination and compare with the expected outcome.
    Eliminate {
        #[command(flatten)]
        out: OutputArgs,
        /// Re-evaluate every certificate before writing it.
        #[arg(long)]
        self_check: bool,
        /// Drop one filter from the PSL(2,q) sweeps (fault injection).
        #[arg(long, hide = true)]
        skip_filter: Option<String>,
    },
    /// Bounded search of the residual equation for the open family.
    SearchOpen {
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Inspect the 3-homogeneous group catalog.
    Groups {
        #[command(subcommand)]
        command: GroupsCommand,
    },
}

#[derive(Subcommand)]
enum GroupsCommand {
    /// Catalog entries acting on `degree` points, or the family tags.
    List {
        #[arg(long)]
        degree: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Order of one group, e.g. `groups order PSL2 11`.
    Order {
        family: String,
        param: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, default_value_t = 1000)]
    s_max: u64,
    #[arg(long, default_value_t = 2)]
    u_max: u32,
    /// Characteristics to search (2 and/or 3).
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
    p: Vec<u64>,
    /// Values of c (default 1,2,4,5).
    #[arg(long, value_delimiter = ',', conflicts_with = "c_max")]
    c: Vec<u64>,
    /// Search every c in 1..=c_max instead of a fixed list.
    #[arg(long)]
    c_max: Option<u64>,
    #[arg(long, default_value_t = 65_536)]
    q_bit_limit: u64,
}

impl BoundArgs {
    fn bounds(&self) -> SearchBounds {
        let mut b = SearchBounds {
            s_max: self.s_max,
            u_max: self.u_max,
            p_set: self.p.clone(),
            q_bit_limit: self.q_bit_limit,
            ..SearchBounds::default()
        };
        if !self.c.is_empty() {
            b.c_set = self.c.clone();
        }
        if let Some(c_max) = self.c_max {
            b = b.with_free_c(c_max);
        }
        b
    }
}

enum Failure {
    Usage(String),
    Io(String),
    Mismatch(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn parse_uint(name: &str, text: &str) -> Result<BigUint, Failure> {
    parse_canonical_uint(text).map_err(|e| Failure::Usage(format!("{name}: {e}")))
}

fn cmd_check(t: &str, v: &str, k: &str, lambda: &str, out: &OutputArgs) -> Result<(), Failure> {
    let t = u32::try_from(parse_uint("t", t)?).map_err(|_| Failure::Usage("t is too large".into()))?;
    let params = DesignParams::new(t, parse_uint("v", v)?, parse_uint("k", k)?, parse_uint("lambda", lambda)?)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let rep = report::admissibility_report(&params).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut w = open_output(&out.output)?;
    report::write_admissibility(&mut w, &rep, out.format.into())?;
    w.flush()?;
    Ok(())
}

fn cmd_eliminate(out: &OutputArgs, self_check: bool, skip_filter: Option<&str>) -> Result<(), Failure> {
    let skip_filter = skip_filter
        .map(|f| f.parse::<Filter>())
        .transpose()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    // open the sink first so an unwritable path fails before the run
    let mut w = open_output(&out.output)?;
    let suite = run_suite(&SuiteOptions { skip_filter }).map_err(|e| Failure::Usage(e.to_string()))?;
    if self_check {
        let errors = verify_all(&suite.certificates);
        if !errors.is_empty() {
            for e in &errors {
                eprintln!("self-check: {e}");
            }
            return Err(Failure::Mismatch(format!("{} certificates failed re-evaluation", errors.len())));
        }
    }
    report::write_certificates(&mut w, &suite.certificates, out.format.into())?;
    w.flush()?;
    eprintln!("{} certificates", suite.certificates.len());
    if suite.matches_main_theorem() {
        Ok(())
    } else {
        for m in &suite.mismatches {
            eprintln!("mismatch: {m}");
        }
        Err(Failure::Mismatch(format!("{} mismatches", suite.mismatches.len())))
    }
}

fn cmd_search_open(bounds: &BoundArgs, out: &OutputArgs) -> Result<(), Failure> {
    let bounds = bounds.bounds();
    bounds.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let mut w = open_output(&out.output)?;
    let result = search_residual(&bounds).map_err(|e| Failure::Usage(e.to_string()))?;
    report::write_residual(&mut w, &result, out.format.into())?;
    w.flush()?;
    Ok(())
}

fn cmd_groups(command: &GroupsCommand) -> Result<(), Failure> {
    match command {
        GroupsCommand::List { degree, out } => {
            let mut w = open_output(&out.output)?;
            match degree {
                Some(v) => {
                    for spec in catalog_for_degree(*v) {
                        write_group(&mut w, &spec, out.format.into())?;
                    }
                }
                None => {
                    for f in Family::ALL {
                        writeln!(w, "{}", f.tag())?;
                    }
                }
            }
            w.flush()?;
        }
        GroupsCommand::Order { family, param, out } => {
            let family: Family = family.parse().map_err(|e: steiner_core::Error| Failure::Usage(e.to_string()))?;
            let spec = GroupSpec::build(family, *param).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut w = open_output(&out.output)?;
            match Format::from(out.format) {
                Format::Json => write_group(&mut w, &spec, Format::Json)?,
                Format::Text => writeln!(w, "{}", spec.order)?,
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn write_group(w: &mut dyn Write, spec: &GroupSpec, format: Format) -> io::Result<()> {
    match format {
        Format::Json => writeln!(w, "{}", report::group_line(spec)),
        Format::Text => writeln!(w, "{} degree={} order={}", spec.label(), spec.degree, spec.order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { t, v, k, lambda, out } => cmd_check(t, v, k, lambda, out),
        Command::Eliminate {
            out,
            self_check,
            skip_filter,
        } => cmd_eliminate(out, *self_check, skip_filter.as_deref()),
        Command::SearchOpen { bounds, out } => cmd_search_open(bounds, out),
        Command::Groups { command } => cmd_groups(command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
