//! The `qmono` command line.

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::FactoredFraction;
use crate::json::FractionRecord;
use crate::macdonald::{apply_D_eigencheck, gn_table, Basis, DEFAULT_OPERATOR_CAP};
use crate::partition::{partitions_up_to, Partition};
use crate::poly::Universe;
use crate::positivity::{thm8_check, DEFAULT_LENGTH_CAP};
use crate::report::{Check, RunReport};
use crate::selftest;
use crate::specialization::{
    spec_W, spec_Z, spec_generator, spec_oracle, GeneratorKind, Limits, OracleMode, SpecResult,
};
use crate::text::parse_fraction;
use crate::verify::{self, Identity, Params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qmono",
    version,
    about = "Exact q-specializations of monomial symmetric functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Form {
    Theorem1,
    Theorem3,
    OraclePowersum,
    OracleDirect,
    Elementary,
    Complete,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate m_mu (or e_n, h_n, p_n) on (a - b)/(1 - q).
    Specialize {
        #[arg(long)]
        mu: Option<Partition>,
        #[arg(long, value_enum, default_value = "theorem1")]
        form: Form,
        /// degree for the generator forms
        #[arg(long)]
        n: Option<u32>,
        /// alphabet size for oracle-direct
        #[arg(long = "N")]
        n_vars: Option<usize>,
        /// e.g. `a=1,b=q^4`
        #[arg(long)]
        subst: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Run one identity sweep.
    Verify {
        #[arg(long)]
        identity: Identity,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        max_weight: Option<u32>,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long = "N")]
        n_vars: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long = "max-N")]
        max_n_vars: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Coefficients of g_n on one basis.
    Expand {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "monomial")]
        basis: Basis,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// P_mu, H_mu and Hbar_mu with their checks.
    Positivity {
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
        #[arg(long)]
        mu: Option<Partition>,
        #[arg(long, default_value_t = 5)]
        max_length: usize,
    },
    /// Check the eigenvalue equation of g_n on N variables.
    Eigencheck {
        #[arg(long)]
        n: u32,
        #[arg(long = "N", default_value_t = 3)]
        n_vars: usize,
        #[arg(long = "max-N", default_value_t = DEFAULT_OPERATOR_CAP)]
        max_n_vars: usize,
    },
    /// Run every acceptance criterion at default sizes.
    Selftest,
}

/// A specialization as written by `specialize --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub partition: Vec<u32>,
    pub formula: String,
    #[serde(flatten)]
    pub value: FractionRecord,
}

impl SpecRecord {
    pub fn from_result(r: &SpecResult, value: &FactoredFraction) -> SpecRecord {
        SpecRecord {
            partition: r.partition.parts().to_vec(),
            formula: r.formula.tag(),
            value: FractionRecord::from_fraction(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionEntry {
    pub mu: Vec<u32>,
    pub coefficient: FractionRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub n: u32,
    pub basis: Basis,
    pub entries: Vec<ExpansionEntry>,
}

/// The exit code for an outcome of [`execute`].
pub fn exit_code(outcome: &Result<RunReport>) -> i32 {
    match outcome {
        Ok(r) if r.passed() => EXIT_OK,
        Ok(_) => EXIT_FAILURE,
        Err(Error::ResourceLimit { .. }) => EXIT_RESOURCE,
        Err(Error::Internal(_)) => EXIT_FAILURE,
        Err(_) => EXIT_USAGE,
    }
}

/// Reads `QMONO_THREADS` and sizes the global pool.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("QMONO_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::Usage(format!(
            "QMONO_THREADS must be a positive integer, got `{v}`"
        ))
    })?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn io(e: std::io::Error) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}

/// Parses `argv` (without the program name), runs the command, and writes
/// its output to `out`.
pub fn execute<W: Write>(argv: &[String], out: &mut W) -> Result<RunReport> {
    let start = Instant::now();
    let args = std::iter::once("qmono".to_string()).chain(argv.iter().cloned());
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(out, "{}", e.render()).map_err(io)?;
                return Ok(RunReport::new("help", &[], start.elapsed()));
            }
            return Err(Error::Usage(e.render().to_string().trim_end().to_string()));
        }
    };
    match cli.command {
        Command::Specialize {
            mu,
            form,
            n,
            n_vars,
            subst,
            format,
            max_length,
        } => {
            let mut limits = Limits::default();
            if let Some(l) = max_length {
                limits.max_length = l;
            }
            let need_mu = || {
                mu.clone()
                    .ok_or_else(|| Error::Usage("--mu is required for this form".into()))
            };
            let need_n =
                || n.ok_or_else(|| Error::Usage("--n is required for generator forms".into()));
            let result = match form {
                Form::Theorem1 => spec_Z(&need_mu()?, &limits)?,
                Form::Theorem3 => spec_W(&need_mu()?, &limits)?,
                Form::OraclePowersum => spec_oracle(&need_mu()?, OracleMode::Powersum, &limits)?,
                Form::OracleDirect => {
                    let n_vars = n_vars
                        .ok_or_else(|| Error::Usage("--N is required for oracle-direct".into()))?;
                    spec_oracle(&need_mu()?, OracleMode::Direct(n_vars), &limits)?
                }
                Form::Elementary => spec_generator(GeneratorKind::Elementary, need_n()?)?,
                Form::Complete => spec_generator(GeneratorKind::Complete, need_n()?)?,
                Form::Power => spec_generator(GeneratorKind::Power, need_n()?)?,
            };
            let value = match &subst {
                Some(s) => apply_subst(&result.value, s)?.simplified(),
                None => result.value.clone(),
            };
            let record = to_json(&SpecRecord::from_result(&result, &value));
            match format {
                Format::Text => writeln!(out, "{value}\n{record}").map_err(io)?,
                Format::Json => writeln!(out, "{record}").map_err(io)?,
            }
            let check = Check::values(
                format!("specialize {}", result.formula.tag()),
                String::new(),
                String::new(),
            );
            Ok(RunReport::new("specialize", &[check], start.elapsed()))
        }
        Command::Verify {
            identity,
            n,
            max_weight,
            max_length,
            n_vars,
            max_n,
            max_n_vars,
            order,
        } => {
            let mut limits = Limits::default();
            if let Some(l) = max_length {
                limits.max_length = limits.max_length.max(l);
            }
            let params = Params {
                n,
                max_weight,
                max_length,
                n_vars,
                max_n,
                max_n_vars,
                order,
                limits,
            };
            let checks = verify::run(identity, &params)?;
            let report = RunReport::new(format!("verify {identity}"), &checks, start.elapsed());
            writeln!(out, "{}", to_json(&report)).map_err(io)?;
            Ok(report)
        }
        Command::Expand { n, basis, format } => {
            let table = gn_table(n, basis, &Limits::default())?;
            match format {
                Format::Json => {
                    let record = ExpansionRecord {
                        n,
                        basis,
                        entries: table
                            .entries
                            .iter()
                            .map(|(mu, c)| ExpansionEntry {
                                mu: mu.parts().to_vec(),
                                coefficient: FractionRecord::from_fraction(c),
                            })
                            .collect(),
                    };
                    writeln!(out, "{}", to_json(&record)).map_err(io)?;
                }
                Format::Text => {
                    for (mu, c) in &table.entries {
                        writeln!(out, "{} {mu}: {c}", basis.tag()).map_err(io)?;
                    }
                }
            }
            let check = Check::values(
                format!("expand n={n} basis={}", basis.tag()),
                String::new(),
                String::new(),
            );
            Ok(RunReport::new("expand", &[check], start.elapsed()))
        }
        Command::Positivity {
            max_weight,
            mu,
            max_length,
        } => {
            let limits = Limits::default();
            let cap = DEFAULT_LENGTH_CAP.max(max_length);
            let partitions = match mu {
                Some(mu) => vec![mu],
                None => partitions_up_to(max_weight)
                    .into_iter()
                    .filter(|m| m.len() <= max_length)
                    .collect(),
            };
            let reports = partitions
                .par_iter()
                .map(|mu| thm8_check(mu, &limits, cap))
                .collect::<Result<Vec<_>>>()?;
            writeln!(out, "{}", to_json(&reports)).map_err(io)?;
            let checks: Vec<Check> = reports
                .iter()
                .map(|r| Check {
                    instance: format!("positivity mu={}", r.partition),
                    passed: r.passed(),
                    expected: "all checks hold".into(),
                    actual: if r.passed() {
                        "all checks hold".into()
                    } else {
                        to_json(r)
                    },
                })
                .collect();
            Ok(RunReport::new("positivity", &checks, start.elapsed()))
        }
        Command::Eigencheck {
            n,
            n_vars,
            max_n_vars,
        } => {
            let check = Check::identity(
                format!("eigencheck n={n} N={n_vars}"),
                apply_D_eigencheck(n, n_vars, max_n_vars, &Limits::default()),
            )?;
            let report = RunReport::new("eigencheck", &[check], start.elapsed());
            writeln!(out, "{}", to_json(&report)).map_err(io)?;
            Ok(report)
        }
        Command::Selftest => {
            let mut checks = Vec::new();
            for id in selftest::CRITERIA.iter().map(|(id, _)| *id) {
                let r = selftest::run_criterion(id)?;
                eprintln!(
                    "criterion {:>2} {} ({} instances, {:.1}s): {}",
                    r.id,
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.checks.len(),
                    r.elapsed.as_secs_f64(),
                    r.title
                );
                checks.extend(r.checks.into_iter().map(|mut c| {
                    c.instance = format!("criterion {id}: {}", c.instance);
                    c
                }));
            }
            let report = RunReport::new("selftest", &checks, start.elapsed());
            writeln!(out, "{}", to_json(&report)).map_err(io)?;
            Ok(report)
        }
    }
}

/// Applies `name=expr,...` to an `{a, b, q}` value. The result lives on the
/// unbound variables plus `t` when an expression mentions it.
fn apply_subst(value: &FactoredFraction, spec: &str) -> Result<FactoredFraction> {
    let mut pairs = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, expr) = item.split_once('=').ok_or_else(|| {
            Error::Usage(format!(
                "substitution `{item}` is not of the form name=expr"
            ))
        })?;
        let name = name.trim();
        if value.universe().index_of(name).is_none() {
            return Err(Error::Usage(format!(
                "cannot substitute unknown variable `{name}`"
            )));
        }
        pairs.push((name.to_string(), expr.trim().to_string()));
    }
    let source = value.universe();
    let mut names: Vec<String> = source
        .names()
        .iter()
        .filter(|n| !pairs.iter().any(|(b, _)| b == *n))
        .cloned()
        .collect();
    if pairs.iter().any(|(_, e)| e.contains('t')) && !names.iter().any(|n| n == "t") {
        names.push("t".into());
    }
    let target: Arc<Universe> = Universe::new(names);
    let bindings = pairs
        .iter()
        .map(|(n, e)| Ok((n.as_str(), parse_fraction(&target, e)?)))
        .collect::<Result<Vec<_>>>()?;
    value.substitute(&target, &bindings)
}
