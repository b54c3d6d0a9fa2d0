//! `orbit-sheets`: reports on nilpotent orbits of `sp_N` and `so_N`.
//!
//! Exit status is 0 on success, 1 on bad input and 2 when a verification
//! sweep finds a failure.

mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use orbit_sheets::verify::{self, Check, VerifyConfig, VerifyReport};
use orbit_sheets::{induce_step, levi_classes, Label, NilpotentOrbit, OrbitError, Partition, Sign};

#[derive(Parser, Debug)]
#[command(
    name = "orbit-sheets",
    version,
    about = "Nilpotent orbits, sheets and induction in sp_N and so_N"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Statistics, two-steps, dimensions and sheets of one orbit.
    Analyze(OrbitArgs),
    /// Induce an orbit through a sequence of `gl_i` factors.
    Induce(InduceArgs),
    /// List the sheets containing an orbit.
    Sheets(OrbitArgs),
    /// List Levi classes (restricted sequences) for a given rank.
    Levis(LeviArgs),
    /// Sweep the theorem checks over every partition up to a size.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct OrbitArgs {
    /// +1 for orthogonal, -1 for symplectic.
    #[arg(long, allow_hyphen_values = true)]
    eps: String,
    /// Parts, comma separated, in any order.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    parts: Vec<i64>,
    /// Label for a very even partition in type D.
    #[arg(long)]
    label: Option<Label>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct InduceArgs {
    #[arg(long, allow_hyphen_values = true)]
    eps: String,
    /// Parts of the orbit being induced; empty for the zero orbit of `k'`.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = ""
    )]
    mu: Vec<String>,
    /// Reduction indices `i_1, ..., i_k`; induction undoes them last to first.
    #[arg(long, value_delimiter = ',', required = true)]
    seq: Vec<usize>,
    /// Label of `mu` when it is very even.
    #[arg(long)]
    label: Option<Label>,
    /// Label of the Levi when the result is very even.
    #[arg(long)]
    levi_label: Option<Label>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LeviArgs {
    #[arg(long, allow_hyphen_values = true)]
    eps: String,
    #[arg(long)]
    rank: usize,
    /// `so_{2r}` instead of `so_{2r+1}`; only for eps = +1.
    #[arg(long)]
    type_d: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// +1, -1 or both.
    #[arg(long, allow_hyphen_values = true, default_value = "both")]
    eps: String,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    /// Comma separated; defaults to every check.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<Check>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "ORBIT_SHEETS_JOBS")]
    jobs: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn parse_sign(s: &str) -> Result<Sign> {
    s.trim()
        .parse::<i64>()
        .ok()
        .and_then(Sign::from_int)
        .with_context(|| format!("eps must be +1 or -1, got {s:?}"))
}

fn orbit_from(eps: &str, parts: &[i64], label: Option<Label>) -> Result<NilpotentOrbit> {
    let p = Partition::new(parse_sign(eps)?, parts)?;
    Ok(NilpotentOrbit::new(p, label)?)
}

/// Writes to stdout; a closed pipe on the reading side is not an error.
fn emit(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit_json(v: &serde_json::Value) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn analyze(a: &OrbitArgs) -> Result<()> {
    let orbit = orbit_from(&a.eps, &a.parts, a.label)?;
    if a.json {
        emit_json(&report::analysis_json(&orbit))
    } else {
        emit(&report::analysis_text(&orbit))
    }
}

fn sheets(a: &OrbitArgs) -> Result<()> {
    let orbit = orbit_from(&a.eps, &a.parts, a.label)?;
    if a.json {
        emit_json(&report::sheets_json(&orbit))
    } else {
        emit(&report::sheets_text(&orbit))
    }
}

fn induce(a: &InduceArgs) -> Result<()> {
    let eps = parse_sign(&a.eps)?;
    let mu: Vec<i64> =
        a.mu.iter()
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .with_context(|| format!("bad part {s:?}"))
            })
            .collect::<Result<_>>()?;
    let residue = NilpotentOrbit::new(Partition::new(eps, &mu)?, a.label)?;
    if a.seq.contains(&0) {
        bail!("sequence indices start at 1");
    }
    let mut cur = residue.clone();
    for &i in a.seq.iter().rev() {
        cur = induce_step(&cur, i, Some(a.levi_label.unwrap_or(Label::I)))?;
    }
    if cur.label().is_some() && residue.partition().is_empty() && a.levi_label.is_none() {
        return Err(OrbitError::LabelRequired.into());
    }
    if a.json {
        emit_json(&report::orbit_json(&cur))
    } else {
        emit(&(report::orbit_text(&cur) + "\n"))
    }
}

fn levis(a: &LeviArgs) -> Result<()> {
    let eps = parse_sign(&a.eps)?;
    if a.type_d && eps == Sign::Minus {
        bail!("--type-d only applies to eps = +1");
    }
    let classes = levi_classes(eps, a.rank, a.type_d);
    if a.json {
        emit_json(&report::levis_json(&classes))
    } else {
        emit(&classes.iter().map(|c| format!("{c}\n")).collect::<String>())
    }
}

const EXIT_INPUT: u8 = 1;
const EXIT_VERIFY: u8 = 2;

fn verify_status(rep: &VerifyReport) -> u8 {
    if rep.passed() {
        0
    } else {
        EXIT_VERIFY
    }
}

fn run_verify(a: &VerifyArgs) -> Result<u8> {
    let signs = match a.eps.trim() {
        "both" => vec![Sign::Plus, Sign::Minus],
        s => vec![parse_sign(s)?],
    };
    if a.max_n < 1 {
        bail!("--max-n must be at least 1");
    }
    if a.jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    let checks = if a.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        a.checks.clone()
    };
    let config = VerifyConfig {
        signs,
        max_n: a.max_n,
        checks,
        seed: a.seed,
        jobs: a.jobs,
    };
    let rep = verify::run(&config)?;
    if a.json {
        emit_json(&report::verify_json(&rep))?;
    } else {
        emit(&report::verify_text(&rep))?;
    }
    Ok(verify_status(&rep))
}

fn dispatch(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Analyze(a) => analyze(a)?,
        Command::Induce(a) => induce(a)?,
        Command::Sheets(a) => sheets(a)?,
        Command::Levis(a) => levis(a)?,
        Command::Verify(a) => return Ok(ExitCode::from(run_verify(a)?)),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
