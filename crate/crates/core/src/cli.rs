//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 inconsistent outcome.

use std::fs;
use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::capacity::{self, CapacityQuery, Feasibility};
use crate::codebook::{build_codebook, AlphabetSize, StateVector};
use crate::engine::{self, Hypothesis, Polarity, SyndromeTable};
use crate::error::Error;
use crate::plan::{self, WeighingPlan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "anomaly-scheme",
    version,
    about = "Build, run and verify non-adaptive single-anomaly identification plans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a plan and print its placement table
    Plan(PlanArgs),
    /// Walk through a plan interactively, reading one outcome per analysis
    Solve(PlanSource),
    /// Inject a hypothesis, print the outcomes and the decoded verdict
    Simulate(SimulateArgs),
    /// Check a plan against every single-anomaly hypothesis
    Verify(PlanSource),
    /// Maximum number of elements for a given number of analyses
    Capacity(CapacityArgs),
    /// Decide feasibility by exhaustive search (small instances only)
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    /// Number of elements to label 1..=n
    #[arg(long)]
    pub elements: usize,
    /// Number of analyses; defaults to the smallest that fits
    #[arg(long)]
    pub analyses: Option<usize>,
    /// Outcome states per analysis (odd, >= 3)
    #[arg(long, default_value_t = 3)]
    pub states: u32,
    /// Require every analysis to sum to zero (equal pans)
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub balanced: bool,
    /// Write the plan file here
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Title stored in the plan file
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct PlanSource {
    /// Plan file to load
    #[arg(long)]
    pub plan: Option<PathBuf>,
    /// Use the built-in 12-coin plan
    #[arg(long = "paper-12")]
    pub paper_12: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolarityArg {
    #[value(alias = "positive", alias = "heavier")]
    Heavy,
    #[value(alias = "negative", alias = "lighter")]
    Light,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: PlanSource,
    /// Label of the anomalous element
    #[arg(long, requires = "polarity", conflicts_with = "none")]
    pub anomaly: Option<usize>,
    #[arg(long, value_enum, requires = "anomaly")]
    pub polarity: Option<PolarityArg>,
    /// Simulate a run with no anomaly
    #[arg(long, required_unless_present = "anomaly")]
    pub none: bool,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[arg(long)]
    pub analyses: usize,
    #[arg(long, default_value_t = 3)]
    pub states: u32,
    /// Also iterate both recurrences and count admissible pairs
    #[arg(long)]
    pub cross_check: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub elements: usize,
    #[arg(long)]
    pub analyses: usize,
    #[arg(long, default_value_t = 3)]
    pub states: u32,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub balanced: bool,
}

/// Standard streams plus whether input comes from a person at a terminal.
pub struct Io<'a> {
    pub input: &'a mut dyn BufRead,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub interactive: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { io.err } else { io.out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, io) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(io.err, "error: {message}");
            code
        }
    }
}

/// Runs against the process's real stdin/stdout/stderr.
pub fn main_with_std() -> i32 {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut input = stdin.lock();
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    let code = run(
        std::env::args_os(),
        &mut Io {
            input: &mut input,
            out: &mut out,
            err: &mut err,
            interactive,
        },
    );
    let _ = out.flush();
    code
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InconsistentOutcome(_) | Error::AmbiguousOutcome { .. } => EXIT_INCONSISTENT,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        usage(e.to_string())
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

fn execute(command: Command, io: &mut Io<'_>) -> CmdResult {
    match command {
        Command::Plan(args) => cmd_plan(args, io),
        Command::Solve(source) => cmd_solve(&source, io),
        Command::Simulate(args) => cmd_simulate(args, io),
        Command::Verify(source) => cmd_verify(&source, io),
        Command::Capacity(args) => cmd_capacity(args, io),
        Command::Oracle(args) => cmd_oracle(args, io),
    }
}

fn read_file(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_plan(source: &PlanSource) -> Result<WeighingPlan, Failure> {
    match &source.plan {
        Some(path) => Ok(plan::deserialize_plan(&read_file(path)?)?),
        None => Ok(plan::paper_plan_12()),
    }
}

fn smallest_analyses(n: usize, s: AlphabetSize) -> Result<usize, Failure> {
    let mut k = 1;
    loop {
        let cap = capacity::capacity_closed_form(&CapacityQuery::new(s, k)?)?;
        if cap >= n as u64 {
            return Ok(k);
        }
        k += 1;
    }
}

fn cmd_plan(args: PlanArgs, io: &mut Io<'_>) -> CmdResult {
    let s = AlphabetSize::new(args.states)?;
    if args.elements == 0 {
        return Err(usage("--elements must be at least 1"));
    }
    let k = match args.analyses {
        Some(k) => k,
        None => smallest_analyses(args.elements, s)?,
    };
    let cb = build_codebook(args.elements, k, s, args.balanced)?;
    let plan = plan::plan_from_codebook(&cb).with_title(args.title);
    if let Some(path) = &args.out {
        fs::write(path, plan::serialize_plan(&plan))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    io.out.write_all(plan::render_plan(&plan).as_bytes())?;
    Ok(EXIT_OK)
}

fn parse_token(token: &str, s: AlphabetSize) -> Option<i32> {
    if s == AlphabetSize::THREE {
        match token.to_ascii_uppercase().as_str() {
            "L" => return Some(-1),
            "B" => return Some(0),
            "R" => return Some(1),
            _ => {}
        }
    }
    let value: i32 = token.strip_prefix('+').unwrap_or(token).parse().ok()?;
    s.contains(value).then_some(value)
}

fn cmd_solve(source: &PlanSource, io: &mut Io<'_>) -> CmdResult {
    let plan = load_plan(source)?;
    let s = plan.states();
    let hint = if s == AlphabetSize::THREE {
        "L = left heavier, B = balance, R = right heavier".to_string()
    } else {
        let m = s.max_magnitude();
        format!("an integer from -{m} to {m}")
    };

    if let Some(title) = plan.title() {
        writeln!(io.out, "{title}")?;
    }
    io.out.write_all(plan::render_plan(&plan).as_bytes())?;
    writeln!(io.out, "Enter one outcome per analysis ({hint}).")?;

    let mut states = Vec::with_capacity(plan.analyses().len());
    for analysis in plan.analyses() {
        loop {
            write!(io.out, "Outcome of analysis {}: ", analysis.index())?;
            io.out.flush()?;
            let mut line = String::new();
            if io.input.read_line(&mut line)? == 0 {
                writeln!(io.out)?;
                return Err(usage("input ended before every outcome was recorded"));
            }
            let token = line.trim();
            if !io.interactive {
                writeln!(io.out, "{token}")?;
            }
            match parse_token(token, s) {
                Some(v) => {
                    states.push(v);
                    break;
                }
                None if io.interactive => {
                    writeln!(io.out, "Unrecognized outcome {token:?}; expected {hint}.")?;
                }
                None => {
                    return Err(usage(format!(
                        "invalid outcome {token:?} for analysis {}; expected {hint}",
                        analysis.index()
                    )))
                }
            }
        }
    }

    let outcome = StateVector::new(states);
    match SyndromeTable::new(&plan).decode(&outcome) {
        Ok(verdict) => {
            writeln!(io.out, "{}", verdict.describe(s))?;
            Ok(EXIT_OK)
        }
        Err(Error::InconsistentOutcome(_)) => {
            writeln!(
                io.out,
                "Inconsistent outcome {outcome}: no single anomaly explains it"
            )?;
            Ok(EXIT_INCONSISTENT)
        }
        Err(e @ Error::AmbiguousOutcome { .. }) => {
            writeln!(io.out, "Inconsistent outcome {outcome}: {e}")?;
            Ok(EXIT_INCONSISTENT)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_simulate(args: SimulateArgs, io: &mut Io<'_>) -> CmdResult {
    let plan = load_plan(&args.source)?;
    let hypothesis = match (args.anomaly, args.polarity) {
        (Some(element), Some(p)) => Hypothesis::anomaly(
            element,
            match p {
                PolarityArg::Heavy => Polarity::Positive,
                PolarityArg::Light => Polarity::Negative,
            },
        ),
        _ => Hypothesis::NoAnomaly,
    };
    let outcome = engine::simulate(&plan, &hypothesis)?;
    writeln!(io.out, "Outcome: {outcome}")?;
    match engine::decode(&plan, &outcome) {
        Ok(verdict) => {
            writeln!(io.out, "{}", verdict.describe(plan.states()))?;
            Ok(if verdict == hypothesis {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            })
        }
        Err(e) => {
            writeln!(io.out, "{e}")?;
            Ok(EXIT_VERIFICATION_FAILED)
        }
    }
}

fn cmd_verify(source: &PlanSource, io: &mut Io<'_>) -> CmdResult {
    let plan = match &source.plan {
        Some(path) => plan::deserialize_plan_unchecked(&read_file(path)?)?,
        None => plan::paper_plan_12(),
    };
    let report = engine::verify_exhaustive(&plan);
    writeln!(io.out, "{report}")?;
    for failure in &report.failures {
        writeln!(io.out, "  FAIL {failure}")?;
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    })
}

fn cmd_capacity(args: CapacityArgs, io: &mut Io<'_>) -> CmdResult {
    let q = CapacityQuery::new(AlphabetSize::new(args.states)?, args.analyses)?;
    if !args.cross_check {
        writeln!(io.out, "{}", capacity::capacity_closed_form(&q)?)?;
        return Ok(EXIT_OK);
    }
    let r = capacity::capacity_cross_check(&q)?;
    writeln!(io.out, "states: {}", q.states)?;
    writeln!(io.out, "analyses: {}", q.analyses)?;
    writeln!(io.out, "closed form: {}", r.closed_form)?;
    writeln!(io.out, "additive recurrence: {}", r.recurrence_additive)?;
    writeln!(
        io.out,
        "multiplicative recurrence: {}",
        r.recurrence_multiplicative
    )?;
    match r.enumerated {
        Some(n) => writeln!(io.out, "enumerated: {n}")?,
        None => writeln!(io.out, "enumerated: skipped")?,
    }
    writeln!(
        io.out,
        "consistent: {}",
        if r.consistent() { "yes" } else { "no" }
    )?;
    Ok(if r.consistent() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    })
}

fn cmd_oracle(args: OracleArgs, io: &mut Io<'_>) -> CmdResult {
    let s = AlphabetSize::new(args.states)?;
    match capacity::feasibility_oracle(s, args.analyses, args.elements, args.balanced)? {
        Feasibility::Feasible(cb) => {
            writeln!(io.out, "feasible")?;
            io.out
                .write_all(plan::render_plan(&plan::plan_from_codebook(&cb)).as_bytes())?;
        }
        Feasibility::Infeasible => writeln!(io.out, "infeasible")?,
    }
    Ok(EXIT_OK)
}
