//! The `knotword` command line. [`run`] takes the arguments and output
//! streams and returns the process exit code: 0 for a positive verdict, 1 for
//! a negative one, 2 for usage, input or I/O errors.

mod enumerate;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::diagram::{read_presentation, SurfacePresentation};
use crate::word::{
    brute_force_oracle, format_letters, parse_letters, CyclicWord, Decider, PartialWord,
    ReductionTrace, Target,
};

pub const VERSION_LINE: &str = concat!("knotword ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Parser)]
#[command(
    name = "knotword",
    version,
    about = "Cyclic-word reduction and surface checks for link diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide reducibility of a word and print a replayable trace.
    Reduce(ReduceArgs),
    /// Check normal position and the virtual-word condition of a presentation.
    Check(CheckArgs),
    /// Enumerate pullback-graph configurations with a given number of R edges.
    Enumerate(EnumerateArgs),
    /// Decide a short word with the exhaustive reference search.
    Oracle(OracleArgs),
    /// Build the pullback graph of a closed presentation and report its
    /// Euler characteristic and bounds.
    Euler(EulerArgs),
}

#[derive(Debug, Clone, Copy, Args)]
#[group(multiple = false)]
pub struct Shape {
    /// Treat the word as cyclic (the default).
    #[arg(long)]
    pub cyclic: bool,
    /// Treat the word as a partial (linear) word; the target is a single R.
    #[arg(long)]
    pub partial: bool,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub shape: Shape,
    /// Word over S, R, P<i>, D<l>.
    #[arg(required_unless_present = "replay", conflicts_with = "replay")]
    pub word: Option<String>,
    /// Re-apply a stored trace and verify every step.
    #[arg(long, value_name = "TRACE")]
    pub replay: Option<PathBuf>,
    /// Write the trace of a successful reduction as JSON.
    #[arg(long, value_name = "FILE", conflicts_with = "replay")]
    pub trace_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    /// Write one DOT file per curve with its virtual diagram.
    #[arg(long, value_name = "DIR")]
    pub emit_virtual: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Number of R-marked edges (even, 4 to 12).
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub genus_max: Option<u32>,
    /// Write DOT and .kw files, a summary and a manifest here.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads for the search.
    #[arg(long, env = "KNOTWORD_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub shape: Shape,
    pub word: String,
    #[arg(long, default_value_t = crate::word::oracle::DEFAULT_BOUND)]
    pub bound: usize,
}

#[derive(Debug, Args)]
pub struct EulerArgs {
    pub file: PathBuf,
}

/// On-disk form of a stored reduction trace.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TraceFile {
    Cyclic { trace: ReductionTrace<CyclicWord> },
    Partial { trace: ReductionTrace<PartialWord> },
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn dispatch(command: &Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    writeln!(out, "{VERSION_LINE}")?;
    match command {
        Command::Reduce(a) => cmd_reduce(a, out),
        Command::Check(a) => report::cmd_check(a, out),
        Command::Enumerate(a) => enumerate::cmd_enumerate(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Euler(a) => report::cmd_euler(a, out),
    }
}

pub(crate) fn load(path: &Path) -> anyhow::Result<SurfacePresentation> {
    read_presentation(path).with_context(|| format!("reading {}", path.display()))
}

fn verdict_name(partial: bool, reducible: bool) -> &'static str {
    match (partial, reducible) {
        (false, true) => "omega-reducible",
        (false, false) => "omega-irreducible",
        (true, true) => "R-omega-reducible",
        (true, false) => "R-omega-irreducible",
    }
}

fn print_trace<W: std::fmt::Display>(
    out: &mut dyn Write,
    trace: &ReductionTrace<W>,
) -> std::io::Result<()> {
    writeln!(out, "trace:")?;
    writeln!(out, "  0  {}", trace.initial)?;
    for (k, step) in trace.steps.iter().enumerate() {
        writeln!(
            out,
            "  {}  {} at {}+{} -> {}",
            k + 1,
            step.rule,
            step.site.start,
            step.site.len,
            step.after
        )?;
    }
    Ok(())
}

fn cmd_reduce(a: &ReduceArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    if let Some(path) = &a.replay {
        return replay(path, out);
    }
    let text = a.word.as_deref().unwrap_or_default();
    let letters = parse_letters(text)?;
    let mut decider = Decider::new();
    let (reducible, file) = if a.shape.partial {
        let word = PartialWord::new(letters);
        writeln!(out, "word: {word} (partial)")?;
        let d = decider.r_omega(&word)?;
        (
            d.reducible,
            d.trace.map(|trace| TraceFile::Partial { trace }),
        )
    } else {
        let word = CyclicWord::new(letters);
        writeln!(out, "word: {word} (cyclic)")?;
        let d = decider.omega(&word);
        (
            d.reducible,
            d.trace.map(|trace| TraceFile::Cyclic { trace }),
        )
    };
    writeln!(out, "verdict: {}", verdict_name(a.shape.partial, reducible))?;
    match &file {
        Some(TraceFile::Cyclic { trace }) => print_trace(out, trace)?,
        Some(TraceFile::Partial { trace }) => print_trace(out, trace)?,
        None => {}
    }
    if let (Some(path), Some(file)) = (&a.trace_out, &file) {
        let json = serde_json::to_string_pretty(file)? + "\n";
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
        writeln!(out, "trace written to {}", path.display())?;
    }
    Ok(if reducible { 0 } else { 1 })
}

fn replay(path: &Path, out: &mut dyn Write) -> anyhow::Result<i32> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: TraceFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let (steps, reached, kind) = match &file {
        TraceFile::Cyclic { trace } => {
            let end = trace.replay()?;
            writeln!(out, "word: {} (cyclic)", trace.initial)?;
            (trace.steps.len(), end.is_empty(), "omega-reducible")
        }
        TraceFile::Partial { trace } => {
            let end = trace.replay()?;
            writeln!(out, "word: {} (partial)", trace.initial)?;
            (
                trace.steps.len(),
                format_letters(end.letters()) == "R",
                "R-omega-reducible",
            )
        }
    };
    writeln!(out, "replay: {steps} steps verified")?;
    if reached {
        writeln!(out, "verdict: {kind}")?;
        Ok(0)
    } else {
        writeln!(out, "verdict: trace ends before the target word")?;
        Ok(1)
    }
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let letters = parse_letters(&a.word)?;
    let partial = a.shape.partial;
    let target = if partial {
        Target::SingleR
    } else {
        Target::Empty
    };
    let oracle = brute_force_oracle(&letters, target, a.bound)?;
    let decider = if partial {
        Decider::new()
            .r_omega(&PartialWord::new(letters.clone()))?
            .reducible
    } else {
        Decider::new().is_reducible(&CyclicWord::new(letters.clone()))
    };
    writeln!(
        out,
        "word: {} ({})",
        format_letters(&letters),
        if partial { "partial" } else { "cyclic" }
    )?;
    writeln!(out, "oracle: {}", verdict_name(partial, oracle))?;
    writeln!(out, "decider: {}", verdict_name(partial, decider))?;
    if oracle != decider {
        bail!(
            "oracle and decider disagree on {}",
            format_letters(&letters)
        );
    }
    Ok(if oracle { 0 } else { 1 })
}
