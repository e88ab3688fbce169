//! The `egal` command line: compute values, verify axioms, emit example and
//! random game files.

mod render;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use egalitarian_core::axioms::random::{random_level_game, GeneratorConfig};
use egalitarian_core::axioms::{AxiomId, DEFAULT_TOLERANCE};
use egalitarian_core::format::{example, GameFile, EXAMPLES};
use egalitarian_core::{compute, compute_exact, ValueId};

pub use render::{num, ResultTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_AXIOM_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "egal", version, about = "Egalitarian values for games with level structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute values on a game file.
    Compute(ComputeArgs),
    /// Check axioms on a game file, on a random campaign, or by counterexample search.
    Verify(VerifyArgs),
    /// Write a bundled example game file.
    Example {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a random game file.
    Random(RandomArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Game file; `-` or absent reads standard input.
    #[arg(long)]
    game: Option<PathBuf>,
    /// Comma-separated value names, or `all`.
    #[arg(long, alias = "value", default_value = "all")]
    values: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print exact fractions when every worth is a short decimal.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Args)]
pub(crate) struct VerifyArgs {
    #[arg(long)]
    pub game: Option<PathBuf>,
    /// Comma-separated value names, or `all`. Defaults to the four level values.
    #[arg(long, alias = "value")]
    pub values: Option<String>,
    /// Comma-separated axiom names, or `all`. Defaults to each value's characterization.
    #[arg(long, alias = "axiom")]
    pub axioms: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Games in a campaign (default 1000) or seeds in a search (default 10000).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Run a seeded campaign instead of reading a game file.
    #[arg(long, conflicts_with_all = ["game", "search"])]
    pub random: bool,
    /// Search seeds for a game violating each requested pair.
    #[arg(long, conflicts_with = "game")]
    pub search: bool,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
    worth_min: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    worth_max: i64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_INVALID
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let outcome = match cli.command {
        Command::Compute(a) => cmd_compute(&a, stdin, stdout, stderr),
        Command::Verify(a) => verify::cmd_verify(&a, stdin, stdout),
        Command::Example { name, output } => cmd_example(&name, output.as_deref(), stdout),
        Command::Random(a) => cmd_random(&a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_INVALID
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe))
}

pub(crate) fn load_game(path: Option<&Path>, stdin: &mut dyn Read) -> Result<GameFile> {
    match path {
        Some(p) if p != Path::new("-") => GameFile::load(p).with_context(|| format!("loading {}", p.display())),
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).context("reading standard input")?;
            GameFile::parse(&text).context("parsing standard input")
        }
    }
}

pub(crate) fn parse_values(list: &str) -> Result<Vec<ValueId>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(ValueId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let v: ValueId = name.parse().map_err(|_| anyhow!("unknown value `{name}`"))?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    if out.is_empty() {
        bail!("no values requested");
    }
    Ok(out)
}

pub(crate) fn parse_axioms(list: &str) -> Result<Vec<AxiomId>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(AxiomId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let a: AxiomId = name.parse().map_err(|_| anyhow!("unknown axiom `{name}`"))?;
        if !out.contains(&a) {
            out.push(a);
        }
    }
    if out.is_empty() {
        bail!("no axioms requested");
    }
    Ok(out)
}

fn cmd_compute(args: &ComputeArgs, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let file = load_game(args.game.as_deref(), stdin)?;
    let values = parse_values(&args.values)?;
    let labels = &file.labels;
    let mut table = ResultTable::new(labels.clone());
    for &v in &values {
        let computed =
            if args.exact { compute_exact(v, &file.game).map_err(|e| anyhow!(e.display_with(labels)))? } else { None };
        match computed {
            Some(exact) => table.push_exact(v, &exact),
            None => {
                if args.exact {
                    writeln!(err, "warning: worths are not short decimals; {v} printed in floating point")?;
                }
                let a = compute(v, &file.game).map_err(|e| anyhow!(e.display_with(labels)))?;
                table.push_float(v, a.payoffs());
            }
        }
    }
    match args.format {
        Format::Text => write!(out, "{}", table.to_text())?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table)?)?,
    }
    Ok(EXIT_OK)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        _ => Ok(out.write_all(text.as_bytes())?),
    }
}

fn cmd_example(name: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let text = example(name).ok_or_else(|| anyhow!("unknown example `{name}`; available: {}", EXAMPLES.join(", ")))?;
    emit(text, path, out)?;
    Ok(EXIT_OK)
}

pub(crate) fn numbered_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn cmd_random(args: &RandomArgs, out: &mut dyn Write) -> Result<i32> {
    if args.n_max < 2 || args.n_max > 20 {
        bail!("--n-max must be between 2 and 20");
    }
    if args.worth_min > args.worth_max {
        bail!("--worth-min exceeds --worth-max");
    }
    let cfg = GeneratorConfig::new(args.n_max, args.k_max, args.worth_min..=args.worth_max);
    let game = random_level_game(args.seed, &cfg);
    let file = GameFile::new(numbered_labels(game.n()), game);
    emit(&file.to_toml_string(), args.output.as_deref(), out)?;
    Ok(EXIT_OK)
}
