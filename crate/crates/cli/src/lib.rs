//! Library behind the `coopet` binary.
//!
//! Exit statuses: 0 on success, 1 when a computation or axiom check fails,
//! 2 for invalid input.

mod commands;
pub mod document;
pub mod error;
pub mod families;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use document::{parse_game, serialize_game, Layout};
pub use error::{CliError, CliResult};
pub use output::{render, Format, Report};

/// Default largest game the `table` command accepts.
pub const DEFAULT_TABLE_CAP: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "coopet", version, about = "Coopetition indices for cooperative TU-games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Power, coopetition and absolute coopetition of selected coalitions.
    Compute(ComputeArgs),
    /// Indices for every non-empty coalition, in bitmask order.
    Table(TableArgs),
    /// Attitude of a coalition towards one or all opponents.
    Attitude(AttitudeArgs),
    /// Contributing-coalition classification and bound attainment.
    Classify(ClassifyArgs),
    /// Non-zero Harsanyi dividends.
    Mobius(MobiusArgs),
    /// Axiom checks and independence matrices.
    CheckAxioms(AxiomArgs),
    /// Writes a game document.
    Generate(GenerateArgs),
    /// Checks a game document and optional family files.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct GameInput {
    /// Game document (`-` reads standard input).
    #[arg(long, value_name = "FILE")]
    pub game: PathBuf,
    /// Reject sparse documents that omit coalitions.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// banzhaf, so, su (default) or perm-banzhaf.
    #[arg(long)]
    pub preset: Option<String>,
    /// uniform, perm or custom:FILE; overrides the preset.
    #[arg(long)]
    pub internal: Option<String>,
    /// uniform, perm or custom:FILE; overrides the preset.
    #[arg(long)]
    pub external: Option<String>,
}

#[derive(Debug, Args)]
pub struct Selector {
    /// Comma-separated labels, e.g. "a,c"; repeatable.
    #[arg(long, value_name = "LABELS")]
    pub coalition: Vec<String>,
    /// Every non-empty coalition.
    #[arg(long)]
    pub all: bool,
    /// Every coalition of this size.
    #[arg(long, value_name = "K")]
    pub size: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub input: GameInput,
    #[command(flatten)]
    pub families: FamilyArgs,
    #[command(flatten)]
    pub selector: Selector,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub input: GameInput,
    #[command(flatten)]
    pub families: FamilyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Largest accepted player count.
    #[arg(long, env = "COOPET_MAX_N", default_value_t = DEFAULT_TABLE_CAP)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct AttitudeArgs {
    #[command(flatten)]
    pub input: GameInput,
    /// The coalition S.
    #[arg(long, value_name = "LABELS")]
    pub coalition: String,
    /// A single opponent T; all T ⊆ N∖S when omitted. Use "" for ∅.
    #[arg(long, value_name = "LABELS")]
    pub opponent: Option<String>,
    #[command(flatten)]
    pub families: FamilyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: GameInput,
    #[command(flatten)]
    pub selector: Selector,
    #[command(flatten)]
    pub families: FamilyArgs,
    /// One row per opponent instead of one per coalition.
    #[arg(long)]
    pub detail: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MobiusArgs {
    #[command(flatten)]
    pub input: GameInput,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AxiomArgs {
    #[arg(long, default_value = "uniform")]
    pub variant: String,
    /// Check one index (su, so, phi, or a counterexample name such as
    /// L-uniform, SB, INPCU, ENPN-perm) instead of the whole matrix.
    #[arg(long)]
    pub index: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random game pairs per player count for linearity.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameKind {
    Unanimity,
    WeightedMajority,
    RandomMonotone,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: GameKind,
    /// Number of players (unanimity, random-monotone).
    #[arg(long)]
    pub n: Option<usize>,
    /// Carrier of a unanimity game, as player numbers "1,2".
    #[arg(long)]
    pub carrier: Option<String>,
    #[arg(long)]
    pub quota: Option<String>,
    /// Player weights "1,1,1".
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write only non-zero worths.
    #[arg(long)]
    pub sparse: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub input: GameInput,
    /// Internal family to validate on the game's players.
    #[arg(long)]
    pub internal: Option<String>,
    /// External family to validate on the game's players.
    #[arg(long)]
    pub external: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let outcome = commands::dispatch(cli.command)?;
    out.write_all(outcome.text.as_bytes())?;
    match outcome.failure {
        None => Ok(()),
        Some(reason) => Err(CliError::Computation(reason)),
    }
}

/// Parses `args` (including the program name), runs, and returns the exit status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
