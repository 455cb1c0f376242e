//! `procore` command-line front end.
//!
//! Exit status: 0 on success, 1 when a check fails or a size limit is hit,
//! 2 on usage errors. Failures print one line on stderr.

mod commands;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::CliError;

#[derive(Parser)]
#[command(name = "procore", version, about = "Spin-chain processor core simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Chain selection shared by most subcommands.
#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct ChainSource {
    /// Christandl chain with N sites.
    #[arg(long, value_name = "N")]
    christandl: Option<usize>,
    /// Coupling profile JSON file.
    #[arg(long, value_name = "FILE")]
    profile: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a coupling profile and certify mirror inversion.
    Design(DesignArgs),
    /// Validate a profile and check the mirror period against dense evolution.
    Verify(VerifyArgs),
    /// Evolve a state under the chain Hamiltonian.
    Evolve(EvolveArgs),
    /// Build a controlled gate program.
    Gate(GateArgs),
    /// Build the quantum Fourier transform program.
    Qft(QftArgs),
    /// Pauli-string Hamiltonian simulation and Trotter sweeps.
    Hamsim(HamsimArgs),
    /// Core versus fully-switched cost tables.
    Cost(CostArgs),
    /// Timing-error robustness fit.
    Robustness(RobustnessArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct DesignSource {
    #[arg(long, value_name = "N")]
    christandl: Option<usize>,
    /// Single-excitation spectrum JSON file.
    #[arg(long, value_name = "FILE")]
    spectrum: Option<PathBuf>,
}

#[derive(Args)]
pub struct DesignArgs {
    #[command(flatten)]
    source: DesignSource,
    #[arg(long, default_value_t = std::f64::consts::PI)]
    tau: f64,
    #[arg(long, default_value = "profile.json")]
    out: PathBuf,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    chain: ChainSource,
    #[arg(long, default_value_t = std::f64::consts::PI)]
    tau: f64,
    /// Entrywise tolerance for the dense comparison.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Skip the dense propagator comparison (allows long chains).
    #[arg(long)]
    no_dense: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct InitialState {
    /// Basis configuration over the chain sites, e.g. 1000.
    #[arg(long, value_name = "BITS")]
    state: Option<String>,
    /// State JSON file.
    #[arg(long, value_name = "FILE")]
    state_file: Option<PathBuf>,
    /// Random state from this seed.
    #[arg(long, value_name = "SEED")]
    random: Option<u64>,
}

#[derive(Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    chain: ChainSource,
    #[command(flatten)]
    initial: InitialState,
    #[arg(long)]
    time: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GateKind {
    Z,
    W,
    V,
    Cat,
}

#[derive(Args)]
pub struct GateArgs {
    #[command(flatten)]
    chain: ChainSource,
    #[arg(long, default_value_t = std::f64::consts::PI)]
    tau: f64,
    #[arg(long, value_enum)]
    kind: GateKind,
    /// 1-based control site.
    #[arg(long, default_value_t = 1)]
    control: usize,
    /// Target on every other site: i, x, y, z, h, s, t or p(angle).
    #[arg(long, conflicts_with = "targets")]
    target: Option<String>,
    /// Comma-separated per-site targets, `-` for none.
    #[arg(long)]
    targets: Option<String>,
    /// Comma-separated theta:phi reflection axes for V, one per site.
    #[arg(long)]
    angles: Option<String>,
    /// Skip the phase correction of Z on chains with nonzero phi_N.
    #[arg(long)]
    uncorrected: bool,
    /// Compare the program against the directly assembled gate.
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct QftArgs {
    #[arg(long)]
    n: usize,
    /// Append the bit-reversal network.
    #[arg(long)]
    finish: bool,
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Variant {
    Ancilla,
    Direct,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct HamsimMode {
    /// Single Pauli string, e.g. zzx.
    #[arg(long)]
    mask: Option<String>,
    /// Trotter sweep over comma-separated mask:coefficient terms.
    #[arg(long)]
    terms: Option<String>,
}

#[derive(Args)]
pub struct HamsimArgs {
    #[command(flatten)]
    mode: HamsimMode,
    #[arg(long, default_value_t = 1.0)]
    coefficient: f64,
    #[arg(long, requires = "mask")]
    dt: Option<f64>,
    #[arg(long, value_enum, default_value = "ancilla")]
    variant: Variant,
    /// Total time of the Trotter sweep.
    #[arg(long, default_value_t = 1.0)]
    time: f64,
    /// Comma-separated Trotter step sizes.
    #[arg(long, default_value = "0.1,0.05,0.025,0.0125,0.01")]
    dts: String,
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
pub struct CostMode {
    /// QFT sweep (the default).
    #[arg(long)]
    qft: bool,
    /// Concatenation table over a level range, e.g. 0..3.
    #[arg(long, value_name = "LEVELS")]
    concat: Option<String>,
    /// Census of a program JSON file.
    #[arg(long, value_name = "FILE")]
    program: Option<PathBuf>,
}

#[derive(Args)]
pub struct CostArgs {
    #[command(flatten)]
    mode: CostMode,
    #[arg(long, default_value = "2..12")]
    n_range: String,
    #[arg(long, default_value_t = std::f64::consts::PI)]
    tau: f64,
    /// Require linear core events and a quadratic switched fit.
    #[arg(long)]
    check: bool,
    /// Largest accepted relative residual of the quadratic fit.
    #[arg(long, default_value_t = 0.1)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RobustnessArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "1e-1,1e-2,1e-3")]
    dts: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Basis configuration instead of a random state.
    #[arg(long, value_name = "BITS")]
    state: Option<String>,
    /// Coupling scale; the period shrinks accordingly.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Require the fitted order within `tol` of 2.
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = 0.1)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Design(a) => commands::design(a),
        Command::Verify(a) => commands::verify(a),
        Command::Evolve(a) => commands::evolve(a),
        Command::Gate(a) => commands::gate(a),
        Command::Qft(a) => commands::qft(a),
        Command::Hamsim(a) => commands::hamsim(a),
        Command::Cost(a) => commands::cost(a),
        Command::Robustness(a) => commands::robustness(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return output::fail(&CliError::Usage(output::first_line(&e.render().to_string()))),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => output::fail(&e),
    }
}
