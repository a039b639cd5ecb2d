use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod analyze;
mod build;
mod crossover;
mod protocol;
mod simulate;

use protocol::Protocol;

#[derive(Parser)]
#[command(name = "adaptq", version, about = "Adaptive vs non-adaptive state preparation under a worst-case error model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a circuit and write it in text form.
    Build(BuildArgs),
    /// Closed-form and layer-counted exponents, probabilities, and runtimes.
    Analyze(AnalyzeArgs),
    /// Crossover thresholds between adaptive and non-adaptive preparation.
    Crossover(CrossoverArgs),
    /// Ideal or Monte Carlo worst-case-model simulation.
    Simulate(SimulateArgs),
}

#[derive(Args, Clone)]
pub struct CircuitArgs {
    /// Number of data qubits (arity for fanout/parity/mu/or-reduction).
    #[arg(long)]
    pub n: usize,
    /// GHZ variant: all, linear, adaptive, hybrid-all, hybrid-linear.
    #[arg(long)]
    pub variant: Option<String>,
    /// Block count for hybrid GHZ; index k for mu.
    #[arg(long)]
    pub k: Option<usize>,
    /// Replace controlled rotations by CNOTs and generic single-qubit gates.
    #[arg(long)]
    pub decompose: bool,
    /// Cap on CNOTs per two-qubit layer.
    #[arg(long)]
    pub max_parallel_2q: Option<usize>,
}

#[derive(Args)]
pub struct BuildArgs {
    pub protocol: Protocol,
    #[command(flatten)]
    pub circuit: CircuitArgs,
    /// Output file; the circuit goes to stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Print the layer schedule.
    #[arg(long)]
    pub schedule: bool,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// ghz, w, fanout, or parity.
    pub protocol: Protocol,
    #[arg(long)]
    pub n: usize,
    /// Hybrid block count; adds both hybrid variants to a GHZ analysis.
    #[arg(long)]
    pub k: Option<usize>,
    /// Device calibration JSON.
    #[arg(long)]
    pub cal: PathBuf,
    /// Use p_s = p_is = 1, p_m = p_d, p_im = p_ic = p_id.
    #[arg(long)]
    pub assume_easy: bool,
    /// Duration of a classical layer in ns (defaults to the measurement time).
    #[arg(long)]
    pub classical_ns: Option<f64>,
    #[arg(long)]
    pub max_parallel_2q: Option<usize>,
    /// Write the table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Print the layer schedule of every analysed circuit.
    #[arg(long)]
    pub trace: bool,
    /// Report closed-form/count mismatches without failing.
    #[arg(long)]
    pub report_only: bool,
}

#[derive(Args)]
pub struct CrossoverArgs {
    /// all, linear, hybrid-all, hybrid-linear, or w.
    pub comparison: String,
    /// Single n; otherwise a table over --from..=--to.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub cal: Option<PathBuf>,
    /// Explicit two-qubit gate success probability.
    #[arg(long, requires = "pid")]
    pub pd: Option<f64>,
    /// Explicit two-qubit idle success probability.
    #[arg(long, requires = "pd")]
    pub pid: Option<f64>,
    #[arg(long)]
    pub assume_easy: bool,
    #[arg(long, default_value_t = 2)]
    pub from: usize,
    #[arg(long, default_value_t = 64)]
    pub to: usize,
    /// Largest n searched for the minimum winning n.
    #[arg(long, default_value_t = 100_000)]
    pub max_n: usize,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// ghz, w, w-approx, fanout, or parity.
    pub protocol: Protocol,
    #[command(flatten)]
    pub circuit: CircuitArgs,
    /// Device calibration JSON; noiseless without it.
    #[arg(long)]
    pub cal: Option<PathBuf>,
    /// Force a noiseless run.
    #[arg(long)]
    pub ideal: bool,
    #[arg(long, default_value_t = 4096)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Basis input for fanout/parity as a bitstring over the data qubits.
    #[arg(long)]
    pub input: Option<String>,
    /// Histogram CSV output.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Histogram by Hamming weight instead of bitstring.
    #[arg(long)]
    pub hamming: bool,
    /// SVG bar chart output.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Per-shot error event log as JSON.
    #[arg(long)]
    pub events: Option<PathBuf>,
    /// Statevector cap on unmeasured qubits.
    #[arg(long, default_value_t = 24)]
    pub qubit_cap: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build(a) => build::run(&a),
        Command::Analyze(a) => analyze::run(&a),
        Command::Crossover(a) => crossover::run(&a),
        Command::Simulate(a) => simulate::run(&a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
