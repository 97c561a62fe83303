use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::angle::{parse_angle, parse_axis, parse_thetas, Axis, Thetas};

#[derive(Debug, Parser)]
#[command(
    name = "ges",
    version,
    about = "Heralded four-qubit genuine entanglement: simulation and checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write data to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Amplitudes and coefficients at or below this magnitude are not listed
    #[arg(long, global = true, default_value = "1e-12", value_parser = parse_tol)]
    pub tol: f64,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
        _ => Err(format!("tolerance must be a finite non-negative number, got `{s}`")),
    }
}

fn parse_eta(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(e) if (0.0..=1.0).contains(&e) => Ok(e),
        _ => Err(format!("detector efficiency must lie in [0, 1], got `{s}`")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the circuit and condition on detector outcomes
    Simulate(SimulateArgs),
    /// Tabulate branch weights and entanglement over a parameter grid
    Sweep(SweepArgs),
    /// List, verify or regenerate the sixteen-state basis
    Basis(BasisArgs),
    /// Expand a four-qubit state in the basis
    Decompose(DecomposeArgs),
    /// Run the invariant suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutcomeArg {
    /// D1 clicks (photon in the upper mode)
    D1,
    /// D2 clicks (photon in the lower mode)
    D2,
    None,
    Double,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Atom-photon phase
    #[arg(long, default_value = "pi/2", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi: f64,
    /// Preparation angle for all atoms, or four comma-separated angles
    #[arg(long, default_value = "pi/4", value_parser = parse_thetas, allow_hyphen_values = true)]
    pub theta: Thetas,
    /// Detector efficiency
    #[arg(long, default_value_t = 1.0, value_parser = parse_eta)]
    pub eta: f64,
    /// Report only this outcome
    #[arg(long, value_enum)]
    pub outcome: Option<OutcomeArg>,
    /// Combine both click branches, correcting the D1 branch with σʸ on qubit 4
    #[arg(long, conflicts_with = "outcome")]
    pub deterministic: bool,
    /// Add concurrences and entropies of the conditioned states
    #[arg(long)]
    pub measures: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// φ axis: `start:stop:count` or a single angle
    #[arg(long, default_value = "pi/2", value_parser = parse_axis, allow_hyphen_values = true)]
    pub phi: Axis,
    /// Axis used for every θ_i not given separately
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    pub theta: Option<Axis>,
    /// Axis for θ1 alone
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, conflicts_with = "lock_equal")]
    pub theta1: Option<Axis>,
    /// Axis for θ2 alone
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, conflicts_with = "lock_equal")]
    pub theta2: Option<Axis>,
    /// Axis for θ3 alone
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, conflicts_with = "lock_equal")]
    pub theta3: Option<Axis>,
    /// Axis for θ4 alone
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, conflicts_with = "lock_equal")]
    pub theta4: Option<Axis>,
    /// Bind all four θ to the `--theta` axis instead of forming a product grid
    #[arg(long, requires = "theta")]
    pub lock_equal: bool,
    /// Comma-separated detector efficiencies
    #[arg(long, default_value = "1", value_delimiter = ',', value_parser = parse_eta)]
    pub eta: Vec<f64>,
    /// Comma-separated subset of columns (default: all)
    #[arg(long, value_delimiter = ',')]
    pub columns: Option<Vec<String>>,
    /// Refuse grids with more points than this
    #[arg(long, default_value_t = 1_000_000)]
    pub max_points: usize,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    /// Print basis states (default when no other action is given)
    #[arg(long)]
    pub list: bool,
    /// Restrict `--list` to one state, `family,component`
    #[arg(long, requires = "list")]
    pub index: Option<String>,
    /// Orthonormality, completeness and per-state genuineness
    #[arg(long)]
    pub verify: bool,
    /// Compare the Pauli-generated basis with the tabulated one
    #[arg(long)]
    pub compare_generated: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// ghz4, w4, cl4 or d4
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    pub name: Option<String>,
    /// JSON state file
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
    /// Rescale a state file that is not normalized
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Also write the discrepancy log to this file
    #[arg(long, value_name = "PATH")]
    pub discrepancy_log: Option<PathBuf>,
    /// Negative control: flip the output splitter
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
