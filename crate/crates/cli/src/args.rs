use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qecmem_core::{Alphas, CodeName, SuccessRule};

use crate::error::CliError;

/// Tolerance on the user-supplied asymmetry weights.
pub const ALPHA_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "qecmem",
    version,
    about = "Exact fidelity and threshold analysis of small stabilizer codes under correlated Pauli noise"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entanglement fidelity report for one operating point, as JSON.
    Fidelity(FidelityArgs),
    /// Run the built-in self-checks.
    Verify(VerifyArgs),
    /// Threshold curve as CSV.
    Threshold(ThresholdArgs),
    /// Write the data behind all six comparison plots into a directory.
    Figures(FiguresArgs),
    /// Stabilizer code description as JSON.
    DumpCode(DumpCodeArgs),
    /// Full error-string distribution as CSV.
    Distribution(DistributionArgs),
}

fn parse_code(s: &str) -> Result<CodeName, String> {
    s.parse::<CodeName>().map_err(|e| e.to_string())
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum RuleArg {
    /// Success iff the error is one of the designated correctable strings.
    #[default]
    Designated,
    /// Success iff the correction leaves a stabilizer element.
    Coset,
}

impl From<RuleArg> for SuccessRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Designated => SuccessRule::DesignatedCorrection,
            RuleArg::Coset => SuccessRule::StabilizerCoset,
        }
    }
}

/// Asymmetry weights. Either all three are given or none (symmetric noise).
#[derive(Debug, Clone, Args)]
pub struct AlphaArgs {
    #[arg(long = "alpha-x", value_parser = parse_unit, requires_all = ["alpha_y", "alpha_z"])]
    pub alpha_x: Option<f64>,
    #[arg(long = "alpha-y", value_parser = parse_unit, requires_all = ["alpha_x", "alpha_z"])]
    pub alpha_y: Option<f64>,
    #[arg(long = "alpha-z", value_parser = parse_unit, requires_all = ["alpha_x", "alpha_y"])]
    pub alpha_z: Option<f64>,
}

impl AlphaArgs {
    pub fn resolve(&self) -> Result<Alphas, CliError> {
        match (self.alpha_x, self.alpha_y, self.alpha_z) {
            (None, None, None) => Ok(Alphas::SYMMETRIC),
            (Some(x), Some(y), Some(z)) => {
                let sum = x + y + z;
                if (sum - 1.0).abs() > ALPHA_SUM_TOL {
                    return Err(CliError::Usage(format!(
                        "--alpha-x/-y/-z must sum to 1, got {sum}"
                    )));
                }
                Alphas::new(x / sum, y / sum, z / sum).map_err(|e| CliError::Usage(e.to_string()))
            }
            _ => Err(CliError::Usage(
                "give all of --alpha-x, --alpha-y and --alpha-z, or none".into(),
            )),
        }
    }
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    #[arg(long, value_parser = parse_code)]
    pub code: CodeName,
    #[arg(long, value_parser = parse_unit)]
    pub p: f64,
    #[arg(long, value_parser = parse_unit, default_value_t = 0.0)]
    pub mu: f64,
    #[command(flatten)]
    pub alphas: AlphaArgs,
    #[arg(long, value_enum, default_value_t = RuleArg::Designated)]
    pub rule: RuleArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct VerifySelection {
    /// Run every check.
    #[arg(long)]
    pub all: bool,
    /// Run only the checks of one group, 1 through 9.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
    pub group: Option<u8>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub selection: VerifySelection,
    /// Emit the outcomes as a JSON array instead of text lines.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Axis {
    /// Sweep p and report the largest effective memory at each value.
    P,
    /// Sweep the memory and report the largest effective p at each value.
    Mu,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long, value_parser = parse_code)]
    pub code: CodeName,
    #[arg(long, value_enum, default_value_t = Axis::P)]
    pub axis: Axis,
    /// First grid value. Defaults to 1e-4 for p and 0 for mu.
    #[arg(long, value_parser = parse_unit)]
    pub from: Option<f64>,
    /// Last grid value. Defaults to 0.2 for p and 1 for mu.
    #[arg(long, value_parser = parse_unit)]
    pub to: Option<f64>,
    /// Number of grid points. Defaults to 200 for p and 101 for mu.
    #[arg(long)]
    pub points: Option<usize>,
    /// Grid spacing. Defaults to log for p and linear for mu.
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    #[command(flatten)]
    pub alphas: AlphaArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DumpCodeArgs {
    #[arg(long, value_parser = parse_code)]
    pub code: CodeName,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistributionArgs {
    /// Number of qubits.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
    pub n: u8,
    #[arg(long, value_parser = parse_unit)]
    pub p: f64,
    #[arg(long, value_parser = parse_unit, default_value_t = 0.0)]
    pub mu: f64,
    #[command(flatten)]
    pub alphas: AlphaArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
