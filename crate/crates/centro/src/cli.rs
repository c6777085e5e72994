//! The `centro` command. Each verb reads JSON, calls into `centro-core` and
//! renders the result as JSON.

use std::io::Read;
use std::path::PathBuf;

use centro_core::cauchy::{cauchy_check_jc, cauchy_is_centro, cauchy_is_skew, materialize, CauchySpec};
use centro_core::eigen::{solve_eigen, SolverOptions};
use centro_core::inverse::{find_inverse, NoInverseReason, Recovery, RecoveryOptions, Side};
use centro_core::product::{shao_product_capped, DEFAULT_MAX_ENTRIES};
use centro_core::structure::{check_commutation, check_structure, check_via_j, decompose, random_structured, Kind, StructureReport};
use centro_core::tensor::hadamard;
use centro_core::DenseTensor;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::format::{self, to_json, STDIN};
use crate::suite::{verify_all, SuiteOptions};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "centro", version, about = "Centrosymmetric, skew-centrosymmetric and Cauchy tensors")]
pub struct Cli {
    /// Write the JSON result to this file instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded random tensor.
    Gen(GenArgs),
    /// Classify a tensor as centrosymmetric, skew-centrosymmetric, both or neither.
    Check(CheckArgs),
    /// General tensor product of two tensors.
    Prod(ProdArgs),
    /// Entrywise product of two tensors of the same shape.
    Hadamard(PairArgs),
    /// Split a tensor into centrosymmetric and skew-centrosymmetric parts.
    Decompose(InputArgs),
    /// Real H-eigenpairs by multistart Newton.
    Eig(EigArgs),
    /// Materialize or check a Cauchy tensor spec.
    Cauchy(CauchyArgs),
    /// Left or right inverse of a tensor.
    Inverse(InverseArgs),
    /// Run the randomized self-check suite.
    VerifyAll(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Centro,
    Skew,
    General,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Centro => Kind::Centro,
            KindArg::Skew => Kind::Skew,
            KindArg::General => Kind::General,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Compare each entry with the entry at the reversed index.
    Direct,
    /// Compare A with J A J.
    J,
    /// Compare A J with J A.
    Commutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input JSON file, or `-` for standard input.
    pub input: String,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_enum, default_value = "general")]
    pub kind: KindArg,
    #[arg(long, env = "CT_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub input: String,
    /// Tolerance relative to max(1, max|a|).
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct ProdArgs {
    pub left: String,
    pub right: String,
    /// Refuse products with more entries than this.
    #[arg(long, default_value_t = DEFAULT_MAX_ENTRIES)]
    pub max_entries: usize,
}

#[derive(Debug, Args)]
pub struct EigArgs {
    pub input: String,
    #[arg(long, default_value_t = 50)]
    pub starts: usize,
    #[arg(long, env = "CT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    /// Tolerance for the symmetric / skew-symmetric / abs-symmetric labels.
    #[arg(long, default_value_t = 1e-8)]
    pub class_tol: f64,
}

#[derive(Debug, Args)]
pub struct CauchyArgs {
    pub spec: String,
    /// Report structure tests instead of the materialized tensor.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct InverseArgs {
    pub input: String,
    /// `left` finds B with BA = I, `right` finds B with AB = I.
    #[arg(long, value_enum)]
    pub side: SideArg,
    /// Order of the inverse. Non-diagonal tensors only support 2.
    #[arg(long, default_value_t = 2)]
    pub order: usize,
    #[arg(long, default_value_t = 1e12)]
    pub max_condition: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, env = "CT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Random instances per check.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Corrupt one check to confirm that failures are reported.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// JSON to emit and whether the command succeeded. A failed command still
/// has data: the missing inverse or the failing self-check report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub json: String,
    pub success: bool,
    pub diagnostic: Option<String>,
}

impl Output {
    fn ok<T: Serialize + ?Sized>(value: &T) -> Self {
        Self {
            json: to_json(value),
            success: true,
            diagnostic: None,
        }
    }

    fn failed<T: Serialize + ?Sized>(value: &T, diagnostic: String) -> Self {
        Self {
            json: to_json(value),
            success: false,
            diagnostic: Some(diagnostic),
        }
    }
}

#[derive(Debug, Serialize)]
struct CauchyCheck {
    centrosymmetric: bool,
    skew_centrosymmetric: bool,
    commutes_with_j: bool,
    tensor: StructureReport,
}

fn reject_double_stdin(paths: &[&str]) -> Result<(), CliError> {
    if paths.iter().filter(|&&p| p == STDIN).count() > 1 {
        return Err(CliError::Usage("only one input can come from standard input".into()));
    }
    Ok(())
}

pub fn execute(command: &Command, stdin: &mut dyn Read) -> Result<Output, CliError> {
    match command {
        Command::Gen(a) => Ok(Output::ok(&random_structured(a.order, a.dim, a.kind.into(), a.seed)?)),
        Command::Check(a) => {
            let t: DenseTensor = format::read(&a.input, stdin)?;
            let report = match a.method {
                Method::Direct => check_structure(&t, a.tol),
                Method::J => check_via_j(&t, a.tol)?,
                Method::Commutation => check_commutation(&t, a.tol)?,
            };
            Ok(Output::ok(&report))
        }
        Command::Prod(a) => {
            reject_double_stdin(&[&a.left, &a.right])?;
            let l: DenseTensor = format::read(&a.left, stdin)?;
            let r: DenseTensor = format::read(&a.right, stdin)?;
            Ok(Output::ok(&shao_product_capped(&l, &r, a.max_entries)?))
        }
        Command::Hadamard(a) => {
            reject_double_stdin(&[&a.left, &a.right])?;
            let l: DenseTensor = format::read(&a.left, stdin)?;
            let r: DenseTensor = format::read(&a.right, stdin)?;
            Ok(Output::ok(&hadamard(&l, &r)?))
        }
        Command::Decompose(a) => {
            let t: DenseTensor = format::read(&a.input, stdin)?;
            Ok(Output::ok(&decompose(&t)))
        }
        Command::Eig(a) => {
            let t: DenseTensor = format::read(&a.input, stdin)?;
            let opts = SolverOptions {
                starts: a.starts,
                seed: a.seed,
                tol: a.tol,
                max_iter: a.max_iter,
                class_tol: a.class_tol,
                ..SolverOptions::default()
            };
            Ok(Output::ok(&solve_eigen(&t, &opts)?))
        }
        Command::Cauchy(a) => {
            let spec: CauchySpec = format::read(&a.spec, stdin)?;
            let tensor = materialize(&spec)?;
            if !a.check {
                return Ok(Output::ok(&tensor));
            }
            Ok(Output::ok(&CauchyCheck {
                centrosymmetric: cauchy_is_centro(&spec, a.tol),
                skew_centrosymmetric: cauchy_is_skew(&spec, a.tol),
                commutes_with_j: cauchy_check_jc(&spec, a.tol)?,
                tensor: check_structure(&tensor, a.tol),
            }))
        }
        Command::Inverse(a) => {
            let t: DenseTensor = format::read(&a.input, stdin)?;
            let side = match a.side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let opts = RecoveryOptions {
                max_condition: a.max_condition,
                ..RecoveryOptions::default()
            };
            let recovery = find_inverse(&t, side, a.order, &opts)?;
            Ok(match &recovery {
                Recovery::Found(_) => Output::ok(&recovery),
                Recovery::NoInverse { reason, .. } => {
                    let why = match reason {
                        NoInverseReason::Singular => "the candidate matrix is singular",
                        NoInverseReason::IllConditioned => "the candidate matrix is too badly conditioned",
                        NoInverseReason::ResidualTooLarge => "the candidate does not satisfy the inverse identity",
                    };
                    Output::failed(&recovery, format!("no inverse: {why}"))
                }
            })
        }
        Command::VerifyAll(a) => {
            let report = verify_all(&SuiteOptions {
                seed: a.seed,
                trials: a.trials,
                inject_fault: a.inject_fault,
            });
            if report.passed {
                return Ok(Output::ok(&report));
            }
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            Ok(Output::failed(&report, format!("failed checks: {}", failed.join(", "))))
        }
    }
}
