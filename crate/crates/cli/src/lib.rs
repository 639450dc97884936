//! Command-line front end for `psl2codes-core`.
//!
//! Every subcommand produces a deterministic JSON document (or a text table)
//! and a [`Status`] that maps onto the process exit code.

pub mod commands;
pub mod formats;

use clap::{Parser, Subcommand, ValueEnum};
use psl2codes_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "psl2codes", version, about = "PSL(2,n)-invariant extended cyclic codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: Output,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest code dimension enumerated exhaustively.
    #[arg(long = "max-dim", global = true, default_value_t = psl2codes_core::DEFAULT_MAX_DIMENSION)]
    pub max_dim: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The field GF(2^m) holding the n-th roots of unity.
    Field {
        #[arg(long)]
        n: u32,
    },
    /// Cyclotomic cosets, minimal polynomials and quadratic residues.
    Cosets {
        #[arg(long)]
        n: u32,
    },
    /// Quadratic-residue codes and their extension.
    Qr {
        #[arg(long)]
        n: u32,
        /// Also test Type II extremality of the extended code.
        #[arg(long)]
        extremal: bool,
    },
    /// Which extended cyclic codes are PSL(2,n)-invariant.
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long = "max-cosets", default_value_t = psl2codes_core::psl2::DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Every PSL(2,n)-invariant subspace, by spinning all vectors.
    Spin {
        #[arg(long)]
        n: u32,
        #[arg(long = "max-spin-n", default_value_t = psl2codes_core::psl2::DEFAULT_MAX_SPIN_N)]
        max_spin_n: u32,
        #[arg(long = "max-group-order", default_value_t = psl2codes_core::psl2::DEFAULT_MAX_GROUP_ORDER)]
        max_group_order: usize,
    },
    /// t-designs held by the weight layers of the extended QR code.
    Designs {
        #[arg(long)]
        n: u32,
    },
    /// Checks the spectral identity for T on random parity-extended words.
    FourierCheck {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Codewords whose image under T has a nonzero permuted spectral value.
    Witness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        /// Comma-separated defining set (default: empty).
        #[arg(long = "defining-set", value_delimiter = ',')]
        defining_set: Vec<u32>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Field { .. } => "field",
            Self::Cosets { .. } => "cosets",
            Self::Qr { .. } => "qr",
            Self::Classify { .. } => "classify",
            Self::Spin { .. } => "spin",
            Self::Designs { .. } => "designs",
            Self::FourierCheck { .. } => "fourier-check",
            Self::Witness { .. } => "witness",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A computation contradicts the classification or an identity it rests on.
    Inconsistent,
    CapExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Ok => 0,
            Self::Inconsistent => 1,
            Self::CapExceeded => 3,
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub status: Status,
}

impl Outcome {
    pub fn render(&self, output: Output) -> &str {
        match output {
            Output::Json => &self.json,
            Output::Text => &self.text,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotOddPrime(_)
            | Error::PrimeTooLarge { .. }
            | Error::ResidueOutOfRange(_)
            | Error::NotCosetUnion { .. }
            | Error::NoQuadraticResidueCode(_)
            | Error::InvalidWitness(_)
            | Error::InvalidDesign(_)
            | Error::LengthMismatch { .. }
            | Error::CoordinateOutOfRange { .. } => 2,
            Error::LengthTooLarge(_)
            | Error::DimensionTooLarge { .. }
            | Error::GroupTooLarge { .. }
            | Error::SpinTooLarge { .. }
            | Error::TooManyCosets { .. }
            | Error::TooManySubsets { .. } => 3,
            Error::ZeroInverse
            | Error::DivisionByZero
            | Error::ContextMismatch { .. }
            | Error::ZeroCode
            | Error::Falsified(_) => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    commands::dispatch(cli)
}
