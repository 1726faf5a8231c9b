use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// Environment variable supplying the default `--digits`.
pub const DIGITS_ENV: &str = "ZETAINT_DIGITS";

#[derive(Debug, Parser)]
#[command(
    name = "zetaint",
    version,
    about = "High-precision checks of integral representations of zeta values"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify catalog identities.
    Verify {
        /// Catalog ids, comma separated or repeated, or `all`.
        #[arg(long = "id", value_delimiter = ',', required = true)]
        ids: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Moment integrals with their exact zeta- and eta-basis coefficients.
    Table {
        /// Last moment index (rows p = 0..=pmax).
        #[arg(long)]
        pmax: u32,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Fit the coefficient pattern and validate it beyond the fit range.
    Discover {
        /// Fit on rows p = 0..=pfit.
        #[arg(long)]
        pfit: u32,
        /// Validate on p = pfit+1..=pcheck.
        #[arg(long)]
        pcheck: u32,
        /// Highest ratio-polynomial degree tried.
        #[arg(long, default_value_t = 4)]
        degree_max: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate zeta(s) by one method.
    Zeta {
        /// Integer argument, at least 2 (even for bernoulli).
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = ZetaMethodArg::Bernoulli)]
        method: ZetaMethodArg,
        /// Euler-Maclaurin order; chosen automatically when omitted.
        #[arg(long, requires = "split")]
        order: Option<u32>,
        /// Euler-Maclaurin split point.
        #[arg(long, requires = "order")]
        split: Option<u32>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Significant decimal digits.
    #[arg(long, env = DIGITS_ENV, default_value_t = 50)]
    pub digits: u32,
    /// Deepest quadrature level.
    #[arg(long, default_value_t = 12)]
    pub max_level: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaMethodArg {
    Bernoulli,
    EulerMaclaurin,
    Mellin,
}

impl ZetaMethodArg {
    pub fn name(self) -> &'static str {
        match self {
            ZetaMethodArg::Bernoulli => "bernoulli",
            ZetaMethodArg::EulerMaclaurin => "euler-maclaurin",
            ZetaMethodArg::Mellin => "mellin",
        }
    }
}

/// Settings echoed into every envelope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub digits: u32,
    pub max_level: u32,
    pub output_format: OutputFormat,
    pub output_path: Option<String>,
}

impl From<&CommonArgs> for RunConfig {
    fn from(a: &CommonArgs) -> Self {
        Self {
            digits: a.digits,
            max_level: a.max_level,
            output_format: a.format,
            output_path: a.out.as_ref().map(|p| p.display().to_string()),
        }
    }
}
