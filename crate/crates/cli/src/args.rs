use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ccov", version, about = "Invariants, audits and geography of canonical double covers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of the cover and, when the audit passes, its moduli dimension.
    Invariants {
        #[command(flatten)]
        pol: PolarizationArgs,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
    },
    /// Cohomology table of a divisor class.
    Cohomology {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
    },
    /// Dimension of the moduli component; refused when the audit fails.
    ModuliDim {
        #[command(flatten)]
        pol: PolarizationArgs,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
    },
    /// Hypothesis audit report.
    Audit {
        #[command(flatten)]
        pol: PolarizationArgs,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
    },
    /// Realized points on the line l(a).
    Geography {
        #[arg(long)]
        a: i64,
        #[arg(long = "x-max")]
        x_max: i128,
        #[arg(long = "no-f1")]
        no_f1: bool,
        #[arg(long, value_enum, default_value_t = GeoFormat::Json)]
        format: GeoFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render Figure 1 or Figure 2 as SVG.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        n: u8,
        /// `x0,x1,y0,y1`
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Candidate invariant collisions on the line for `m`.
    Collisions {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        bound: i128,
        #[arg(long = "feas-config")]
        feas_config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = JsonOnly::Json)]
        format: JsonOnly,
    },
    /// Check the worked moduli examples.
    VerifyExamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    P2,
    Fe,
}

#[derive(Debug, Args)]
pub struct PolarizationArgs {
    #[arg(long, value_enum)]
    pub base: Base,
    #[arg(long)]
    pub d: Option<i64>,
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long)]
    pub a: Option<i64>,
    #[arg(long)]
    pub b: Option<i64>,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[arg(long, value_enum)]
    pub base: Base,
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<i64>,
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeoFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JsonOnly {
    Json,
}
