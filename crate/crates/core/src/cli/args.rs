use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::radius::FamilyClass;

#[derive(Debug, Parser)]
#[command(
    name = "hsect",
    version,
    about = "Radii of univalence for sections of harmonic mappings"
)]
pub struct Cli {
    /// Output format; `svg` is accepted only by `plot` (its default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    General,
    Convex,
}

impl From<ClassArg> for FamilyClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::General => FamilyClass::General,
            ClassArg::Convex => FamilyClass::Convex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Roots of ψ / μ.
    Mu,
    /// Close-to-convexity radius `1 - 3 ln n / n` (convex class only).
    Ctc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    PsiCurve,
    MuCurve,
    BoundaryImage,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified radius r_{n,m} of one section.
    Radius {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Diagonal radii r_{n,n} for a list of orders.
    Table {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Comma-separated orders; may be empty.
        #[arg(long = "n-list", value_delimiter = ',', num_args = 0..)]
        n_list: Vec<u32>,
    },
    /// Smallest order whose radius reaches each target.
    Thresholds {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true, allow_negative_numbers = true)]
        targets: Vec<f64>,
        #[arg(long, value_enum, default_value = "mu")]
        route: Route,
    },
    /// Run one claim check by id, or `all`.
    Verify { claim: String },
    /// Empirical univalence radius of an extremal-coefficient section.
    Scan(ScanArgs),
    /// Check kernel(z, t) / z against the divided difference on seeded random polynomials.
    KernelCheck {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        polynomials: usize,
        #[arg(long, default_value_t = 100)]
        triples: usize,
    },
    /// Write an SVG plot.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 64)]
    pub radial: usize,
    #[arg(long, default_value_t = 256)]
    pub angular: usize,
    #[arg(long = "t-points", default_value_t = 128)]
    pub t_points: usize,
    /// Integer multiplier applied to every grid count.
    #[arg(long = "grid-scale", env = "HS_GRID_SCALE", default_value_t = 1)]
    pub grid_scale: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum, default_value = "general")]
    pub class: ClassArg,
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Scan the identity map instead of the extremal section.
    #[arg(long)]
    pub identity: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(value_enum)]
    pub kind: PlotKind,
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    /// Co-analytic order for `boundary-image`; defaults to `n`.
    #[arg(long)]
    pub m: Option<u32>,
    /// Family of the extremal section drawn by `boundary-image`.
    #[arg(long, value_enum, default_value = "general")]
    pub class: ClassArg,
    /// Circle radius for `boundary-image`.
    #[arg(long, default_value_t = 0.5)]
    pub r: f64,
    /// Vertical target line for curve plots.
    #[arg(long)]
    pub target: Option<f64>,
    /// Draw the identity map in `boundary-image`.
    #[arg(long)]
    pub identity: bool,
    /// Destination file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
