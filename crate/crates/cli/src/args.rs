use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "tvlab", version, about = "Deleted products, Tverberg partitions and r-fold obstructions")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Maximum number of deleted-product cells (overrides TVLAB_CELL_CAP).
    #[arg(long, global = true)]
    pub cell_cap: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Deleted products of a complex.
    #[command(subcommand)]
    Dp(DpCommand),
    /// Radon partition of d + 2 points.
    Radon(RadonArgs),
    #[command(subcommand)]
    Tverberg(TverbergCommand),
    /// PL maps: r-fold points, the intersection cocycle and almost-embedding checks.
    #[command(subcommand)]
    Plmap(PlmapCommand),
    #[command(subcommand)]
    Vk(VkCommand),
    /// Sylow p-subgroup of Σ_r from the p-adic tree.
    Sylow(SylowArgs),
    #[command(subcommand)]
    Ozaydin(OzaydinCommand),
    /// Path between two 0-cells through the 1-skeleton of a deleted product.
    Puzzle(PuzzleArgs),
    #[command(subcommand)]
    Construct(ConstructCommand),
}

/// A complex given either as the s-skeleton of Δ_N or as a JSON file.
#[derive(Args, Debug, Clone)]
pub struct ComplexArgs {
    #[arg(long, conflicts_with = "complex")]
    pub n: Option<usize>,
    /// Skeleton dimension; defaults to N.
    #[arg(long, allow_negative_numbers = true, requires = "n")]
    pub s: Option<i64>,
    #[arg(long)]
    pub complex: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum DpCommand {
    /// f-vector, dimension and 1-skeleton statistics.
    Stats {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long)]
        r: usize,
    },
    /// Homology over Z, or Z/p with --p.
    Homology {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Largest j with vanishing reduced homology in degrees ≤ j.
    Connectivity {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Args, Debug)]
pub struct RadonArgs {
    #[arg(long, conflicts_with = "random")]
    pub points: Option<PathBuf>,
    /// Run this many seeded random instances.
    #[arg(long, requires = "d")]
    pub random: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum TverbergCommand {
    /// First certified partition in search order.
    Search {
        #[arg(long, conflicts_with = "random")]
        points: Option<PathBuf>,
        #[arg(long, requires = "d")]
        random: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum PlmapCommand {
    /// Global r-fold points with signs.
    Rfold {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Intersection cocycle; --fuzz-oracle compares it with the coned-extension count.
    Cocycle {
        #[arg(long, required_unless_present = "fuzz_oracle")]
        map: Option<PathBuf>,
        #[arg(long)]
        r: usize,
        /// Number of oracle instances: apex seeds for --map, random maps of the s-skeleton of Δ_N into R^d otherwise.
        #[arg(long)]
        fuzz_oracle: Option<usize>,
        #[arg(long, conflicts_with = "map", requires_all = ["s", "d"])]
        n: Option<usize>,
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Whether no point is covered by r pairwise disjoint simplices.
    Almost {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VkCommand {
    /// Whether the intersection cocycle is equivariantly null-cohomologous.
    Obstruction {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        r: usize,
        /// Include the certificate in the report.
        #[arg(long)]
        certificate: bool,
    },
}

#[derive(Args, Debug)]
pub struct SylowArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub p: u64,
}

#[derive(Subcommand, Debug)]
pub enum OzaydinCommand {
    /// Per-prime Sylow table (JSON on stdout, text table on stderr).
    Report {
        #[arg(long)]
        r: usize,
    },
}

#[derive(Args, Debug)]
pub struct PuzzleArgs {
    #[command(flatten)]
    pub complex: ComplexArgs,
    #[arg(long)]
    pub r: usize,
    /// Start cell as JSON, e.g. '[[0],[1]]'.
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCommand {
    /// Extend f: Δ_N → R^d to the join with r − 1 extra points.
    Join {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Lift f by a height function vanishing exactly on the s-skeleton.
    Constraint {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        s: usize,
    },
}
