use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact invariants of the two-level cover TQFT, Hurwitz numbers and
/// symmetric-group characters.
#[derive(Parser, Debug)]
#[command(name = "covertqft", version, about)]
pub struct Cli {
    /// Output format; csv is accepted by `partitions` and `chartable` only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Directory for cached character tables and Hurwitz values
    /// (default: $COVERTQFT_CACHE, else no disk cache).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore every disk cache.
    #[arg(long, global = true, conflicts_with = "cache_dir")]
    pub no_cache: bool,
    /// Worker threads for the parallel sums (default: all cores).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Partitions of d with hooklengths, content, n, dim and q-dimension.
    Partitions { d: u32 },
    /// Character table of S_d.
    Chartable { d: u32 },
    /// A Hurwitz number.
    Hurwitz(HurwitzArgs),
    /// Invariants of the two-level theory.
    #[command(subcommand)]
    Invariant(InvariantMode),
    /// Run a verification suite; exit status 1 on any failed check.
    #[command(subcommand)]
    Verify(Suite),
    /// Inspect or clear the disk cache.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Args, Debug)]
pub struct HurwitzArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 0)]
    pub g: u32,
    /// Ramification profile such as `2+1` or `2,1`; repeatable.
    #[arg(long = "class", value_name = "PARTITION")]
    pub classes: Vec<String>,
    /// Number of extra simple branch points.
    #[arg(long, default_value_t = 0)]
    pub simple: u32,
    /// Count connected covers only.
    #[arg(long)]
    pub connected: bool,
    /// Enumerate permutation tuples instead of the character formula.
    #[arg(long)]
    pub bruteforce: bool,
}

#[derive(Subcommand, Debug)]
pub enum InvariantMode {
    /// Anti-diagonal invariant, closed or with boundary.
    Antid(AntidArgs),
    /// Calabi–Yau cap with boundary class eta.
    Cycap(CycapArgs),
    /// Generating series of the level-(0,0) pair of pants.
    Pants(PantsArgs),
    /// Level-(0,0) anti-diagonal coefficient with given boundary classes.
    Level00(Level00Args),
}

#[derive(Args, Debug)]
pub struct AntidArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 0)]
    pub g: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub k1: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub k2: i64,
    /// Evaluate at Q = x (a fraction or integer).
    #[arg(long = "at-Q", value_name = "X", conflicts_with = "as_u_series", allow_hyphen_values = true)]
    pub at_q: Option<String>,
    /// Expand in u, Q = e^{iu}.
    #[arg(long)]
    pub as_u_series: bool,
    #[arg(long, default_value_t = 16)]
    pub order: i64,
    /// Incoming boundary class; repeatable.
    #[arg(long = "input", value_name = "PARTITION")]
    pub inputs: Vec<String>,
    /// Outgoing boundary class; repeatable.
    #[arg(long = "output", value_name = "PARTITION")]
    pub outputs: Vec<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Side {
    /// Level (0,-1), carrying s1.
    S1,
    /// Level (-1,0), carrying s2.
    S2,
}

#[derive(Args, Debug)]
pub struct CycapArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, value_name = "PARTITION")]
    pub eta: String,
    #[arg(long, value_enum, default_value_t = Side::S1)]
    pub side: Side,
    #[arg(long, default_value_t = 16)]
    pub order: i64,
}

#[derive(Args, Debug)]
pub struct PantsArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 16)]
    pub order: i64,
}

#[derive(Args, Debug)]
pub struct Level00Args {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 0)]
    pub g: u32,
    #[arg(long = "class", value_name = "PARTITION")]
    pub classes: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// Fibre relation Σ_η (−1)^ℓ ℋ_η / ∏ 2 sin(η_i u/2) = 0.
    Relfin {
        /// Single degree; default 2 through 5.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = 14)]
        order: i64,
    },
    /// Randomized gluing and self-gluing of anti-diagonal tensors.
    Gluing {
        /// Single degree; default 1 through 4.
        #[arg(long)]
        d: Option<u32>,
        /// Samples per degree.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Burnside's formula against the character sum, Q = 1 and enumeration.
    Burnside {
        /// Single degree; default 1 through 8. Tuples are enumerated for d <= 4.
        #[arg(long)]
        d: Option<u32>,
        /// Single genus; default 0 through 3.
        #[arg(long)]
        g: Option<u32>,
    },
    /// Connected genus-0 level-(−1,−1) coefficients against 1/d³.
    Aspinwall {
        #[arg(long, default_value_t = 6)]
        dmax: u32,
        /// Series order; default 2·dmax.
        #[arg(long)]
        order: Option<i64>,
    },
    /// Cap exponentiation and anti-diagonal cap vectors.
    Cycap {
        /// Largest degree for the exponentiation check.
        #[arg(long, default_value_t = 6)]
        dmax: u32,
        /// Largest degree for the cap-vector check.
        #[arg(long, default_value_t = 4)]
        vectors_dmax: u32,
        #[arg(long, default_value_t = 12)]
        order: i64,
    },
    /// Character orthogonality and partition identities.
    Orthogonality {
        #[arg(long, default_value_t = 8)]
        dmax: u32,
    },
    /// Character formula against tuple enumeration on a grid.
    FrobeniusVsBruteforce {
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        #[arg(long, default_value_t = 2)]
        gmax: u32,
        #[arg(long, default_value_t = 3)]
        max_classes: usize,
        #[arg(long, default_value_t = 3)]
        smax: u32,
    },
    /// Every suite at its defaults.
    All,
}

#[derive(Subcommand, Debug)]
pub enum CacheCmd {
    /// Print the active cache directory.
    Path,
    /// List cached character tables and Hurwitz values.
    List,
    /// Delete every cached file.
    Clear,
}
