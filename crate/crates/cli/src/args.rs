use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ifps", version, about = "Castling classes and prehomogeneity certificates of IFPS-type triplets")]
pub struct Cli {
    /// Add wall-clock timings to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Residual of a² + Σ m_i² − k − 2a·∏ m_i for a solution tuple.
    Residual {
        /// Tuple such as "(2; 3, 11)".
        solution: String,
    },
    /// Breadth-first enumeration of the castling tree from (a; a − 1).
    Enumerate {
        a: u64,
        #[arg(long, default_value_t = 200)]
        max_part: u64,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        /// Keep only solutions without parts equal to 1.
        #[arg(long)]
        essential_only: bool,
        /// For a = 3, drop solutions containing a part equal to 2.
        #[arg(long)]
        exclude_repetition: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Reduce a solution to its base by sc-transforms at the largest part.
    Descend { solution: String },
    /// Certify a solution's tensor triplet, or a DSL triplet, as a PV of type IFPS.
    Verify {
        /// Solution tuple or triplet such as "gl(1)+sl(2) : L1#3L1".
        expr: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compare a triplet with its castling transform at split n.
    CastleCheck {
        /// Triplet (𝔥, f) whose representation space has dimension m.
        triplet: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SearchArgs {
    /// Random points to try.
    #[arg(long)]
    pub trials: Option<u32>,
    /// Coordinates are drawn from [−bound, bound].
    #[arg(long)]
    pub bound: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Pre-screen modulus; must be a prime ≥ 2^60.
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}
