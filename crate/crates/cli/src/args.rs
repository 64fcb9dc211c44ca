use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sharpcert", version, about = "Certify (non-)existence of sharply transitive permutation sets")]
pub struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Directory holding `groups/*.grp` and `designs/*.dsn`.
    #[arg(long, global = true, default_value = "data")]
    pub data_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a certificate check for one of the built-in cases.
    Verify {
        #[command(subcommand)]
        case: VerifyCase,
    },
    /// Counting refutation for a point stabilizer of a symmetric design.
    DesignCheck {
        #[arg(long)]
        v: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        lambda: u64,
    },
    /// Exact-cover search for a sharply t-transitive subset of a group.
    SearchSharp {
        #[command(flatten)]
        group: GroupArgs,
        /// Node budget for the search.
        #[arg(long, default_value_t = sharpcert::search::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Search for contradicting subsets (B, C, p) for a group action.
    SearchCertificate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Largest allowed |B| and |C|.
        #[arg(long)]
        max_size: Option<usize>,
        /// Candidate sets tried above the exhaustive degree.
        #[arg(long, default_value_t = 2_000)]
        budget: u64,
    },
    /// Build the matrix equation (or its collapse by a subgroup) and decide solvability.
    Linsys(LinsysArgs),
    /// Run the built-in invariant corpus.
    Selftest,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Group file, or the name of a file under `<data-dir>/groups`.
    #[arg(long)]
    pub group: String,
    /// Act on ordered t-tuples of distinct points.
    #[arg(long, default_value_t = 1)]
    pub t: usize,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCase {
    /// Sp(2n, 2^m) on points of PG(2n-1, 2^m) or nonzero vectors.
    Sp {
        #[arg(long)]
        n: usize,
        /// Field GF(2^m).
        #[arg(long, conflicts_with = "q")]
        m: Option<u32>,
        /// Field order q = 2^m, instead of `--m`.
        #[arg(long)]
        q: Option<u64>,
        /// Irreducible polynomial for GF(2^m) as a bitmask, e.g. 0b111 = 7 for x^2 + x + 1.
        #[arg(long)]
        modulus: Option<u32>,
        #[arg(long, value_enum, default_value_t = ActionArg::Projective)]
        action: ActionArg,
        /// Also scan every group element.
        #[arg(long)]
        enumerate: bool,
    },
    /// M22 on 22 points, via blocks of W23 avoiding the special point.
    M22 {
        /// Also scan all elements (requires `groups/m22.grp`).
        #[arg(long)]
        enumerate: bool,
    },
    /// The McLaughlin graph on 275 vertices.
    Mclaughlin,
    /// A_n on ordered pairs of distinct points.
    Alt {
        #[arg(long)]
        n: usize,
    },
    /// M23, reduced to the M22 check.
    M23,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    Projective,
    Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    #[value(name = "f_p")]
    Fp,
    Q,
    Z,
    Znn,
}

#[derive(Debug, Args)]
pub struct LinsysArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Collapse by this subgroup (same base points as `--group`).
    #[arg(long)]
    pub subgroup: Option<String>,
    #[arg(long, value_enum)]
    pub ring: RingArg,
    /// Prime for `--ring f_p`.
    #[arg(long)]
    pub p: Option<u64>,
    /// Keep only the identity and fixed-point-free elements.
    #[arg(long)]
    pub fpf: bool,
    /// With `--fpf`, set the identity's unknown to 1.
    #[arg(long, requires = "fpf")]
    pub pin_identity: bool,
    /// Random restriction probe, e.g. `keep=270,trials=10,seed=0`.
    #[arg(long)]
    pub probe: Option<ProbeArg>,
    /// Branch budget for `--ring znn`.
    #[arg(long, default_value_t = sharpcert::linsys::DEFAULT_BRANCH_BUDGET)]
    pub budget: u64,
    /// Also dump the system as `rows cols` followed by `[A | b]` rows.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeArg {
    pub keep: usize,
    pub trials: usize,
    pub seed: Option<u64>,
}

impl FromStr for ProbeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut keep = None;
        let mut trials = 10;
        let mut seed = None;
        for part in s.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, found `{part}`"))?;
            let num = |v: &str| v.parse::<u64>().map_err(|e| format!("{key}: {e}"));
            match key.trim() {
                "keep" => keep = Some(num(value)? as usize),
                "trials" => trials = num(value)? as usize,
                "seed" => seed = Some(num(value)?),
                other => return Err(format!("unknown probe key `{other}`")),
            }
        }
        Ok(Self {
            keep: keep.ok_or("missing keep=N")?,
            trials,
            seed,
        })
    }
}
