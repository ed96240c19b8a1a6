use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use semipower_core::lab::SearchMode;
use semipower_core::{NaturalSet, DEFAULT_CARRIER_CAP};

#[derive(Debug, Parser)]
#[command(
    name = "semipower",
    version,
    about = "Finite sets of naturals, numerical semigroups and automorphisms of their power semigroups"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gaps, Frobenius number, critical element and minimum of a semigroup.
    Info {
        #[command(flatten)]
        semigroup: SemigroupArgs,
        /// Also report the size of the window of subsets with maximum <= BOUND.
        #[arg(long)]
        bound: Option<u64>,
        /// Count only subsets containing 0.
        #[arg(long, requires = "bound")]
        reduced: bool,
    },
    /// Sumset of two or more sets.
    Sumset {
        #[command(flatten)]
        sets: SetArgs,
    },
    /// Consecutive differences and largest gap of each set.
    Gap {
        #[command(flatten)]
        sets: SetArgs,
    },
    /// The involution X -> max(X) - X + min(X) on each set.
    Sigma {
        #[command(flatten)]
        sets: SetArgs,
    },
    /// Translation-class representative X - min(X) of each set.
    Phi {
        #[command(flatten)]
        sets: SetArgs,
        /// Treat each set as a representative (containing 0) and shift it by K.
        #[arg(long, value_name = "K")]
        inverse: Option<u64>,
    },
    /// Exhaustive automorphism search on a window of P(S) or P0(S).
    Search {
        #[command(flatten)]
        semigroup: SemigroupArgs,
        #[command(flatten)]
        window: WindowArgs,
        /// Search P0(S): only subsets containing 0.
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value_t = ModeArg::Filtered)]
        mode: ModeArg,
    },
    /// Exhaustive search for additive bijections of S itself up to a bound.
    ElementSearch {
        #[command(flatten)]
        semigroup: SemigroupArgs,
        #[arg(long)]
        bound: u64,
    },
    /// Why the involution does not restrict to P(S) when S is not an interval.
    Obstruction {
        #[command(flatten)]
        semigroup: SemigroupArgs,
    },
    /// Search a window and run every structural check on the survivors.
    Verify {
        #[command(flatten)]
        semigroup: SemigroupArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
}

#[derive(Debug, Args)]
pub struct SemigroupArgs {
    /// Generators, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1, conflicts_with_all = ["gaps", "from"])]
    pub gens: Option<Vec<u64>>,
    /// Add 0 to the semigroup generated by --gens.
    #[arg(long, requires = "gens")]
    pub monoid: bool,
    /// Positive integers missing from S, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1, conflicts_with = "from")]
    pub gaps: Option<Vec<u64>>,
    /// The semigroup given by --gaps contains 0.
    #[arg(long, requires = "gaps")]
    pub contains_zero: bool,
    /// The discrete interval [[K, inf)); K = 0 gives N.
    #[arg(long, value_name = "K")]
    pub from: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// Set literal "a,b,c" in ascending order; "i..j" ranges are allowed.
    #[arg(long = "set", value_name = "SET", value_parser = parse_set, action = ArgAction::Append)]
    pub sets: Vec<NaturalSet>,
    /// The discrete interval {i, ..., j}.
    #[arg(long, value_name = "I:J", value_parser = parse_interval, action = ArgAction::Append)]
    pub interval: Vec<NaturalSet>,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// Largest element allowed in a window member.
    #[arg(long)]
    pub bound: u64,
    /// Refuse windows with more members than this.
    #[arg(long, default_value_t = DEFAULT_CARRIER_CAP)]
    pub max_carrier: usize,
    /// Abort the search after this many nodes.
    #[arg(long)]
    pub node_limit: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Filtered,
    Raw,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Filtered => SearchMode::Filtered,
            ModeArg::Raw => SearchMode::Raw,
        }
    }
}

fn parse_set(s: &str) -> Result<NaturalSet, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_interval(s: &str) -> Result<NaturalSet, String> {
    let (i, j) = s
        .split_once(':')
        .ok_or_else(|| String::from("expected I:J, e.g. 2:7"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("{t:?} is not a natural number"))
    };
    NaturalSet::interval(num(i)?, num(j)?).map_err(|e| format!("{e}"))
}
