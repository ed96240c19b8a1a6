//! Candidate automorphisms of window carriers and the exhaustive search for them.
//!
//! A [`CandidateMap`] is a partial injective table on a [`WindowCarrier`]. The
//! checks in this module test such tables against the structural properties
//! every automorphism of a power semigroup has (extrema, gaps, fixed small
//! sets, translation equivariance, ...). [`search_automorphisms`] enumerates all
//! addition-preserving bijections of a carrier by backtracking with eager
//! propagation of sum constraints.
//!
//! [`WindowCarrier`]: crate::power::WindowCarrier

use alloc::vec::Vec;
use core::fmt;

use crate::power::WindowError;
use crate::set::{NaturalSet, SetError};

mod checks;
mod engine;
mod map;
mod obstruction;
mod search;

pub use checks::{
    check_lemmas, induced_quotient_map, lemma_suite, translation_equivariance_check,
    verify_growth_formula, EquivarianceFailure, GrowthFailure, GrowthVerdict, LemmaId,
    LemmaOutcome, LemmaResult, LemmaSuiteReport, QuotientMap,
};
pub use engine::ConflictKind;
pub use map::{check_additivity, measure_params, CandidateMap, MeasuredParams, Violation};
pub use obstruction::{sigma_restriction_obstruction, Obstruction};
pub use search::{
    element_automorphism_search, search_automorphisms, Claim, RejectionWitness, SearchReport,
    SearchTarget, Survivor,
};

/// Largest element a searched carrier may contain; sums of two members must fit
/// the 128-bit masks used by the search engine.
pub const MAX_SEARCH_BOUND: u64 = 63;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("bound {bound} is too large for the search engine (max {max})")]
    BoundTooLarge { bound: u64, max: u64 },
    #[error("search explored more than {limit} nodes; raise the node limit or shrink the window")]
    NodeLimit { limit: u64 },
    #[error("the carrier does not contain {set}")]
    MissingMember { set: NaturalSet },
    #[error("the map is undefined on {set}")]
    Undefined { set: NaturalSet },
    #[error("the map is not injective: {first} and {second} share an image")]
    NotInjective {
        first: NaturalSet,
        second: NaturalSet,
    },
    #[error("table has {got} entries but the carrier has {expected} members")]
    TableLength { got: usize, expected: usize },
    #[error("the semigroup is not a discrete interval")]
    NotInterval,
    #[error("bound {bound} is too small; at least {required} is required")]
    BoundTooSmall { bound: u64, required: u64 },
    #[error("the induced quotient map is ill-defined: f({m} + {set}) != {m} + f({set})")]
    IllDefinedQuotient { m: u64, set: NaturalSet },
    #[error("search survivor failed the independent additivity re-check at {x} + {y}")]
    Inconsistent { x: NaturalSet, y: NaturalSet },
}

/// Restrictions on where a member may be sent, each a known property of
/// genuine automorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Filter {
    /// Images keep the minimum and maximum.
    AlphaBeta,
    /// Images keep the largest consecutive difference.
    Gap,
    /// Sets of at most two elements are fixed.
    SmallSets,
    /// Discrete intervals are fixed.
    Intervals,
}

impl Filter {
    pub const ALL: [Filter; 4] = [
        Filter::AlphaBeta,
        Filter::Gap,
        Filter::SmallSets,
        Filter::Intervals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Filter::AlphaBeta => "alpha-beta",
            Filter::Gap => "gap",
            Filter::SmallSets => "small-sets",
            Filter::Intervals => "intervals",
        }
    }

    /// Whether this filter allows `x -> y`.
    pub fn admits(self, x: &NaturalSet, y: &NaturalSet) -> bool {
        match self {
            Filter::AlphaBeta => x.alpha() == y.alpha() && x.beta() == y.beta(),
            Filter::Gap => x.gap() == y.gap(),
            Filter::SmallSets => x.len() > 2 || x == y,
            Filter::Intervals => !x.is_interval() || x == y,
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Every filter on.
    Filtered,
    /// No filters; additivity propagation only.
    Raw,
}

impl SearchMode {
    pub fn name(self) -> &'static str {
        match self {
            SearchMode::Filtered => "filtered",
            SearchMode::Raw => "raw",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub filters: Vec<Filter>,
    /// Also propagate sums that leave the window: every decomposition of such a
    /// sum must have the same image sum, distinct sums distinct image sums, and
    /// none of them may land inside the window.
    pub coherence: bool,
    pub node_limit: Option<u64>,
    /// How many rejected-branch witnesses to keep in the report.
    pub witness_cap: usize,
}

impl SearchConfig {
    pub fn filtered() -> Self {
        Self {
            mode: SearchMode::Filtered,
            filters: Filter::ALL.to_vec(),
            coherence: true,
            node_limit: Some(50_000_000),
            witness_cap: 8,
        }
    }

    pub fn raw() -> Self {
        Self {
            mode: SearchMode::Raw,
            filters: Vec::new(),
            ..Self::filtered()
        }
    }

    pub fn for_mode(mode: SearchMode) -> Self {
        match mode {
            SearchMode::Filtered => Self::filtered(),
            SearchMode::Raw => Self::raw(),
        }
    }

    pub fn admits(&self, x: &NaturalSet, y: &NaturalSet) -> bool {
        self.filters.iter().all(|f| f.admits(x, y))
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self::filtered()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapClass {
    Identity,
    Sigma,
    Unclassified,
}

impl MapClass {
    pub fn name(self) -> &'static str {
        match self {
            MapClass::Identity => "identity",
            MapClass::Sigma => "sigma",
            MapClass::Unclassified => "unclassified",
        }
    }
}

pub(crate) fn sorted_filters(filters: &[Filter]) -> Vec<Filter> {
    let mut v = filters.to_vec();
    v.sort();
    v.dedup();
    v
}
