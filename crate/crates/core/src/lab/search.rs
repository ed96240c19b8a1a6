use alloc::vec::Vec;

use super::engine::{self, BranchWitness, ConflictKind, Mask, Space};
use super::{
    check_additivity, sorted_filters, CandidateMap, Filter, LabError, MapClass, SearchConfig,
    SearchMode, MAX_SEARCH_BOUND,
};
use crate::power::WindowCarrier;
use crate::semigroup::NumericalSemigroup;
use crate::set::NaturalSet;

/// What the searched bijections act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchTarget {
    /// Members of a power-semigroup window.
    PowerSemigroup,
    /// Elements of the semigroup itself (as singletons).
    Elements,
}

impl SearchTarget {
    pub fn name(self) -> &'static str {
        match self {
            SearchTarget::PowerSemigroup => "power-semigroup",
            SearchTarget::Elements => "elements",
        }
    }
}

/// How much a report may be read into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// The window is checked against a known classification.
    WindowVerification,
    /// Reduced windows over semigroups other than `N`, where no classification
    /// is known: the survivors describe this bound only.
    BoundedFinding,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::WindowVerification => "window-verification",
            Claim::BoundedFinding => "bounded-finding",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survivor {
    pub class: MapClass,
    /// `images[i]` is the index of the image of `members[i]`.
    pub images: Vec<usize>,
}

/// A rejected branch: assigning `member -> image` (or finding `member` with no
/// candidates left) failed for `reason`, at the sum of `pair` when one applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectionWitness {
    pub member: NaturalSet,
    pub image: Option<NaturalSet>,
    pub reason: ConflictKind,
    pub pair: Option<(NaturalSet, NaturalSet)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub semigroup: NumericalSemigroup,
    pub bound: u64,
    pub reduced: bool,
    pub target: SearchTarget,
    pub mode: SearchMode,
    pub filters: Vec<Filter>,
    pub coherence: bool,
    pub claim: Claim,
    pub members: Vec<NaturalSet>,
    pub survivors: Vec<Survivor>,
    pub constraints_checked: u64,
    pub nodes: u64,
    pub witnesses: Vec<RejectionWitness>,
}

impl SearchReport {
    pub fn classes(&self) -> Vec<MapClass> {
        self.survivors.iter().map(|s| s.class).collect()
    }

    /// `(X, f(X))` pairs of a survivor.
    pub fn table(&self, survivor: &Survivor) -> Vec<(&NaturalSet, &NaturalSet)> {
        survivor
            .images
            .iter()
            .enumerate()
            .map(|(i, &j)| (&self.members[i], &self.members[j]))
            .collect()
    }

    /// Rebuilds a survivor as a map on `carrier`, which must be the searched one.
    pub fn survivor_map<'c>(
        &self,
        carrier: &'c WindowCarrier,
        survivor: &Survivor,
    ) -> Result<CandidateMap<'c>, LabError> {
        CandidateMap::from_images(carrier, &survivor.images)
    }
}

fn mask_of(x: &NaturalSet) -> Mask {
    x.iter().fold(0, |m, e| m | 1 << e)
}

fn witnesses(members: &[NaturalSet], raw: &[BranchWitness]) -> Vec<RejectionWitness> {
    raw.iter()
        .map(|w| RejectionWitness {
            member: members[w.member as usize].clone(),
            image: members.get(w.image as usize).cloned(),
            reason: w.conflict.kind,
            pair: w
                .conflict
                .pair
                .map(|(a, b)| (members[a as usize].clone(), members[b as usize].clone())),
        })
        .collect()
}

fn run(space: &Space, config: &SearchConfig) -> Result<engine::Outcome, LabError> {
    engine::solve(
        space,
        config.coherence,
        config.node_limit,
        config.witness_cap,
    )
    .map_err(|_| LabError::NodeLimit {
        limit: config.node_limit.unwrap_or(u64::MAX),
    })
}

/// Every bijection of the carrier that keeps all in-window sums, restricted by
/// the configured filters. Survivors are sorted by their image tables and each
/// is re-checked with [`check_additivity`].
pub fn search_automorphisms(
    carrier: &WindowCarrier,
    config: &SearchConfig,
) -> Result<SearchReport, LabError> {
    if carrier.bound() > MAX_SEARCH_BOUND {
        return Err(LabError::BoundTooLarge {
            bound: carrier.bound(),
            max: MAX_SEARCH_BOUND,
        });
    }
    let members = carrier.members();
    let masks: Vec<Mask> = members.iter().map(mask_of).collect();
    let domains: Vec<Vec<u32>> = members
        .iter()
        .map(|x| {
            (0..members.len() as u32)
                .filter(|&j| config.admits(x, &members[j as usize]))
                .collect()
        })
        .collect();
    let outcome = run(&Space { masks, domains }, config)?;

    let mut survivors = Vec::with_capacity(outcome.solutions.len());
    for sol in &outcome.solutions {
        let images: Vec<usize> = sol.iter().map(|&j| j as usize).collect();
        let map = CandidateMap::from_images(carrier, &images)?;
        if let Some(v) = check_additivity(&map).into_iter().next() {
            return Err(LabError::Inconsistent { x: v.x, y: v.y });
        }
        survivors.push(Survivor {
            class: map.classify(),
            images,
        });
    }
    survivors.sort_by(|a, b| a.images.cmp(&b.images));

    let semigroup = carrier.semigroup().clone();
    let claim = if carrier.reduced() && !semigroup.is_naturals() {
        Claim::BoundedFinding
    } else {
        Claim::WindowVerification
    };
    Ok(SearchReport {
        semigroup,
        bound: carrier.bound(),
        reduced: carrier.reduced(),
        target: SearchTarget::PowerSemigroup,
        mode: config.mode,
        filters: sorted_filters(&config.filters),
        coherence: config.coherence,
        claim,
        members: members.to_vec(),
        survivors,
        constraints_checked: outcome.constraints_checked,
        nodes: outcome.nodes,
        witnesses: witnesses(members, &outcome.witnesses),
    })
}

/// Bijections of `S ∩ [[k, bound]]` with `f(x + y) = f(x) + f(y)` whenever
/// `x + y <= bound`, for `S = [[k, inf))`.
pub fn element_automorphism_search(
    semigroup: &NumericalSemigroup,
    bound: u64,
) -> Result<SearchReport, LabError> {
    if !semigroup.is_interval() {
        return Err(LabError::NotInterval);
    }
    let k = semigroup.min_element();
    let required = 2 * k + 2;
    if bound < required {
        return Err(LabError::BoundTooSmall { bound, required });
    }
    if bound > MAX_SEARCH_BOUND {
        return Err(LabError::BoundTooLarge {
            bound,
            max: MAX_SEARCH_BOUND,
        });
    }
    let config = SearchConfig::raw();
    let members: Vec<NaturalSet> = (k..=bound).map(NaturalSet::singleton).collect();
    let n = members.len() as u32;
    let space = Space {
        masks: members.iter().map(mask_of).collect(),
        domains: (0..n).map(|_| (0..n).collect()).collect(),
    };
    let outcome = run(&space, &config)?;

    let mut survivors: Vec<Survivor> = outcome
        .solutions
        .iter()
        .map(|sol| {
            let images: Vec<usize> = sol.iter().map(|&j| j as usize).collect();
            let class = if images.iter().enumerate().all(|(i, &j)| i == j) {
                MapClass::Identity
            } else {
                MapClass::Unclassified
            };
            Survivor { class, images }
        })
        .collect();
    survivors.sort_by(|a, b| a.images.cmp(&b.images));

    Ok(SearchReport {
        semigroup: semigroup.clone(),
        bound,
        reduced: false,
        target: SearchTarget::Elements,
        mode: SearchMode::Raw,
        filters: Vec::new(),
        coherence: config.coherence,
        claim: Claim::WindowVerification,
        witnesses: witnesses(&members, &outcome.witnesses),
        members,
        survivors,
        constraints_checked: outcome.constraints_checked,
        nodes: outcome.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::DEFAULT_CARRIER_CAP;

    fn carrier(s: &NumericalSemigroup, b: u64, reduced: bool) -> WindowCarrier {
        WindowCarrier::enumerate(s, b, reduced, DEFAULT_CARRIER_CAP).unwrap()
    }

    #[test]
    fn naturals_small_windows_filtered() {
        let n = NumericalSemigroup::naturals();
        for b in 1..=6 {
            let w = carrier(&n, b, false);
            let r = search_automorphisms(&w, &SearchConfig::filtered()).unwrap();
            let expected = if b < 3 {
                alloc::vec![MapClass::Identity]
            } else {
                alloc::vec![MapClass::Identity, MapClass::Sigma]
            };
            assert_eq!(r.classes(), expected, "bound {b}");
        }
    }

    #[test]
    fn raw_mode_tiny_window() {
        let n = NumericalSemigroup::naturals();
        let w = carrier(&n, 3, false);
        let r = search_automorphisms(&w, &SearchConfig::raw()).unwrap();
        assert!(r.classes().contains(&MapClass::Identity));
        assert!(r.classes().contains(&MapClass::Sigma));
        assert!(r.filters.is_empty());
    }

    #[test]
    fn bound_limit() {
        let s = NumericalSemigroup::from_generators(&[40, 41], true).unwrap();
        let w = carrier(&s, 64, false);
        assert!(matches!(
            search_automorphisms(&w, &SearchConfig::filtered()),
            Err(LabError::BoundTooLarge { .. })
        ));
    }

    #[test]
    fn element_search_preconditions() {
        let s35 = NumericalSemigroup::from_generators(&[3, 5], true).unwrap();
        assert_eq!(
            element_automorphism_search(&s35, 20),
            Err(LabError::NotInterval)
        );
        assert_eq!(
            element_automorphism_search(&NumericalSemigroup::interval(3), 7),
            Err(LabError::BoundTooSmall {
                bound: 7,
                required: 8
            })
        );
    }

    #[test]
    fn element_search_small() {
        let r = element_automorphism_search(&NumericalSemigroup::interval(0), 10).unwrap();
        assert_eq!(r.classes(), alloc::vec![MapClass::Identity]);
        assert_eq!(r.target, SearchTarget::Elements);
    }
}
