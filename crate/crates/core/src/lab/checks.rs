//! Structural properties that every automorphism of a power semigroup has,
//! evaluated on window maps.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::map::image_lookup;
use super::{
    measure_params, search_automorphisms, CandidateMap, LabError, MapClass, MeasuredParams,
    SearchConfig, SearchReport,
};
use crate::power::{phi, EquivClassRep, WindowCarrier, DEFAULT_CARRIER_CAP};
use crate::semigroup::NumericalSemigroup;
use crate::set::NaturalSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthFailure {
    /// `k` does not divide `s` (or `t`).
    Divisibility {
        param: &'static str,
        value: u64,
        k: u64,
    },
    /// The predicted minimum (or maximum) of `f(X)` is wrong.
    Extremum {
        which: &'static str,
        set: NaturalSet,
        image: NaturalSet,
        predicted: i128,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthVerdict {
    Pass,
    /// The critical element is 0 and the formulas divide by it.
    NotApplicable,
    Fail(GrowthFailure),
}

/// Checks `k | s`, `k | t` and, for every `X` where `f` is defined,
///
/// ```text
/// min f(X) = (a - s)(max X - min X) + (s/k) min X
/// max f(X) = (b - t)(max X - min X) + (t/k) min X
/// ```
///
/// with `k` the critical element of the carrier's semigroup.
pub fn verify_growth_formula(f: &CandidateMap<'_>, params: MeasuredParams) -> GrowthVerdict {
    let k = f.carrier().semigroup().critical();
    if k == 0 {
        return GrowthVerdict::NotApplicable;
    }
    let MeasuredParams { s, t, a, b } = params;
    for (param, value) in [("s", s), ("t", t)] {
        if value % k != 0 {
            return GrowthVerdict::Fail(GrowthFailure::Divisibility { param, value, k });
        }
    }
    let (s, t, a, b, k) = (s as i128, t as i128, a as i128, b as i128, k as i128);
    for (x, y) in f.pairs() {
        let width = x.span() as i128;
        let low = x.alpha() as i128;
        let predicted_alpha = (a - s) * width + s / k * low;
        let predicted_beta = (b - t) * width + t / k * low;
        for (which, predicted, actual) in [
            ("alpha", predicted_alpha, y.alpha()),
            ("beta", predicted_beta, y.beta()),
        ] {
            if predicted != actual as i128 {
                return GrowthVerdict::Fail(GrowthFailure::Extremum {
                    which,
                    set: x.clone(),
                    image: y.clone(),
                    predicted,
                });
            }
        }
    }
    GrowthVerdict::Pass
}

/// `f(m + X) != m + f(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivarianceFailure {
    pub m: u64,
    pub set: NaturalSet,
    pub expected: NaturalSet,
    pub got: NaturalSet,
}

/// `f(m + X) = m + f(X)` for every `m >= 1` and every `X ⊆ [[k, inf))` in the
/// carrier (k the critical element) with `m + X` in the carrier and `f`
/// defined on both. Returns the first failure in carrier order, smallest `m`
/// first.
pub fn translation_equivariance_check(f: &CandidateMap<'_>) -> Result<(), EquivarianceFailure> {
    let carrier = f.carrier();
    let k = carrier.semigroup().critical();
    let images = image_lookup(f);
    for (x, fx) in f.pairs() {
        if x.alpha() < k {
            continue;
        }
        for m in 1..=carrier.bound() - x.beta() {
            let Ok(shifted) = x.translate(m) else { break };
            let Some(&fs) = images.get(&shifted) else {
                continue;
            };
            let Ok(expected) = fx.translate(m) else {
                continue;
            };
            if *fs != expected {
                return Err(EquivarianceFailure {
                    m,
                    set: x.clone(),
                    expected,
                    got: fs.clone(),
                });
            }
        }
    }
    Ok(())
}

/// The map induced on translation classes, as representative pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    pairs: Vec<(EquivClassRep, EquivClassRep)>,
    lookup: HashMap<EquivClassRep, usize>,
}

impl QuotientMap {
    pub fn pairs(&self) -> &[(EquivClassRep, EquivClassRep)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, rep: &EquivClassRep) -> Option<&EquivClassRep> {
        self.lookup.get(rep).map(|&i| &self.pairs[i].1)
    }

    pub fn is_injective(&self) -> bool {
        let mut images: Vec<&EquivClassRep> = self.pairs.iter().map(|(_, y)| y).collect();
        images.sort_by(|a, b| a.rep().canonical_cmp(b.rep()));
        images.windows(2).all(|w| w[0] != w[1])
    }

    /// Class pairs whose sum is in the domain but whose images do not add up.
    pub fn additivity_violations(&self) -> Vec<(EquivClassRep, EquivClassRep)> {
        let mut out = Vec::new();
        for (i, (x, fx)) in self.pairs.iter().enumerate() {
            for (y, fy) in &self.pairs[i..] {
                let Ok(sum) = x.add(y) else { continue };
                let Some(fsum) = self.get(&sum) else { continue };
                if fx.add(fy).as_ref() != Ok(fsum) {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
        out
    }
}

/// `rep -> phi(f(k + rep))` for every class whose member `k + rep` is in the
/// carrier and has an image. Requires translation equivariance.
pub fn induced_quotient_map(f: &CandidateMap<'_>) -> Result<QuotientMap, LabError> {
    if let Err(w) = translation_equivariance_check(f) {
        return Err(LabError::IllDefinedQuotient { m: w.m, set: w.set });
    }
    let k = f.carrier().semigroup().critical();
    let pairs: Vec<(EquivClassRep, EquivClassRep)> = f
        .pairs()
        .filter(|(x, _)| x.alpha() == k)
        .map(|(x, y)| (phi(x), phi(y)))
        .collect();
    let lookup = pairs
        .iter()
        .enumerate()
        .map(|(i, (x, _))| (x.clone(), i))
        .collect();
    Ok(QuotientMap { pairs, lookup })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaId {
    ExtremaPreserved,
    GapPreserved,
    SmallSetsFixed,
    IntervalsFixed,
    GrowthFormula,
    RestrictionClosure,
    TranslationEquivariance,
    QuotientAutomorphism,
}

impl LemmaId {
    pub const ALL: [LemmaId; 8] = [
        LemmaId::ExtremaPreserved,
        LemmaId::GapPreserved,
        LemmaId::SmallSetsFixed,
        LemmaId::IntervalsFixed,
        LemmaId::GrowthFormula,
        LemmaId::RestrictionClosure,
        LemmaId::TranslationEquivariance,
        LemmaId::QuotientAutomorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::ExtremaPreserved => "extrema-preserved",
            LemmaId::GapPreserved => "gap-preserved",
            LemmaId::SmallSetsFixed => "small-sets-fixed",
            LemmaId::IntervalsFixed => "intervals-fixed",
            LemmaId::GrowthFormula => "growth-formula",
            LemmaId::RestrictionClosure => "restriction-closure",
            LemmaId::TranslationEquivariance => "translation-equivariance",
            LemmaId::QuotientAutomorphism => "quotient-automorphism",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaOutcome {
    Pass,
    NotApplicable(String),
    Fail(String),
}

impl LemmaOutcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, LemmaOutcome::Fail(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaResult {
    pub lemma: LemmaId,
    pub outcome: LemmaOutcome,
}

fn first_pair_failure<'c>(
    f: &CandidateMap<'c>,
    bad: impl Fn(&NaturalSet, &NaturalSet) -> bool,
) -> LemmaOutcome {
    match f.pairs().find(|(x, y)| bad(x, y)) {
        Some((x, y)) => LemmaOutcome::Fail(format!("{{{x}}} -> {{{y}}}")),
        None => LemmaOutcome::Pass,
    }
}

fn growth_outcome(f: &CandidateMap<'_>) -> LemmaOutcome {
    let k = f.carrier().semigroup().critical();
    if k == 0 {
        return LemmaOutcome::NotApplicable(String::from(
            "critical element is 0; extrema are checked directly",
        ));
    }
    let params = match measure_params(f) {
        Ok(p) => p,
        Err(e) => return LemmaOutcome::NotApplicable(format!("{e}")),
    };
    let expected = MeasuredParams {
        s: k,
        t: k,
        a: k,
        b: k + 1,
    };
    if params != expected {
        return LemmaOutcome::Fail(format!(
            "measured (s,t,a,b) = ({},{},{},{}), expected ({k},{k},{k},{})",
            params.s,
            params.t,
            params.a,
            params.b,
            k + 1
        ));
    }
    match verify_growth_formula(f, params) {
        GrowthVerdict::Pass => LemmaOutcome::Pass,
        GrowthVerdict::NotApplicable => LemmaOutcome::NotApplicable(String::from("k = 0")),
        GrowthVerdict::Fail(g) => LemmaOutcome::Fail(format!("{g:?}")),
    }
}

fn quotient_outcome(f: &CandidateMap<'_>) -> LemmaOutcome {
    match induced_quotient_map(f) {
        Err(e) => LemmaOutcome::Fail(format!("{e}")),
        Ok(q) if !q.is_injective() => {
            LemmaOutcome::Fail(String::from("induced map is not injective"))
        }
        Ok(q) => match q.additivity_violations().first() {
            Some((x, y)) => LemmaOutcome::Fail(format!(
                "induced map not additive at {{{}}} + {{{}}}",
                x.rep(),
                y.rep()
            )),
            None => LemmaOutcome::Pass,
        },
    }
}

/// Runs every structural check on one map.
pub fn check_lemmas(f: &CandidateMap<'_>) -> Vec<LemmaResult> {
    let k = f.carrier().semigroup().critical();
    LemmaId::ALL
        .iter()
        .map(|&lemma| {
            let outcome = match lemma {
                LemmaId::ExtremaPreserved => {
                    first_pair_failure(f, |x, y| x.alpha() != y.alpha() || x.beta() != y.beta())
                }
                LemmaId::GapPreserved => first_pair_failure(f, |x, y| x.gap() != y.gap()),
                LemmaId::SmallSetsFixed => first_pair_failure(f, |x, y| x.len() <= 2 && x != y),
                LemmaId::IntervalsFixed => first_pair_failure(f, |x, y| x.is_interval() && x != y),
                LemmaId::GrowthFormula => growth_outcome(f),
                LemmaId::RestrictionClosure => {
                    first_pair_failure(f, |x, y| x.alpha() >= k && y.alpha() < k)
                }
                LemmaId::TranslationEquivariance => match translation_equivariance_check(f) {
                    Ok(()) => LemmaOutcome::Pass,
                    Err(w) => LemmaOutcome::Fail(format!(
                        "f({} + {{{}}}) = {{{}}}, expected {{{}}}",
                        w.m, w.set, w.got, w.expected
                    )),
                },
                LemmaId::QuotientAutomorphism => quotient_outcome(f),
            };
            LemmaResult { lemma, outcome }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaSuiteReport {
    pub search: SearchReport,
    pub results: Vec<(MapClass, Vec<LemmaResult>)>,
}

impl LemmaSuiteReport {
    pub fn passed(&self) -> bool {
        self.results
            .iter()
            .all(|(_, rs)| rs.iter().all(|r| !r.outcome.is_fail()))
    }
}

/// Searches the window `{X ⊆ S : max X <= bound}` in filtered mode and runs
/// [`check_lemmas`] on every survivor.
pub fn lemma_suite(
    semigroup: &NumericalSemigroup,
    bound: u64,
) -> Result<LemmaSuiteReport, LabError> {
    let carrier = WindowCarrier::enumerate(semigroup, bound, false, DEFAULT_CARRIER_CAP)?;
    let search = search_automorphisms(&carrier, &SearchConfig::filtered())?;
    let mut results = Vec::new();
    for s in &search.survivors {
        let map = search.survivor_map(&carrier, s)?;
        results.push((s.class, check_lemmas(&map)));
    }
    Ok(LemmaSuiteReport { search, results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::sigma;

    fn set(s: &str) -> NaturalSet {
        s.parse().unwrap()
    }

    fn window(s: &NumericalSemigroup, b: u64) -> WindowCarrier {
        WindowCarrier::enumerate(s, b, false, DEFAULT_CARRIER_CAP).unwrap()
    }

    #[test]
    fn growth_formula_on_known_maps() {
        let w = window(&NumericalSemigroup::interval(2), 8);
        for f in [CandidateMap::identity(&w), CandidateMap::sigma(&w)] {
            let p = measure_params(&f).unwrap();
            assert_eq!(verify_growth_formula(&f, p), GrowthVerdict::Pass);
        }
        let n = window(&NumericalSemigroup::naturals(), 4);
        let f = CandidateMap::identity(&n);
        assert_eq!(
            verify_growth_formula(&f, measure_params(&f).unwrap()),
            GrowthVerdict::NotApplicable
        );
    }

    #[test]
    fn growth_formula_divisibility_failure() {
        let w = window(&NumericalSemigroup::interval(2), 6);
        let f = CandidateMap::identity(&w)
            .swapped(&set("2"), &set("3"))
            .unwrap();
        let p = measure_params(&f).unwrap();
        assert_eq!(p.s, 3);
        assert_eq!(
            verify_growth_formula(&f, p),
            GrowthVerdict::Fail(GrowthFailure::Divisibility {
                param: "s",
                value: 3,
                k: 2
            })
        );
    }

    #[test]
    fn growth_formula_extremum_failure() {
        let w = window(&NumericalSemigroup::interval(2), 6);
        let f = CandidateMap::identity(&w)
            .swapped(&set("2,5"), &set("3,5"))
            .unwrap();
        let p = measure_params(&f).unwrap();
        assert!(matches!(
            verify_growth_formula(&f, p),
            GrowthVerdict::Fail(GrowthFailure::Extremum { which: "alpha", .. })
        ));
    }

    #[test]
    fn equivariance() {
        let w = window(&NumericalSemigroup::naturals(), 5);
        assert!(translation_equivariance_check(&CandidateMap::sigma(&w)).is_ok());
        assert!(translation_equivariance_check(&CandidateMap::identity(&w)).is_ok());
        let f = CandidateMap::identity(&w)
            .swapped(&set("0,2,3"), &set("1,2,3"))
            .unwrap();
        let err = translation_equivariance_check(&f).unwrap_err();
        assert_eq!(err.m, 1);
        assert_eq!(err.set, set("0,1,2"));
        assert_eq!(err.got, set("0,2,3"));
        assert_eq!(err.expected, set("1,2,3"));
    }

    #[test]
    fn induced_map_of_sigma_is_reflection() {
        let w = window(&NumericalSemigroup::interval(2), 8);
        let q = induced_quotient_map(&CandidateMap::sigma(&w)).unwrap();
        assert_eq!(q.len(), 64);
        for (rep, img) in q.pairs() {
            let expected = rep.rep().reflect(rep.rep().beta()).unwrap();
            assert_eq!(img.rep(), &expected);
            assert_eq!(img.rep(), &sigma(rep.rep()));
        }
        assert!(q.is_injective());
        assert!(q.additivity_violations().is_empty());

        let id = induced_quotient_map(&CandidateMap::identity(&w)).unwrap();
        assert!(id.pairs().iter().all(|(a, b)| a == b));

        let bad = CandidateMap::identity(&w)
            .swapped(&set("3,4,6"), &set("3,5,6"))
            .unwrap();
        assert!(matches!(
            induced_quotient_map(&bad),
            Err(LabError::IllDefinedQuotient { .. })
        ));
    }

    #[test]
    fn lemma_checks_catch_injected_faults() {
        let w = window(&NumericalSemigroup::naturals(), 5);
        let ok = check_lemmas(&CandidateMap::sigma(&w));
        assert!(ok.iter().all(|r| !r.outcome.is_fail()), "{ok:?}");

        let gap_fault = CandidateMap::identity(&w)
            .swapped(&set("0,1,3"), &set("0,2,3"))
            .unwrap();
        let res = check_lemmas(&gap_fault);
        let failed: Vec<LemmaId> = res
            .iter()
            .filter(|r| r.outcome.is_fail())
            .map(|r| r.lemma)
            .collect();
        assert!(failed.contains(&LemmaId::TranslationEquivariance));
        assert!(!failed.contains(&LemmaId::GapPreserved));

        let small_fault = CandidateMap::identity(&w)
            .swapped(&set("0,2"), &set("0,1,2"))
            .unwrap();
        let failed: Vec<LemmaId> = check_lemmas(&small_fault)
            .iter()
            .filter(|r| r.outcome.is_fail())
            .map(|r| r.lemma)
            .collect();
        assert!(failed.contains(&LemmaId::SmallSetsFixed));
        assert!(failed.contains(&LemmaId::IntervalsFixed));
        assert!(failed.contains(&LemmaId::GapPreserved));
    }

    #[test]
    fn restriction_closure_fault() {
        let s = NumericalSemigroup::from_generators(&[3, 5], true).unwrap();
        let w = window(&s, 10);
        let f = CandidateMap::identity(&w)
            .swapped(&set("8,10"), &set("6,10"))
            .unwrap();
        let res = check_lemmas(&f);
        let closure = res
            .iter()
            .find(|r| r.lemma == LemmaId::RestrictionClosure)
            .unwrap();
        assert!(closure.outcome.is_fail());
    }
}
