//! Serializable reports. Text output is rendered from the same structs, so the
//! two formats always carry the same values.

use std::fmt::{self, Display, Formatter};

use semipower_core::lab::{LemmaOutcome, LemmaResult, Obstruction, SearchReport};
use semipower_core::{NaturalSet, NumericalSemigroup};
use serde::{Deserialize, Serialize};

fn elems(x: &NaturalSet) -> Vec<u64> {
    x.elements().to_vec()
}

struct Literal<'a>(&'a [u64]);

impl Display for Literal<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(none)");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemigroupJson {
    Generators { generators: Vec<u64>, monoid: bool },
    Complement { gaps: Vec<u64>, contains_zero: bool },
}

impl From<&NumericalSemigroup> for SemigroupJson {
    fn from(s: &NumericalSemigroup) -> Self {
        match s.generators() {
            Some(g) => SemigroupJson::Generators {
                generators: g.to_vec(),
                monoid: s.contains_zero(),
            },
            None => SemigroupJson::Complement {
                gaps: s.gaps().to_vec(),
                contains_zero: s.contains_zero(),
            },
        }
    }
}

impl Display for SemigroupJson {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            SemigroupJson::Generators { generators, monoid } => {
                write!(f, "<{}>", Literal(generators))?;
                if *monoid {
                    f.write_str(" monoid")?;
                }
                Ok(())
            }
            SemigroupJson::Complement {
                gaps,
                contains_zero,
            } => {
                let k = gaps.len() as u64 + 1;
                let interval = gaps.iter().copied().eq(1..k);
                match (interval, contains_zero) {
                    (true, true) if gaps.is_empty() => f.write_str("N"),
                    (true, false) => write!(f, "[[{k},inf))"),
                    (_, true) => write!(f, "N \\ {{{}}}", Literal(gaps)),
                    (_, false) => write!(f, "N \\ {{0,{}}}", Literal(gaps)),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierJson {
    pub semigroup: SemigroupJson,
    pub bound: u64,
    pub reduced: bool,
    pub size: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub semigroup: SemigroupJson,
    pub gaps: Vec<u64>,
    pub contains_zero: bool,
    pub frobenius: Option<u64>,
    pub critical: u64,
    pub min_element: u64,
    pub is_interval: bool,
    pub obstruction_witness: Option<u64>,
    pub window: Option<CarrierJson>,
}

impl InfoReport {
    pub fn new(s: &NumericalSemigroup, window: Option<(u64, bool, u128)>) -> Self {
        Self {
            semigroup: s.into(),
            gaps: s.gaps().to_vec(),
            contains_zero: s.contains_zero(),
            frobenius: s.frobenius(),
            critical: s.critical(),
            min_element: s.min_element(),
            is_interval: s.is_interval(),
            obstruction_witness: s.interval_obstruction_witness(),
            window: window.map(|(bound, reduced, size)| CarrierJson {
                semigroup: s.into(),
                bound,
                reduced,
                size,
            }),
        }
    }
}

impl Display for InfoReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "semigroup: {}", self.semigroup)?;
        writeln!(f, "gaps: {}", Literal(&self.gaps))?;
        writeln!(f, "contains 0: {}", self.contains_zero)?;
        match self.frobenius {
            Some(n) => writeln!(f, "F: {n}")?,
            None => writeln!(f, "F: none")?,
        }
        writeln!(f, "theta: {}", self.critical)?;
        writeln!(f, "alpha: {}", self.min_element)?;
        writeln!(f, "interval: {}", self.is_interval)?;
        if let Some(m) = self.obstruction_witness {
            writeln!(f, "obstruction witness: {m}")?;
        }
        if let Some(w) = &self.window {
            let kind = if w.reduced { "reduced" } else { "full" };
            writeln!(f, "window: bound {}, {kind}, {} members", w.bound, w.size)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumsetReport {
    pub operands: Vec<Vec<u64>>,
    pub sum: Vec<u64>,
}

impl SumsetReport {
    pub fn new(operands: &[NaturalSet], sum: &NaturalSet) -> Self {
        Self {
            operands: operands.iter().map(elems).collect(),
            sum: elems(sum),
        }
    }
}

impl Display for SumsetReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", Literal(&self.sum))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapEntry {
    pub set: Vec<u64>,
    pub gap_set: Vec<u64>,
    pub gap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub sets: Vec<GapEntry>,
}

impl GapReport {
    pub fn new(sets: &[NaturalSet]) -> Self {
        Self {
            sets: sets
                .iter()
                .map(|x| GapEntry {
                    set: elems(x),
                    gap_set: x.gap_set(),
                    gap: x.gap(),
                })
                .collect(),
        }
    }
}

impl Display for GapReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for e in &self.sets {
            writeln!(
                f,
                "{}: gap set {{{}}}, gap {}",
                Literal(&e.set),
                Literal(&e.gap_set),
                e.gap
            )?;
        }
        Ok(())
    }
}

/// Set/image pairs, shared by `sigma` and `phi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageEntry {
    pub set: Vec<u64>,
    pub image: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageReport {
    pub map: String,
    pub images: Vec<ImageEntry>,
}

impl ImageReport {
    pub fn new(map: impl Into<String>, pairs: &[(NaturalSet, NaturalSet)]) -> Self {
        Self {
            map: map.into(),
            images: pairs
                .iter()
                .map(|(x, y)| ImageEntry {
                    set: elems(x),
                    image: elems(y),
                })
                .collect(),
        }
    }
}

impl Display for ImageReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for e in &self.images {
            writeln!(f, "{}", Literal(&e.image))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorJson {
    pub class: String,
    pub table: Vec<(Vec<u64>, Vec<u64>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchJson {
    pub semigroup: SemigroupJson,
    pub bound: u64,
    pub reduced: bool,
    pub target: String,
    pub mode: String,
    pub filters: Vec<String>,
    pub coherence: bool,
    pub claim: String,
    pub carrier_size: usize,
    pub survivors: Vec<SurvivorJson>,
    pub constraints_checked: u64,
    pub nodes: u64,
}

impl From<&SearchReport> for SearchJson {
    fn from(r: &SearchReport) -> Self {
        Self {
            semigroup: (&r.semigroup).into(),
            bound: r.bound,
            reduced: r.reduced,
            target: r.target.name().into(),
            mode: r.mode.name().into(),
            filters: r.filters.iter().map(|f| f.name().into()).collect(),
            coherence: r.coherence,
            claim: r.claim.name().into(),
            carrier_size: r.members.len(),
            survivors: r
                .survivors
                .iter()
                .map(|s| SurvivorJson {
                    class: s.class.name().into(),
                    table: r
                        .table(s)
                        .into_iter()
                        .map(|(x, y)| (elems(x), elems(y)))
                        .collect(),
                })
                .collect(),
            constraints_checked: r.constraints_checked,
            nodes: r.nodes,
        }
    }
}

impl Display for SearchJson {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "semigroup: {}", self.semigroup)?;
        let kind = if self.reduced { "reduced" } else { "full" };
        writeln!(
            f,
            "window: {} of bound {}, {kind}, {} members",
            self.target, self.bound, self.carrier_size
        )?;
        if self.filters.is_empty() {
            writeln!(f, "mode: {}", self.mode)?;
        } else {
            writeln!(f, "mode: {} ({})", self.mode, self.filters.join(", "))?;
        }
        writeln!(f, "claim: {}", self.claim)?;
        writeln!(f, "constraints checked: {}", self.constraints_checked)?;
        writeln!(f, "nodes: {}", self.nodes)?;
        writeln!(f, "survivors: {}", self.survivors.len())?;
        for s in &self.survivors {
            writeln!(f, "  {}", s.class)?;
            if s.class == "unclassified" {
                for (x, y) in s.table.iter().filter(|(x, y)| x != y) {
                    writeln!(f, "    {} -> {}", Literal(x), Literal(y))?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionJson {
    pub m: u64,
    pub k: u64,
    pub set: Vec<u64>,
    pub image: Vec<u64>,
    pub missing: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub semigroup: SemigroupJson,
    pub obstruction: Option<ObstructionJson>,
}

impl ObstructionReport {
    pub fn new(s: &NumericalSemigroup, o: Option<&Obstruction>) -> Self {
        Self {
            semigroup: s.into(),
            obstruction: o.map(|o| ObstructionJson {
                m: o.m,
                k: o.k,
                set: elems(&o.set),
                image: elems(&o.image),
                missing: o.missing,
            }),
        }
    }
}

impl Display for ObstructionReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "semigroup: {}", self.semigroup)?;
        match &self.obstruction {
            None => writeln!(f, "no obstruction: S is an interval"),
            Some(o) => {
                writeln!(f, "m: {}", o.m)?;
                writeln!(f, "k: {}", o.k)?;
                writeln!(f, "X: {}", Literal(&o.set))?;
                writeln!(f, "sigma(X): {}", Literal(&o.image))?;
                writeln!(f, "{} is not in S", o.missing)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub check: String,
    pub outcome: String,
    pub detail: Option<String>,
}

impl From<&LemmaResult> for CheckJson {
    fn from(r: &LemmaResult) -> Self {
        let (outcome, detail) = match &r.outcome {
            LemmaOutcome::Pass => ("pass", None),
            LemmaOutcome::NotApplicable(d) => ("not-applicable", Some(d.clone())),
            LemmaOutcome::Fail(d) => ("fail", Some(d.clone())),
        };
        Self {
            check: r.lemma.name().into(),
            outcome: outcome.into(),
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorChecks {
    pub class: String,
    pub checks: Vec<CheckJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientJson {
    pub classes: usize,
    pub reduced_members: usize,
    pub bijective: bool,
    pub additivity_violations: usize,
    pub collisions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub semigroup: SemigroupJson,
    pub bound: u64,
    pub passed: bool,
    pub constraints_checked: u64,
    pub survivors: Vec<SurvivorChecks>,
    pub quotient: Option<QuotientJson>,
}

impl Display for VerifyReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "semigroup: {}", self.semigroup)?;
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "constraints checked: {}", self.constraints_checked)?;
        for s in &self.survivors {
            writeln!(f, "{}:", s.class)?;
            for c in &s.checks {
                match &c.detail {
                    Some(d) => writeln!(f, "  {} {}: {d}", c.outcome, c.check)?,
                    None => writeln!(f, "  {} {}", c.outcome, c.check)?,
                }
            }
        }
        if let Some(q) = &self.quotient {
            writeln!(
                f,
                "quotient: {} classes onto {} reduced members, bijective {}, {} additivity violations, {} collisions",
                q.classes, q.reduced_members, q.bijective, q.additivity_violations, q.collisions
            )?;
        }
        writeln!(f, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}
