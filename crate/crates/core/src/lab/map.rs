use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{LabError, MapClass};
use crate::power::{sigma, WindowCarrier};
use crate::set::NaturalSet;

/// A partial injective map on the members of a window carrier.
#[derive(Debug, Clone)]
pub struct CandidateMap<'c> {
    carrier: &'c WindowCarrier,
    table: Vec<Option<usize>>,
}

impl<'c> CandidateMap<'c> {
    pub fn identity(carrier: &'c WindowCarrier) -> Self {
        Self {
            carrier,
            table: (0..carrier.len()).map(Some).collect(),
        }
    }

    /// `sigma` restricted to the members whose image stays in the carrier.
    pub fn sigma(carrier: &'c WindowCarrier) -> Self {
        Self::from_fn(carrier, |x| Some(sigma(x))).expect("sigma is an involution")
    }

    /// Tabulates `f`, leaving a member undefined when `f` returns `None` or an
    /// image outside the carrier.
    pub fn from_fn(
        carrier: &'c WindowCarrier,
        f: impl Fn(&NaturalSet) -> Option<NaturalSet>,
    ) -> Result<Self, LabError> {
        let table = carrier
            .members()
            .iter()
            .map(|x| f(x).and_then(|y| carrier.index_of(&y)))
            .collect();
        Self::from_table(carrier, table)
    }

    pub fn from_table(
        carrier: &'c WindowCarrier,
        table: Vec<Option<usize>>,
    ) -> Result<Self, LabError> {
        if table.len() != carrier.len() {
            return Err(LabError::TableLength {
                got: table.len(),
                expected: carrier.len(),
            });
        }
        let mut seen: Vec<Option<usize>> = vec![None; carrier.len()];
        for (i, img) in table.iter().enumerate() {
            let Some(j) = *img else { continue };
            if j >= carrier.len() {
                return Err(LabError::TableLength {
                    got: j + 1,
                    expected: carrier.len(),
                });
            }
            if let Some(prev) = seen[j] {
                return Err(LabError::NotInjective {
                    first: carrier.get(prev).clone(),
                    second: carrier.get(i).clone(),
                });
            }
            seen[j] = Some(i);
        }
        Ok(Self { carrier, table })
    }

    /// A total map from an image-index list.
    pub fn from_images(carrier: &'c WindowCarrier, images: &[usize]) -> Result<Self, LabError> {
        Self::from_table(carrier, images.iter().map(|&i| Some(i)).collect())
    }

    /// Exchanges the images of `a` and `b`.
    pub fn swapped(mut self, a: &NaturalSet, b: &NaturalSet) -> Result<Self, LabError> {
        let ia = self.require_index(a)?;
        let ib = self.require_index(b)?;
        self.table.swap(ia, ib);
        Ok(self)
    }

    /// Redefines the image of `x`; fails if that breaks injectivity.
    pub fn with_image(self, x: &NaturalSet, y: &NaturalSet) -> Result<Self, LabError> {
        let ix = self.require_index(x)?;
        let iy = self.require_index(y)?;
        let mut table = self.table;
        table[ix] = Some(iy);
        Self::from_table(self.carrier, table)
    }

    fn require_index(&self, x: &NaturalSet) -> Result<usize, LabError> {
        self.carrier
            .index_of(x)
            .ok_or_else(|| LabError::MissingMember { set: x.clone() })
    }

    pub fn carrier(&self) -> &'c WindowCarrier {
        self.carrier
    }

    pub fn table(&self) -> &[Option<usize>] {
        &self.table
    }

    pub fn image_index(&self, i: usize) -> Option<usize> {
        self.table[i]
    }

    /// Image of a carrier member, if both are known.
    pub fn image(&self, x: &NaturalSet) -> Option<&'c NaturalSet> {
        let i = self.carrier.index_of(x)?;
        self.table[i].map(|j| self.carrier.get(j))
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    /// Defined `(X, f(X))` pairs in carrier order.
    pub fn pairs(&self) -> impl Iterator<Item = (&'c NaturalSet, &'c NaturalSet)> + '_ {
        let carrier = self.carrier;
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(i, j)| j.map(|j| (carrier.get(i), carrier.get(j))))
    }

    pub fn classify(&self) -> MapClass {
        if !self.is_total() {
            return MapClass::Unclassified;
        }
        if self.table.iter().enumerate().all(|(i, j)| *j == Some(i)) {
            MapClass::Identity
        } else if self.pairs().all(|(x, y)| sigma(x) == *y) {
            MapClass::Sigma
        } else {
            MapClass::Unclassified
        }
    }
}

/// A failed instance of `f(X + Y) = f(X) + f(Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub x: NaturalSet,
    pub y: NaturalSet,
    pub sum: NaturalSet,
    pub image_of_sum: NaturalSet,
    pub sum_of_images: NaturalSet,
}

/// Every pair `X <= Y` (carrier order) with `X + Y` in the carrier and `f`
/// defined on `X`, `Y` and `X + Y` where `f(X) + f(Y) != f(X + Y)`.
pub fn check_additivity(f: &CandidateMap<'_>) -> Vec<Violation> {
    let carrier = f.carrier();
    let members = carrier.members();
    let mut out = Vec::new();
    for i in 0..members.len() {
        let Some(fi) = f.image_index(i) else { continue };
        for j in i..members.len() {
            let (x, y) = (&members[i], &members[j]);
            if x.beta() + y.beta() > carrier.bound() {
                continue;
            }
            let Some(fj) = f.image_index(j) else { continue };
            let Ok(sum) = x.add(y) else { continue };
            let Some(s) = carrier.index_of(&sum) else {
                continue;
            };
            let Some(fs) = f.image_index(s) else { continue };
            let Ok(rhs) = members[fi].add(&members[fj]) else {
                continue;
            };
            if rhs != members[fs] {
                out.push(Violation {
                    x: x.clone(),
                    y: y.clone(),
                    sum,
                    image_of_sum: members[fs].clone(),
                    sum_of_images: rhs,
                });
            }
        }
    }
    out
}

/// Extrema of `f({k})` and `f([[k, k+1]])` with `k` the critical element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasuredParams {
    pub s: u64,
    pub t: u64,
    pub a: u64,
    pub b: u64,
}

pub fn measure_params(f: &CandidateMap<'_>) -> Result<MeasuredParams, LabError> {
    let k = f.carrier().semigroup().critical();
    let point = NaturalSet::singleton(k);
    let pair = NaturalSet::interval(k, k + 1)?;
    let image = |x: &NaturalSet| -> Result<&NaturalSet, LabError> {
        let i = f
            .carrier()
            .index_of(x)
            .ok_or_else(|| LabError::MissingMember { set: x.clone() })?;
        f.image_index(i)
            .map(|j| f.carrier().get(j))
            .ok_or_else(|| LabError::Undefined { set: x.clone() })
    };
    let fp = image(&point)?;
    let fq = image(&pair)?;
    Ok(MeasuredParams {
        s: fp.alpha(),
        t: fp.beta(),
        a: fq.alpha(),
        b: fq.beta(),
    })
}

/// Image-index lookup table keyed by set; used by the structural checks.
pub(crate) fn image_lookup<'c>(f: &CandidateMap<'c>) -> HashMap<&'c NaturalSet, &'c NaturalSet> {
    f.pairs().collect()
}
