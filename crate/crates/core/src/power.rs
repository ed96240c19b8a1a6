//! Finite windows of the power semigroup `P(S)` and the reduced monoid `P0(S)`,
//! the involution `sigma`, translation classes and the normalizing map `phi`.

use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::semigroup::NumericalSemigroup;
use crate::set::{NaturalSet, SetError};

pub const DEFAULT_CARRIER_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WindowError {
    #[error(
        "bound {bound} is below the minimum element {min} of the semigroup; the window is empty"
    )]
    BoundBelowMinimum { bound: u64, min: u64 },
    #[error("the reduced window needs 0 in the semigroup")]
    ReducedWithoutZero,
    #[error("window would hold {size} members, over the cap of {cap} (raise --max-carrier or lower --bound)")]
    CapExceeded { size: u128, cap: usize },
}

/// All `X ⊆ S` with `max(X) <= bound` (and `0 ∈ X` when reduced), in canonical
/// order: by maximum, then minimum, then lexicographically.
#[derive(Debug, Clone)]
pub struct WindowCarrier {
    semigroup: NumericalSemigroup,
    bound: u64,
    reduced: bool,
    members: Vec<NaturalSet>,
    index: HashMap<NaturalSet, usize>,
}

impl WindowCarrier {
    pub fn enumerate(
        semigroup: &NumericalSemigroup,
        bound: u64,
        reduced: bool,
        cap: usize,
    ) -> Result<Self, WindowError> {
        let min = semigroup.min_element();
        if bound < min {
            return Err(WindowError::BoundBelowMinimum { bound, min });
        }
        if reduced && !semigroup.contains_zero() {
            return Err(WindowError::ReducedWithoutZero);
        }
        let size = Self::expected_size(semigroup, bound, reduced);
        if size > cap as u128 {
            return Err(WindowError::CapExceeded { size, cap });
        }

        let base = semigroup.members_up_to(bound);
        let (fixed, free): (&[u64], &[u64]) = if reduced {
            (&base[..1], &base[1..])
        } else {
            (&[], &base[..])
        };
        let mut members = Vec::with_capacity(size as usize);
        for bits in 0u64..(1u64 << free.len()) {
            let mut elems: Vec<u64> = fixed.to_vec();
            elems.extend(
                free.iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &x)| x),
            );
            if let Ok(set) = NaturalSet::from_sorted(elems) {
                members.push(set);
            }
        }
        members.sort_by(|a, b| a.canonical_cmp(b));
        let index = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(Self {
            semigroup: semigroup.clone(),
            bound,
            reduced,
            members,
            index,
        })
    }

    /// `2^|S ∩ [[0,B]]| - 1`, or `2^(|S ∩ [[0,B]]| - 1)` when reduced.
    pub fn expected_size(semigroup: &NumericalSemigroup, bound: u64, reduced: bool) -> u128 {
        let count = semigroup.members_up_to(bound).len() as u32;
        let pow = |e: u32| 1u128.checked_shl(e).unwrap_or(u128::MAX);
        if reduced {
            pow(count.saturating_sub(1))
        } else {
            pow(count).saturating_sub(1)
        }
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    pub fn members(&self) -> &[NaturalSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> &NaturalSet {
        &self.members[i]
    }

    pub fn index_of(&self, x: &NaturalSet) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Index of `members[i] + members[j]`, if the sum stays in the window.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        let (x, y) = (&self.members[i], &self.members[j]);
        if x.beta() + y.beta() > self.bound {
            return None;
        }
        self.index_of(&x.add(y).ok()?)
    }
}

/// `X -> max(X) - X + min(X)`. Preserves minimum, maximum and gap.
pub fn sigma(x: &NaturalSet) -> NaturalSet {
    let (a, b) = (x.alpha(), x.beta());
    // b - (e - a) == a + b - e without the intermediate overflow
    let elems = x.elements().iter().rev().map(|&e| b - (e - a)).collect();
    NaturalSet::from_sorted(elems).expect("reversal of a strictly increasing sequence")
}

/// `X ~ Y` iff one is an integer shift of the other.
pub fn equivalent(x: &NaturalSet, y: &NaturalSet) -> bool {
    x.len() == y.len() && x.normalize() == y.normalize()
}

/// A translation class, represented by its member with minimum `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquivClassRep(NaturalSet);

impl EquivClassRep {
    /// Accepts only sets containing `0`.
    pub fn new(rep: NaturalSet) -> Option<Self> {
        (rep.alpha() == 0).then_some(Self(rep))
    }

    pub fn rep(&self) -> &NaturalSet {
        &self.0
    }

    pub fn into_inner(self) -> NaturalSet {
        self.0
    }

    /// Class addition; the sum of two normalized sets is normalized.
    pub fn add(&self, other: &Self) -> Result<Self, SetError> {
        Ok(Self(self.0.add(&other.0)?))
    }
}

/// `phi(class of X) = X - min(X)`.
pub fn phi(x: &NaturalSet) -> EquivClassRep {
    EquivClassRep(x.normalize())
}

/// The canonical class member `k + rep` inside `P([[k, inf)))`.
pub fn phi_inv(rep: &EquivClassRep, k: u64) -> Result<NaturalSet, SetError> {
    rep.0.translate(k)
}

/// Result of comparing the classes of an interval window with the reduced
/// window of `N` through `phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientAudit {
    pub classes: usize,
    pub reduced_members: usize,
    /// `phi` hits every reduced member exactly once.
    pub bijective: bool,
    /// `(X, Y)` pairs with `X + Y` in the window where `phi(X + Y) != phi(X) + phi(Y)`.
    pub additivity_violations: Vec<(NaturalSet, NaturalSet)>,
    /// Distinct classes sent to the same representative.
    pub collisions: Vec<(NaturalSet, NaturalSet)>,
}

impl QuotientAudit {
    pub fn passed(&self) -> bool {
        self.bijective && self.additivity_violations.is_empty() && self.collisions.is_empty()
    }
}

/// Exhaustively checks `phi` between the classes of the `S_theta` part of
/// `carrier` (members with minimum at least the critical element `k`, each class
/// represented by its member `k + rep`) and the reduced window of `N` with
/// bound `B - k`.
pub fn audit_quotient(carrier: &WindowCarrier, cap: usize) -> Result<QuotientAudit, WindowError> {
    let k = carrier.semigroup().critical();
    let top = carrier.bound().saturating_sub(k);
    let reduced = WindowCarrier::enumerate(&NumericalSemigroup::naturals(), top, true, cap)?;

    let upper: Vec<&NaturalSet> = carrier
        .members()
        .iter()
        .filter(|x| x.alpha() >= k)
        .collect();
    let mut classes: HashMap<NaturalSet, NaturalSet> = HashMap::new();
    let mut collisions = Vec::new();
    for x in &upper {
        // canonical members are the ones sitting at k
        if x.alpha() != k {
            continue;
        }
        let image = phi(x).into_inner();
        if let Some(prev) = classes.insert(image, (*x).clone()) {
            collisions.push((prev, (*x).clone()));
        }
    }
    // every member of the upper window must land on a canonical class
    let mut hit = alloc::vec![false; reduced.len()];
    let mut bijective = true;
    for x in &upper {
        match reduced.index_of(phi(x).rep()) {
            Some(i) => hit[i] = true,
            None => bijective = false,
        }
        if !classes.contains_key(phi(x).rep()) {
            bijective = false;
        }
    }
    bijective &= hit.iter().all(|&h| h) && classes.len() == reduced.len();

    let mut additivity_violations = Vec::new();
    for (i, x) in upper.iter().enumerate() {
        for y in &upper[i..] {
            if x.beta() + y.beta() > carrier.bound() {
                continue;
            }
            let Ok(sum) = x.add(y) else { continue };
            let lhs = phi(&sum);
            let rhs = phi(x).add(&phi(y));
            if rhs.as_ref() != Ok(&lhs) {
                additivity_violations.push(((*x).clone(), (*y).clone()));
            }
        }
    }

    Ok(QuotientAudit {
        classes: classes.len(),
        reduced_members: reduced.len(),
        bijective,
        additivity_violations,
        collisions,
    })
}
