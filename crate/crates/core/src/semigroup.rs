//! Numerical semigroups and monoids.
//!
//! A numerical semigroup is an additive subsemigroup of `N` with finite
//! complement. It is stored by its positive gaps plus a flag saying whether `0`
//! is a member; all other invariants (Frobenius number, critical element,
//! minimum) are derived from those two fields.

use alloc::vec;
use alloc::vec::Vec;

/// Largest sieve the generator construction will allocate.
const SIEVE_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generators must be positive (use the monoid flag to include 0)")]
    ZeroGenerator,
    #[error("generators have gcd {gcd}; the complement would be infinite")]
    InfiniteComplement { gcd: u64 },
    #[error("gaps must be positive (use the contains-zero flag for 0)")]
    ZeroGap,
    #[error("not closed under addition: {x} + {y} = {sum} is a gap")]
    NotClosed { x: u64, y: u64, sum: u64 },
    #[error("semigroup too large: the sieve would exceed {limit} entries")]
    TooLarge { limit: u64 },
}

#[derive(Debug, Clone)]
pub struct NumericalSemigroup {
    gaps: Vec<u64>,
    contains_zero: bool,
    generators: Option<Vec<u64>>,
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.gaps == other.gaps && self.contains_zero == other.contains_zero
    }
}

impl Eq for NumericalSemigroup {}

impl NumericalSemigroup {
    /// The semigroup of all finite sums of `gens`, plus `0` when `monoid` is set.
    ///
    /// Representable numbers are sieved until `min(gens)` consecutive members
    /// appear; every larger number is then a member too.
    pub fn from_generators(gens: &[u64], monoid: bool) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::NoGenerators);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let g = gens.iter().copied().fold(0, gcd);
        if g != 1 {
            return Err(SemigroupError::InfiniteComplement { gcd: g });
        }
        let smallest = gens[0];

        // reach[n]: n is a sum of one or more generators.
        let mut reach: Vec<bool> = vec![false];
        let mut run = 0u64;
        let mut n = 0u64;
        while run < smallest {
            n += 1;
            if n > SIEVE_LIMIT {
                return Err(SemigroupError::TooLarge { limit: SIEVE_LIMIT });
            }
            let hit = gens
                .iter()
                .take_while(|&&g| g <= n)
                .any(|&g| g == n || reach[(n - g) as usize]);
            reach.push(hit);
            run = if hit { run + 1 } else { 0 };
        }
        let gaps: Vec<u64> = (1..=n).filter(|&i| !reach[i as usize]).collect();

        // A generator is redundant when it splits into two positive members.
        let minimal: Vec<u64> = gens
            .iter()
            .copied()
            .filter(|&g| {
                let is_member = |x: u64| x > n || reach[x as usize];
                !(1..g).any(|x| is_member(x) && is_member(g - x))
            })
            .collect();

        Ok(Self {
            gaps,
            contains_zero: monoid,
            generators: Some(minimal),
        })
    }

    /// `S = N \ gaps`, minus `0` unless `contains_zero`. Closure is checked on
    /// every pair of members whose sum does not exceed the Frobenius number.
    pub fn from_complement(gaps: &[u64], contains_zero: bool) -> Result<Self, SemigroupError> {
        if gaps.contains(&0) {
            return Err(SemigroupError::ZeroGap);
        }
        let mut gaps = gaps.to_vec();
        gaps.sort_unstable();
        gaps.dedup();
        let s = Self {
            gaps,
            contains_zero,
            generators: None,
        };
        if let Some(frob) = s.frobenius() {
            let members = s.members_up_to(frob);
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[i..] {
                    let sum = x + y;
                    if sum > frob {
                        break;
                    }
                    if !s.contains(sum) {
                        return Err(SemigroupError::NotClosed { x, y, sum });
                    }
                }
            }
        }
        Ok(s)
    }

    /// The discrete interval `[[k, inf))`.
    pub fn interval(k: u64) -> Self {
        Self {
            gaps: (1..k).collect(),
            contains_zero: k == 0,
            generators: None,
        }
    }

    pub fn naturals() -> Self {
        Self::interval(0)
    }

    /// Positive integers outside `S`, ascending.
    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_zero
    }

    /// Minimal generating set, when the semigroup was built from generators.
    pub fn generators(&self) -> Option<&[u64]> {
        self.generators.as_deref()
    }

    pub fn is_naturals(&self) -> bool {
        self.contains_zero && self.gaps.is_empty()
    }

    /// `F(S) = max(N \ S)`; `None` for `S = N`.
    pub fn frobenius(&self) -> Option<u64> {
        match self.gaps.last() {
            Some(&g) => Some(g),
            None if !self.contains_zero => Some(0),
            None => None,
        }
    }

    /// Critical element: least `k` with `[[k, inf)) ⊆ S`; `0` for `S = N`.
    pub fn critical(&self) -> u64 {
        self.frobenius().map_or(0, |f| f + 1)
    }

    /// Minimum member of `S`.
    pub fn min_element(&self) -> u64 {
        if self.contains_zero {
            return 0;
        }
        // The first positive integer missing from the sorted gap list.
        let mut candidate = 1;
        for &g in &self.gaps {
            if g != candidate {
                break;
            }
            candidate += 1;
        }
        candidate
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return self.contains_zero;
        }
        match self.gaps.last() {
            Some(&f) if n <= f => self.gaps.binary_search(&n).is_err(),
            _ => true,
        }
    }

    /// True iff `S = [[min_element, inf))`.
    pub fn is_interval(&self) -> bool {
        self.min_element() == self.critical()
    }

    /// Members of `S` in `[[0, bound]]`, ascending.
    pub fn members_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }

    /// Largest `m` in `[[min_element, critical - 2]]` with `m ∈ S` and `m + 1 ∉ S`,
    /// or `None` when `S` is a discrete interval.
    pub fn interval_obstruction_witness(&self) -> Option<u64> {
        if self.is_interval() {
            return None;
        }
        let lo = self.min_element();
        let hi = self.critical().checked_sub(2)?;
        (lo..=hi)
            .rev()
            .find(|&m| self.contains(m) && !self.contains(m + 1))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
