//! Finite nonempty sets of non-negative integers.
//!
//! A [`NaturalSet`] is stored as a strictly increasing `Vec<u64>`. Sumsets are
//! computed on a dense bit vector anchored at the minimum of each operand: the
//! larger operand is laid out as words and shifted-ORed once per element of the
//! smaller operand. Very sparse operands whose span would not fit a reasonable
//! bit vector fall back to sorting the pairwise sums.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

/// Spans (in bits) above which `add` switches to pairwise enumeration.
const DENSE_SPAN_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetError {
    #[error("a set must be nonempty")]
    Empty,
    #[error("set elements must be strictly increasing (found {next} after {prev})")]
    NotIncreasing { prev: u64, next: u64 },
    #[error("arithmetic overflow: result exceeds the 64-bit range")]
    Overflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("reflection point {point} is below the maximum {max}; the result would leave N")]
    ReflectDomain { point: u64, max: u64 },
    #[error("malformed set literal `{literal}`: {reason}")]
    Parse {
        literal: String,
        reason: &'static str,
    },
}

/// A finite nonempty set of non-negative integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NaturalSet {
    elems: Vec<u64>,
}

impl NaturalSet {
    /// Builds a set from arbitrary elements; duplicates are dropped.
    pub fn new(mut elems: Vec<u64>) -> Result<Self, SetError> {
        if elems.is_empty() {
            return Err(SetError::Empty);
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(Self { elems })
    }

    /// Builds a set from elements that must already be strictly increasing.
    pub fn from_sorted(elems: Vec<u64>) -> Result<Self, SetError> {
        if elems.is_empty() {
            return Err(SetError::Empty);
        }
        if let Some(w) = elems.windows(2).find(|w| w[0] >= w[1]) {
            return Err(SetError::NotIncreasing {
                prev: w[0],
                next: w[1],
            });
        }
        Ok(Self { elems })
    }

    pub fn singleton(x: u64) -> Self {
        Self { elems: vec![x] }
    }

    /// The discrete interval `[[i, j]]`.
    pub fn interval(i: u64, j: u64) -> Result<Self, SetError> {
        if i > j {
            return Err(SetError::InvalidArgument("interval start exceeds its end"));
        }
        Ok(Self {
            elems: (i..=j).collect(),
        })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elems.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Minimum element.
    pub fn alpha(&self) -> u64 {
        self.elems[0]
    }

    /// Maximum element.
    pub fn beta(&self) -> u64 {
        self.elems[self.elems.len() - 1]
    }

    /// `beta - alpha`.
    pub fn span(&self) -> u64 {
        self.beta() - self.alpha()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_singleton(&self) -> bool {
        self.elems.len() == 1
    }

    /// The sumset `{x + y : x in self, y in other}`.
    pub fn add(&self, other: &Self) -> Result<Self, SetError> {
        let alpha = self
            .alpha()
            .checked_add(other.alpha())
            .ok_or(SetError::Overflow)?;
        self.beta()
            .checked_add(other.beta())
            .ok_or(SetError::Overflow)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let span = small.span() + large.span();
        let elems = if span < DENSE_SPAN_LIMIT {
            dense_sumset(small, large, alpha, span)
        } else {
            sparse_sumset(small, large)
        };
        Ok(Self { elems })
    }

    /// `l · X`, the set of all sums of `l` elements of `X`.
    pub fn dilate(&self, l: u64) -> Result<Self, SetError> {
        if l == 0 {
            return Err(SetError::InvalidArgument(
                "dilation factor must be at least 1",
            ));
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut l = l;
        loop {
            if l & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.add(&base)?,
                });
            }
            l >>= 1;
            if l == 0 {
                break;
            }
            base = base.add(&base)?;
        }
        Ok(acc.expect("l >= 1 sets at least one bit"))
    }

    /// `m + X`.
    pub fn translate(&self, m: u64) -> Result<Self, SetError> {
        self.beta().checked_add(m).ok_or(SetError::Overflow)?;
        Ok(Self {
            elems: self.elems.iter().map(|x| x + m).collect(),
        })
    }

    /// `l - X`; requires `l >= beta(X)`.
    pub fn reflect(&self, l: u64) -> Result<Self, SetError> {
        if l < self.beta() {
            return Err(SetError::ReflectDomain {
                point: l,
                max: self.beta(),
            });
        }
        Ok(Self {
            elems: self.elems.iter().rev().map(|x| l - x).collect(),
        })
    }

    /// Differences between consecutive elements, ascending and without repeats.
    pub fn gap_set(&self) -> Vec<u64> {
        let mut gaps: Vec<u64> = self.elems.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.sort_unstable();
        gaps.dedup();
        gaps
    }

    /// Largest consecutive difference; 0 for a singleton.
    pub fn gap(&self) -> u64 {
        self.elems
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
    }

    /// `X - alpha(X)`.
    pub fn normalize(&self) -> Self {
        let a = self.alpha();
        Self {
            elems: self.elems.iter().map(|x| x - a).collect(),
        }
    }

    pub fn is_interval(&self) -> bool {
        self.span() + 1 == self.elems.len() as u64
    }

    /// Canonical window order: by maximum, then minimum, then lexicographic.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.beta()
            .cmp(&other.beta())
            .then(self.alpha().cmp(&other.alpha()))
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

fn dense_sumset(small: &NaturalSet, large: &NaturalSet, alpha: u64, span: u64) -> Vec<u64> {
    let large_words = to_words(large);
    let mut out = vec![0u64; (span / 64 + 1) as usize];
    let base = small.alpha();
    for x in small.iter() {
        or_shifted(&mut out, &large_words, (x - base) as usize);
    }
    let mut elems = Vec::new();
    for (i, &word) in out.iter().enumerate() {
        let mut w = word;
        while w != 0 {
            let tz = w.trailing_zeros() as u64;
            elems.push(alpha + i as u64 * 64 + tz);
            w &= w - 1;
        }
    }
    elems
}

fn sparse_sumset(small: &NaturalSet, large: &NaturalSet) -> Vec<u64> {
    let mut elems: Vec<u64> = small
        .iter()
        .flat_map(|x| large.iter().map(move |y| x + y))
        .collect();
    elems.sort_unstable();
    elems.dedup();
    elems
}

fn to_words(set: &NaturalSet) -> Vec<u64> {
    let base = set.alpha();
    let mut words = vec![0u64; (set.span() / 64 + 1) as usize];
    for x in set.iter() {
        let off = x - base;
        words[(off / 64) as usize] |= 1 << (off % 64);
    }
    words
}

fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (word, bit) = (shift / 64, shift % 64);
    for (i, &w) in src.iter().enumerate() {
        if w == 0 {
            continue;
        }
        dst[i + word] |= w << bit;
        if bit != 0 {
            let spill = w >> (64 - bit);
            if spill != 0 {
                dst[i + word + 1] |= spill;
            }
        }
    }
}

impl fmt::Display for NaturalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Parses `"0,5,8,10"`; any token may also be a closed range `"i..j"`.
/// The expanded sequence must be strictly increasing.
impl FromStr for NaturalSet {
    type Err = SetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason| SetError::Parse {
            literal: s.to_string(),
            reason,
        };
        if s.trim().is_empty() {
            return Err(fail("empty literal"));
        }
        let mut elems: Vec<u64> = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            let (lo, hi) = match token.split_once("..") {
                Some((a, b)) => (
                    parse_u64(a).ok_or_else(|| fail("bad range start"))?,
                    parse_u64(b).ok_or_else(|| fail("bad range end"))?,
                ),
                None => {
                    let v = parse_u64(token).ok_or_else(|| fail("not a non-negative integer"))?;
                    (v, v)
                }
            };
            if lo > hi {
                return Err(fail("range start exceeds its end"));
            }
            if let Some(&last) = elems.last() {
                if lo <= last {
                    return Err(fail("elements must be strictly ascending"));
                }
            }
            if hi - lo > DENSE_SPAN_LIMIT {
                return Err(fail("range too long"));
            }
            elems.extend(lo..=hi);
        }
        Ok(Self { elems })
    }
}

fn parse_u64(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> NaturalSet {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(
            set("0,5,8,10").add(&set("0,3")).unwrap(),
            set("0,3,5,8,10,11,13")
        );
        assert_eq!(set("2,3").add(&set("4")).unwrap(), set("6,7"));
        assert_eq!(set("0,1").add(&set("0,1")).unwrap(), set("0,1,2"));
    }

    #[test]
    fn add_crosses_word_boundaries() {
        let a = set("0,63,64,130");
        let b = set("1,70");
        assert_eq!(a.add(&b).unwrap(), set("1,64,65,70,131,133,134,200"));
    }

    #[test]
    fn add_sparse_path() {
        let a = NaturalSet::new(vec![0, 1 << 40]).unwrap();
        let b = set("3,5");
        assert_eq!(
            a.add(&b).unwrap().elements(),
            &[3, 5, (1 << 40) + 3, (1 << 40) + 5]
        );
    }

    #[test]
    fn add_overflow_is_an_error() {
        let a = NaturalSet::singleton(u64::MAX);
        assert_eq!(a.add(&set("0,1")), Err(SetError::Overflow));
        assert_eq!(a.add(&set("0")).unwrap(), a);
    }

    #[test]
    fn dilate_examples() {
        assert_eq!(set("2,3").dilate(2).unwrap(), set("4,5,6"));
        assert_eq!(set("0,2").dilate(3).unwrap(), set("0,2,4,6"));
        assert_eq!(set("7").dilate(1).unwrap(), set("7"));
        assert!(matches!(
            set("7").dilate(0),
            Err(SetError::InvalidArgument(_))
        ));
    }

    #[test]
    fn translate_examples() {
        assert_eq!(set("0,2,6").translate(3).unwrap(), set("3,5,9"));
        assert_eq!(set("0,2,6").translate(0).unwrap(), set("0,2,6"));
        assert_eq!(set("5").translate(10).unwrap(), set("15"));
        assert_eq!(set("5").translate(u64::MAX), Err(SetError::Overflow));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(set("0,5,8,10").reflect(10).unwrap(), set("0,2,5,10"));
        assert_eq!(set("3").reflect(3).unwrap(), set("0"));
        assert_eq!(set("0..5").reflect(5).unwrap(), set("0..5"));
        assert_eq!(
            set("0,4").reflect(3),
            Err(SetError::ReflectDomain { point: 3, max: 4 })
        );
    }

    #[test]
    fn gap_examples() {
        let x = set("0,3,5,6,8,13");
        assert_eq!(x.gap_set(), vec![1, 2, 3, 5]);
        assert_eq!(x.gap(), 5);
        assert!(set("7").gap_set().is_empty());
        assert_eq!(set("7").gap(), 0);
        assert_eq!(set("4..9").gap_set(), vec![1]);
        assert_eq!(set("4,5,6").gap(), 1);
    }

    #[test]
    fn normalize_and_interval() {
        assert_eq!(set("3,5,9").normalize(), set("0,2,6"));
        assert_eq!(set("0,2,6").normalize(), set("0,2,6"));
        assert_eq!(set("6,8,9").normalize(), set("0,2,3"));
        assert!(set("2..5").is_interval());
        assert!(!set("0,2").is_interval());
        assert!(set("7").is_interval());
    }

    #[test]
    fn literal_parsing() {
        assert_eq!(set("2..4").elements(), &[2, 3, 4]);
        assert_eq!(set("0,3..5,9").elements(), &[0, 3, 4, 5, 9]);
        assert_eq!(set("0,5,8,10").to_string(), "0,5,8,10");
        for bad in ["", "1,1", "3,2", "a", "1,,2", "-1", "5..3", "1..3,3"] {
            assert!(
                matches!(bad.parse::<NaturalSet>(), Err(SetError::Parse { .. })),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(NaturalSet::new(vec![]), Err(SetError::Empty));
        assert_eq!(NaturalSet::new(vec![3, 1, 3]).unwrap().elements(), &[1, 3]);
        assert_eq!(
            NaturalSet::from_sorted(vec![1, 1]),
            Err(SetError::NotIncreasing { prev: 1, next: 1 })
        );
        assert!(NaturalSet::interval(3, 2).is_err());
    }

    #[test]
    fn canonical_order() {
        let mut v = [
            set("1,2"),
            set("2"),
            set("0,2"),
            set("0,1,2"),
            set("0,1"),
            set("1"),
            set("0"),
        ];
        v.sort_by(|a, b| a.canonical_cmp(b));
        let printed: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(printed, ["0", "0,1", "1", "0,1,2", "0,2", "1,2", "2"]);
    }
}
