use crate::power::sigma;
use crate::semigroup::NumericalSemigroup;
use crate::set::NaturalSet;

/// Certificate that `sigma` cannot be the restriction of an automorphism of
/// `P(S)` when `S` is not an interval: `X = {m, k, k+1}` lies in `P(S)` but
/// `sigma(X) = {m, m+1, k+1}` needs `m + 1`, which is a gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub m: u64,
    pub k: u64,
    pub set: NaturalSet,
    pub image: NaturalSet,
    pub missing: u64,
}

pub fn sigma_restriction_obstruction(semigroup: &NumericalSemigroup) -> Option<Obstruction> {
    let m = semigroup.interval_obstruction_witness()?;
    let k = semigroup.critical();
    let set = NaturalSet::from_sorted(alloc::vec![m, k, k + 1]).ok()?;
    let image = sigma(&set);
    debug_assert!(!semigroup.contains(m + 1));
    Some(Obstruction {
        m,
        k,
        set,
        image,
        missing: m + 1,
    })
}
