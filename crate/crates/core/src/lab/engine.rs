//! Backtracking over bijections of a finite family of sets, with eager
//! propagation of sum constraints.
//!
//! Members are encoded as 128-bit masks (bit `x` set iff `x` is an element), so
//! a sumset is a handful of shifted ORs. Every assignment `f(X) = Y` is checked
//! against all previously assigned `W`:
//!
//! - if `X + W` is a member, `f(X + W)` is forced to `Y + f(W)` (queued);
//! - if `X + W` lies outside the family and coherence is on, the image sum
//!   `Y + f(W)` is recorded for `X + W`. Later decompositions of the same sum
//!   must agree, distinct sums must get distinct image sums, and no image sum
//!   of an outside sum may be a member (members are images of members).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

pub(crate) type Mask = u128;

const NONE: u32 = u32::MAX;

pub(crate) fn mask_add(a: Mask, b: Mask) -> Mask {
    let mut out = 0;
    let mut rest = a;
    while rest != 0 {
        out |= b << rest.trailing_zeros();
        rest &= rest - 1;
    }
    out
}

/// Why a branch was cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConflictKind {
    /// The image is already used by another member.
    ImageTaken,
    /// A forced image is not in the member's candidate list.
    OutsideDomain,
    /// A forced image disagrees with an earlier assignment.
    Reassigned,
    /// `X + W` is a member but `f(X) + f(W)` is not.
    SumLeavesWindow,
    /// `X + W` is not a member but `f(X) + f(W)` is.
    SumEntersWindow,
    /// Two decompositions of the same outside sum have different image sums.
    OutsideSumMismatch,
    /// Two different outside sums have the same image sum.
    OutsideSumCollision,
    /// Some member has no candidate left.
    EmptyDomain,
}

impl ConflictKind {
    pub fn name(self) -> &'static str {
        match self {
            ConflictKind::ImageTaken => "image-taken",
            ConflictKind::OutsideDomain => "outside-domain",
            ConflictKind::Reassigned => "reassigned",
            ConflictKind::SumLeavesWindow => "sum-leaves-window",
            ConflictKind::SumEntersWindow => "sum-enters-window",
            ConflictKind::OutsideSumMismatch => "outside-sum-mismatch",
            ConflictKind::OutsideSumCollision => "outside-sum-collision",
            ConflictKind::EmptyDomain => "empty-domain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Conflict {
    pub kind: ConflictKind,
    /// The two members whose sum constraint failed, when there is one.
    pub pair: Option<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct BranchWitness {
    pub member: u32,
    pub image: u32,
    pub conflict: Conflict,
}

pub(crate) struct Space {
    pub masks: Vec<Mask>,
    /// Sorted candidate images per member.
    pub domains: Vec<Vec<u32>>,
}

pub(crate) struct Outcome {
    pub solutions: Vec<Vec<u32>>,
    pub constraints_checked: u64,
    pub nodes: u64,
    pub witnesses: Vec<BranchWitness>,
}

pub(crate) struct NodeLimitHit;

pub(crate) fn solve(
    space: &Space,
    coherence: bool,
    node_limit: Option<u64>,
    witness_cap: usize,
) -> Result<Outcome, NodeLimitHit> {
    let n = space.masks.len();
    let index: HashMap<Mask, u32> = space
        .masks
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i as u32))
        .collect();
    let mut engine = Engine {
        space,
        index,
        coherence,
        img: vec![NONE; n],
        pre: vec![NONE; n],
        order: Vec::with_capacity(n),
        ext: HashMap::new(),
        ext_inv: HashMap::new(),
        ext_trail: Vec::new(),
        queue: VecDeque::new(),
        checked: 0,
        nodes: 0,
        node_limit,
        solutions: Vec::new(),
        witnesses: Vec::new(),
        witness_cap,
    };
    engine.descend()?;
    Ok(Outcome {
        solutions: engine.solutions,
        constraints_checked: engine.checked,
        nodes: engine.nodes,
        witnesses: engine.witnesses,
    })
}

struct Engine<'s> {
    space: &'s Space,
    index: HashMap<Mask, u32>,
    coherence: bool,
    img: Vec<u32>,
    pre: Vec<u32>,
    order: Vec<u32>,
    ext: HashMap<Mask, Mask>,
    ext_inv: HashMap<Mask, Mask>,
    ext_trail: Vec<Mask>,
    queue: VecDeque<(u32, u32)>,
    checked: u64,
    nodes: u64,
    node_limit: Option<u64>,
    solutions: Vec<Vec<u32>>,
    witnesses: Vec<BranchWitness>,
    witness_cap: usize,
}

impl Engine<'_> {
    fn descend(&mut self) -> Result<(), NodeLimitHit> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return Err(NodeLimitHit);
        }

        // smallest live domain first, ties by index
        let mut best: Option<(usize, u32)> = None;
        for x in 0..self.img.len() {
            if self.img[x] != NONE {
                continue;
            }
            let live = self.space.domains[x]
                .iter()
                .filter(|&&c| self.pre[c as usize] == NONE)
                .count();
            if live == 0 {
                self.witness(
                    x as u32,
                    NONE,
                    Conflict {
                        kind: ConflictKind::EmptyDomain,
                        pair: None,
                    },
                );
                return Ok(());
            }
            if best.is_none_or(|(b, _)| live < b) {
                best = Some((live, x as u32));
            }
        }
        let Some((_, x)) = best else {
            self.solutions.push(self.img.clone());
            return Ok(());
        };

        let candidates: Vec<u32> = self.space.domains[x as usize]
            .iter()
            .copied()
            .filter(|&c| self.pre[c as usize] == NONE)
            .collect();
        for c in candidates {
            let mark = (self.order.len(), self.ext_trail.len());
            match self.propagate(x, c) {
                Ok(()) => self.descend()?,
                Err(conflict) => self.witness(x, c, conflict),
            }
            self.undo(mark);
        }
        Ok(())
    }

    fn witness(&mut self, member: u32, image: u32, conflict: Conflict) {
        if self.witnesses.len() < self.witness_cap {
            self.witnesses.push(BranchWitness {
                member,
                image,
                conflict,
            });
        }
    }

    fn undo(&mut self, (order_len, trail_len): (usize, usize)) {
        while self.order.len() > order_len {
            let x = self.order.pop().unwrap() as usize;
            let y = self.img[x] as usize;
            self.img[x] = NONE;
            self.pre[y] = NONE;
        }
        while self.ext_trail.len() > trail_len {
            let z = self.ext_trail.pop().unwrap();
            if let Some(g) = self.ext.remove(&z) {
                self.ext_inv.remove(&g);
            }
        }
    }

    fn propagate(&mut self, x: u32, y: u32) -> Result<(), Conflict> {
        self.queue.clear();
        self.queue.push_back((x, y));
        while let Some((x, y)) = self.queue.pop_front() {
            let fail = |kind| Conflict { kind, pair: None };
            let current = self.img[x as usize];
            if current == y {
                continue;
            }
            if current != NONE {
                return Err(fail(ConflictKind::Reassigned));
            }
            if self.pre[y as usize] != NONE {
                return Err(fail(ConflictKind::ImageTaken));
            }
            if self.space.domains[x as usize].binary_search(&y).is_err() {
                return Err(fail(ConflictKind::OutsideDomain));
            }
            self.img[x as usize] = y;
            self.pre[y as usize] = x;
            self.order.push(x);

            let mx = self.space.masks[x as usize];
            let my = self.space.masks[y as usize];
            for k in 0..self.order.len() {
                let w = self.order[k];
                let z = mask_add(mx, self.space.masks[w as usize]);
                let g = mask_add(my, self.space.masks[self.img[w as usize] as usize]);
                self.checked += 1;
                let pair_fail = |kind| Conflict {
                    kind,
                    pair: Some((x, w)),
                };
                match (self.index.get(&z).copied(), self.index.get(&g).copied()) {
                    (Some(zi), Some(gi)) => {
                        let cur = self.img[zi as usize];
                        if cur == gi {
                            continue;
                        }
                        if cur != NONE {
                            return Err(pair_fail(ConflictKind::Reassigned));
                        }
                        self.queue.push_back((zi, gi));
                    }
                    (Some(_), None) => return Err(pair_fail(ConflictKind::SumLeavesWindow)),
                    (None, Some(_)) if self.coherence => {
                        return Err(pair_fail(ConflictKind::SumEntersWindow))
                    }
                    (None, _) if self.coherence => match self.ext.get(&z) {
                        Some(&g2) if g2 != g => {
                            return Err(pair_fail(ConflictKind::OutsideSumMismatch))
                        }
                        Some(_) => {}
                        None => {
                            if self.ext_inv.contains_key(&g) {
                                return Err(pair_fail(ConflictKind::OutsideSumCollision));
                            }
                            self.ext.insert(z, g);
                            self.ext_inv.insert(g, z);
                            self.ext_trail.push(z);
                        }
                    },
                    (None, _) => {}
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_addition_is_sumset() {
        // {0,2} + {1,3} = {1,3,5}
        assert_eq!(mask_add(0b101, 0b1010), 0b101010);
        assert_eq!(mask_add(1, 1 << 63), 1 << 63);
        assert_eq!(mask_add(1 << 63, 1 << 63), 1 << 126);
    }

    #[test]
    fn singleton_chain_has_only_identity() {
        // {1},{2},{3},{4} under x+y: bijections preserving in-family sums
        let masks: Vec<Mask> = (1..=4).map(|x| 1u128 << x).collect();
        let domains = vec![(0..4).collect::<Vec<u32>>(); 4];
        let out = solve(&Space { masks, domains }, true, None, 4)
            .ok()
            .unwrap();
        assert_eq!(out.solutions, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn without_coherence_isolated_members_float() {
        // {5},{6} have no in-family sums at all: any bijection survives
        let masks: Vec<Mask> = vec![1 << 5, 1 << 6];
        let domains = vec![vec![0, 1]; 2];
        let loose = solve(
            &Space {
                masks: masks.clone(),
                domains: domains.clone(),
            },
            false,
            None,
            4,
        )
        .ok()
        .unwrap();
        assert_eq!(loose.solutions.len(), 2);
        // with coherence: f(5)+f(5)=f'(10) and f(5)+f(6)=11 etc. stay consistent
        // for the swap as well, since {10},{11},{12} are outside
        let tight = solve(&Space { masks, domains }, true, None, 4)
            .ok()
            .unwrap();
        assert_eq!(tight.solutions.len(), 2);
    }

    #[test]
    fn node_limit_is_enforced() {
        let masks: Vec<Mask> = (40..48).map(|x| 1u128 << x).collect();
        let domains = vec![(0..8).collect::<Vec<u32>>(); 8];
        assert!(solve(&Space { masks, domains }, false, Some(10), 4).is_err());
    }
}
