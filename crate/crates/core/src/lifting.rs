//! Moving transfer systems between a subgroup lattice and its poset of
//! conjugacy classes: preimage and pushforward along the class map, the
//! induced Galois connection, and the liftability test for class-level
//! systems.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{ClassPoset, SubgroupLattice};
use crate::transfer::{enumerate_cat_transfer_systems, g_closure, Relation};

/// Verdict table for every categorical transfer system on the class poset.
pub struct LiftReport {
    pub total_cat: usize,
    pub liftable: usize,
    /// Aligned with the enumeration order of the systems.
    pub verdicts: Vec<bool>,
    /// For each non-liftable system (by enumeration index), the least class
    /// pair on which the round trip disagrees with the input.
    pub witnesses: Vec<(usize, (usize, usize))>,
}

fn check_carriers(l: &SubgroupLattice, cp: &ClassPoset, rc: &Relation) -> Result<()> {
    if cp.len() != rc.size() || l.len() < cp.len() {
        return Err(Error::CarrierMismatch);
    }
    Ok(())
}

/// Subgroup pairs K ≤ H whose classes are related.
pub fn pi_preimage(l: &SubgroupLattice, cp: &ClassPoset, rc: &Relation) -> Result<Relation> {
    check_carriers(l, cp, rc)?;
    let mut r = Relation::reflexive(l.len());
    for i in 0..l.len() {
        for j in 0..l.len() {
            if l.leq(i, j) && rc.contains(cp.pi(i), cp.pi(j)) {
                r.add(i, j);
            }
        }
    }
    Ok(r)
}

/// Class pairs with at least one related representative pair.
pub fn pi_pushforward(l: &SubgroupLattice, cp: &ClassPoset, rg: &Relation) -> Result<Relation> {
    if rg.size() != l.len() || cp.len() > l.len() {
        return Err(Error::CarrierMismatch);
    }
    let mut r = Relation::reflexive(cp.len());
    for (i, j) in rg.matrix().iter_pairs() {
        r.add(cp.pi(i), cp.pi(j));
    }
    Ok(r)
}

/// The G-transfer system generated by the preimage of a class-level system.
pub fn pi_star(l: &SubgroupLattice, cp: &ClassPoset, rc: &Relation) -> Result<Relation> {
    let pre = pi_preimage(l, cp, rc)?;
    g_closure(l, &pre.arrows())
}

/// A class-level system lifts when pushing its generated system back down
/// returns it unchanged. Only meaningful when every class collapses cleanly
/// (see the losslessness tests); the caller guarantees that.
pub fn is_liftable(l: &SubgroupLattice, cp: &ClassPoset, rc: &Relation) -> Result<bool> {
    Ok(round_trip_diff(l, cp, rc)?.is_none())
}

/// Least class pair where the round trip differs from the input, if any.
fn round_trip_diff(
    l: &SubgroupLattice,
    cp: &ClassPoset,
    rc: &Relation,
) -> Result<Option<(usize, usize)>> {
    let star = pi_star(l, cp, rc)?;
    let round = pi_pushforward(l, cp, &star)?;
    if &round == rc {
        return Ok(None);
    }
    for a in 0..cp.len() {
        for b in 0..cp.len() {
            if round.contains(a, b) != rc.contains(a, b) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Direct combinatorial liftability test: for every related class pair
/// [K] -> [H], every representative H, and all K, K' ≤ H in class [K], the
/// class of K ∩ K' must also relate to [H]. Quantifies over all
/// representatives on both sides, the strongest reading.
pub fn is_liftable_via_meets(
    l: &SubgroupLattice,
    cp: &ClassPoset,
    rc: &Relation,
) -> Result<bool> {
    Ok(meets_witness(l, cp, rc)?.is_none())
}

fn meets_witness(
    l: &SubgroupLattice,
    cp: &ClassPoset,
    rc: &Relation,
) -> Result<Option<(usize, usize)>> {
    check_carriers(l, cp, rc)?;
    for (ck, ch) in rc.matrix().iter_pairs() {
        if ck == ch {
            continue;
        }
        for &h in cp.members(ch) {
            let h = h as usize;
            let in_class: Vec<usize> = cp
                .members(ck)
                .iter()
                .map(|&k| k as usize)
                .filter(|&k| l.leq(k, h))
                .collect();
            for &k in &in_class {
                for &k2 in &in_class {
                    if !rc.contains(cp.pi(l.meet(k, k2)), ch) {
                        return Ok(Some((ck, ch)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Enumerates class-level systems and counts the liftable ones.
pub fn lift_report(l: &SubgroupLattice) -> Result<LiftReport> {
    let cp = l.quotient_poset();
    let systems = enumerate_cat_transfer_systems(&cp.poset())?;
    let mut verdicts = Vec::with_capacity(systems.len());
    let mut witnesses = Vec::new();
    let mut liftable = 0;
    for (idx, rc) in systems.iter().enumerate() {
        match round_trip_diff(l, &cp, rc)? {
            None => {
                liftable += 1;
                verdicts.push(true);
            }
            Some(pair) => {
                verdicts.push(false);
                witnesses.push((idx, pair));
            }
        }
    }
    Ok(LiftReport {
        total_cat: systems.len(),
        liftable,
        verdicts,
        witnesses,
    })
}
