//! Groups that split as a cyclic normal kernel with a cyclic complement
//! acting without fixed points. For these the class poset is a divisor grid,
//! and liftability of a class-level system reduces to one implication per
//! arrow.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{ClassPoset, SubgroupLattice};
use crate::poset::FinitePoset;
use crate::transfer::Relation;

/// Kernel/complement decomposition, by subgroup index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McfStructure {
    pub kernel: usize,
    pub complement: usize,
    pub n: usize,
    pub t: usize,
}

fn is_cyclic_set(g: &Group, s: &crate::bitset::BitSet) -> bool {
    s.iter().any(|x| g.element_order(x) == s.len())
}

/// Detects the decomposition by scanning normal cyclic subgroups from the
/// largest down, pairing each with the smallest cyclic complement whose
/// conjugation action is fixed-point-free.
pub fn mcf_structure(g: &Group, l: &SubgroupLattice) -> Option<McfStructure> {
    let order = g.order();
    let mut by_size: Vec<usize> = (0..l.len()).collect();
    by_size.sort_by_key(|&i| core::cmp::Reverse(l.subgroup(i).len()));
    for &ni in &by_size {
        let nset = l.subgroup(ni);
        let n = nset.len();
        if n <= 1 || n == order {
            continue;
        }
        if l.class_members(l.class_of(ni)).len() != 1 || !is_cyclic_set(g, nset) {
            continue;
        }
        let t = order / n;
        if t <= 1 {
            continue;
        }
        for ti in 0..l.len() {
            let tset = l.subgroup(ti);
            if tset.len() != t || l.meet(ni, ti) != 0 || !is_cyclic_set(g, tset) {
                continue;
            }
            let fixed_point_free = tset.iter().filter(|&x| x != 0).all(|x| {
                nset.iter()
                    .filter(|&y| y != 0)
                    .all(|y| g.mul(g.mul(x, y), g.inv(x)) != y)
            });
            if fixed_point_free {
                return Some(McfStructure {
                    kernel: ni,
                    complement: ti,
                    n,
                    t,
                });
            }
        }
    }
    None
}

/// The part of a subgroup inside the kernel.
pub fn base(l: &SubgroupLattice, st: &McfStructure, k: usize) -> usize {
    l.meet(k, st.kernel)
}

/// Per-class grid coordinates ([K] ↦ (|K ∩ N|, [K : K ∩ N])), checked to be
/// an order isomorphism onto the product of the two divisor lattices.
pub fn grid_iso(
    l: &SubgroupLattice,
    cp: &ClassPoset,
    st: &McfStructure,
) -> Result<Vec<(u64, u64)>> {
    let coords: Vec<(u64, u64)> = (0..cp.len())
        .map(|c| {
            let rep = cp.class(c).rep;
            let b = base(l, st, rep) as usize;
            let nb = l.subgroup(b).len() as u64;
            (nb, (l.subgroup(rep).len() as u64) / nb)
        })
        .collect();
    let dn = FinitePoset::divisor_lattice(st.n as u64);
    let dt = FinitePoset::divisor_lattice(st.t as u64);
    let grid = FinitePoset::product(&dn, &dt);
    if cp.len() != grid.size() {
        return Err(Error::NotMcf);
    }
    // Bijectivity plus order preservation in both directions.
    let mut seen = alloc::collections::BTreeSet::new();
    for &c in coords.iter() {
        if !seen.insert(c) {
            return Err(Error::NotMcf);
        }
    }
    for a in 0..cp.len() {
        for b in 0..cp.len() {
            let fwd = cp.leq(a, b);
            let div = coords[b].0 % coords[a].0 == 0 && coords[b].1 % coords[a].1 == 0;
            if fwd != div {
                return Err(Error::NotMcf);
            }
        }
    }
    Ok(coords)
}

/// One-implication liftability test: an arrow between classes with different
/// kernel parts forces the arrow from the source's kernel part.
pub fn mcf_liftable(
    l: &SubgroupLattice,
    cp: &ClassPoset,
    st: &McfStructure,
    rc: &Relation,
) -> Result<bool> {
    Ok(mcf_lift_violation(l, cp, st, rc)?.is_none())
}

/// The least violated implication, as (source class, target class).
pub fn mcf_lift_violation(
    l: &SubgroupLattice,
    cp: &ClassPoset,
    st: &McfStructure,
    rc: &Relation,
) -> Result<Option<(usize, usize)>> {
    if cp.len() != rc.size() {
        return Err(Error::CarrierMismatch);
    }
    for (ck, ch) in rc.matrix().iter_pairs() {
        if ck == ch {
            continue;
        }
        let base_k = base(l, st, cp.class(ck).rep);
        let base_h = base(l, st, cp.class(ch).rep);
        // Kernel subgroups are characteristic, so class equality of bases is
        // just index equality.
        if l.subgroup(base_k).len() != l.subgroup(base_h).len()
            && !rc.contains(cp.pi(base_k), ch)
        {
            return Ok(Some((ck, ch)));
        }
    }
    Ok(None)
}
