//! The full subgroup lattice of a group, the conjugation action on it, and
//! the quotient poset of conjugacy classes.
//!
//! Enumeration seeds with every cyclic subgroup and closes under joins with
//! cyclic subgroups; each subgroup carries a small generating set so a join is
//! one Cayley BFS rather than a quadratic product closure.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::poset::FinitePoset;

/// Per-run cap on the number of subgroups.
pub const DEFAULT_MAX_SUBGROUPS: usize = 20_000;
/// Meet tables are materialized below this size only.
const MEET_TABLE_LIMIT: usize = 4096;

pub struct SubgroupLattice {
    group_order: usize,
    subgroups: Vec<BitSet>,
    gens: Vec<Vec<usize>>,
    index: BTreeMap<BitSet, usize>,
    leq: BitMatrix,
    meet_table: Option<Vec<u32>>,
    /// conj_action[g * nsubs + i] = index of the g-conjugate of subgroup i.
    conj_action: Vec<u32>,
    class_of: Vec<u32>,
    class_members: Vec<Vec<u32>>,
    normalizer_of: Vec<u32>,
    group_gens: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub rep: usize,
    pub size: usize,
    pub order: usize,
}

pub struct ClassPoset {
    classes: Vec<ClassInfo>,
    leq: BitMatrix,
    pi: Vec<u32>,
    members: Vec<Vec<u32>>,
}

pub fn enumerate_subgroups(g: &Group) -> Result<SubgroupLattice> {
    enumerate_subgroups_capped(g, DEFAULT_MAX_SUBGROUPS)
}

pub fn enumerate_subgroups_capped(g: &Group, cap: usize) -> Result<SubgroupLattice> {
    let n = g.order();
    let ggens = g.generating_sequence();
    let mut index: BTreeMap<BitSet, usize> = BTreeMap::new();
    let mut sets: Vec<BitSet> = Vec::new();
    let mut gens: Vec<Vec<usize>> = Vec::new();
    // Orbit-representative worklist: joins of conjugates are conjugate, so
    // joining only representatives and closing each hit under conjugation
    // still reaches every subgroup.
    let mut reps: Vec<usize> = Vec::new();
    let push = |set: BitSet,
                    gen: Vec<usize>,
                    sets: &mut Vec<BitSet>,
                    gens: &mut Vec<Vec<usize>>,
                    index: &mut BTreeMap<BitSet, usize>|
     -> Result<bool> {
        if index.contains_key(&set) {
            return Ok(false);
        }
        if sets.len() >= cap {
            return Err(Error::TooLarge {
                what: "subgroup count",
                size: sets.len() + 1,
                bound: cap,
            });
        }
        index.insert(set.clone(), sets.len());
        sets.push(set);
        gens.push(gen);
        Ok(true)
    };
    let close_orbit = |start: usize,
                       sets: &mut Vec<BitSet>,
                       gens: &mut Vec<Vec<usize>>,
                       index: &mut BTreeMap<BitSet, usize>|
     -> Result<()> {
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &e in &ggens {
                let conj = g.conjugate_set(&sets[i], e);
                if !index.contains_key(&conj) {
                    let cg: Vec<usize> =
                        gens[i].iter().map(|&x| g.mul(g.mul(e, x), g.inv(e))).collect();
                    if sets.len() >= cap {
                        return Err(Error::TooLarge {
                            what: "subgroup count",
                            size: sets.len() + 1,
                            bound: cap,
                        });
                    }
                    index.insert(conj.clone(), sets.len());
                    stack.push(sets.len());
                    sets.push(conj);
                    gens.push(cg);
                }
            }
        }
        Ok(())
    };

    // Seed: every cyclic subgroup, keeping one generator per distinct one.
    for x in 0..n {
        let c = g.generated_subgroup(&[x]);
        if push(c, if x == 0 { vec![] } else { vec![x] }, &mut sets, &mut gens, &mut index)? {
            reps.push(sets.len() - 1);
            close_orbit(sets.len() - 1, &mut sets, &mut gens, &mut index)?;
        }
    }
    // Join partners must be every cyclic subgroup, not only orbit reps.
    let cyclic: Vec<(usize, BitSet)> = (0..sets.len())
        .filter(|&i| gens[i].len() == 1)
        .map(|i| (gens[i][0], sets[i].clone()))
        .collect();

    // Fixpoint: join each representative with every cyclic subgroup.
    let mut head = 0;
    while head < reps.len() {
        let cur = reps[head];
        head += 1;
        let current = sets[cur].clone();
        let current_gens = gens[cur].clone();
        if current.len() == n {
            continue;
        }
        for (x, c) in &cyclic {
            if c.is_subset(&current) {
                continue;
            }
            let mut jg = current_gens.clone();
            jg.push(*x);
            let joined = g.generated_subgroup(&jg);
            if push(joined, jg, &mut sets, &mut gens, &mut index)? {
                reps.push(sets.len() - 1);
                close_orbit(sets.len() - 1, &mut sets, &mut gens, &mut index)?;
            }
        }
    }

    // Canonical order: (cardinality, membership bit-string).
    let mut order_idx: Vec<usize> = (0..sets.len()).collect();
    order_idx.sort_by(|&a, &b| (sets[a].len(), &sets[a]).cmp(&(sets[b].len(), &sets[b])));
    let subgroups: Vec<BitSet> = order_idx.iter().map(|&i| sets[i].clone()).collect();
    let gens: Vec<Vec<usize>> = order_idx.iter().map(|&i| gens[i].clone()).collect();
    let mut index: BTreeMap<BitSet, usize> = BTreeMap::new();
    for (i, s) in subgroups.iter().enumerate() {
        index.insert(s.clone(), i);
    }
    let ns = subgroups.len();

    let mut leq = BitMatrix::new(ns);
    for i in 0..ns {
        for j in 0..ns {
            if subgroups[i].len() <= subgroups[j].len() && subgroups[i].is_subset(&subgroups[j]) {
                leq.set(i, j);
            }
        }
    }

    // Conjugation permutations: compute directly for the group generators,
    // then every other element by composing along a Cayley BFS.
    let mut gen_perm: Vec<Vec<u32>> = Vec::new();
    for &gg in &ggens {
        let mut perm = vec![0u32; ns];
        for i in 0..ns {
            let conj = g.conjugate_set(&subgroups[i], gg);
            perm[i] = *index.get(&conj).ok_or(Error::NotASubgroup)? as u32;
        }
        gen_perm.push(perm);
    }
    let mut conj_action = vec![u32::MAX; n * ns];
    for i in 0..ns {
        conj_action[i] = i as u32; // identity element
    }
    let mut known = vec![false; n];
    known[0] = true;
    let mut queue = vec![0usize];
    let mut qh = 0;
    while qh < queue.len() {
        let x = queue[qh];
        qh += 1;
        for (gi, &gg) in ggens.iter().enumerate() {
            let y = g.mul(gg, x);
            if !known[y] {
                known[y] = true;
                // sigma_{g x} = sigma_g after sigma_x.
                for i in 0..ns {
                    let via = conj_action[x * ns + i] as usize;
                    conj_action[y * ns + i] = gen_perm[gi][via];
                }
                queue.push(y);
            }
        }
    }

    // Conjugacy classes; ascending scan makes the representative minimal.
    let mut class_of = vec![u32::MAX; ns];
    let mut class_members: Vec<Vec<u32>> = Vec::new();
    for i in 0..ns {
        if class_of[i] != u32::MAX {
            continue;
        }
        let c = class_members.len() as u32;
        let mut members = Vec::new();
        for e in 0..n {
            let j = conj_action[e * ns + i] as usize;
            if class_of[j] == u32::MAX {
                class_of[j] = c;
                members.push(j as u32);
            }
        }
        members.sort_unstable();
        class_members.push(members);
    }

    let mut normalizer_of = vec![0u32; ns];
    for i in 0..ns {
        let mut nr = BitSet::new(n);
        for e in 0..n {
            if conj_action[e * ns + i] as usize == i {
                nr.insert(e);
            }
        }
        normalizer_of[i] = *index.get(&nr).ok_or(Error::NotASubgroup)? as u32;
    }

    let meet_table = if ns <= MEET_TABLE_LIMIT {
        let mut t = vec![0u32; ns * ns];
        for i in 0..ns {
            for j in 0..=i {
                let m = if leq.get(i, j) {
                    i
                } else if leq.get(j, i) {
                    j
                } else {
                    index[&subgroups[i].intersection(&subgroups[j])]
                };
                t[i * ns + j] = m as u32;
                t[j * ns + i] = m as u32;
            }
        }
        Some(t)
    } else {
        None
    };

    Ok(SubgroupLattice {
        group_order: n,
        subgroups,
        gens,
        index,
        leq,
        meet_table,
        conj_action,
        class_of,
        class_members,
        normalizer_of,
        group_gens: ggens,
    })
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn subgroup(&self, i: usize) -> &BitSet {
        &self.subgroups[i]
    }

    pub fn subgroups(&self) -> &[BitSet] {
        &self.subgroups
    }

    pub fn generators(&self, i: usize) -> &[usize] {
        &self.gens[i]
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    pub fn leq_matrix(&self) -> &BitMatrix {
        &self.leq
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Generating elements of the ambient group; conjugation-closure under
    /// these alone implies closure under the whole group.
    pub fn group_generators(&self) -> &[usize] {
        &self.group_gens
    }

    #[inline]
    pub fn conjugate(&self, g: usize, i: usize) -> usize {
        self.conj_action[g * self.subgroups.len() + i] as usize
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    pub fn class_count(&self) -> usize {
        self.class_members.len()
    }

    pub fn class_members(&self, c: usize) -> &[u32] {
        &self.class_members[c]
    }

    pub fn normalizer_of(&self, i: usize) -> usize {
        self.normalizer_of[i] as usize
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        match &self.meet_table {
            Some(t) => t[i * self.subgroups.len() + j] as usize,
            None => {
                if self.leq.get(i, j) {
                    i
                } else if self.leq.get(j, i) {
                    j
                } else {
                    self.index[&self.subgroups[i].intersection(&self.subgroups[j])]
                }
            }
        }
    }

    /// Join inside the lattice, via the stored generating sets.
    pub fn join(&self, g: &Group, i: usize, j: usize) -> usize {
        if self.leq.get(i, j) {
            return j;
        }
        if self.leq.get(j, i) {
            return i;
        }
        let mut gens: Vec<usize> = self.gens[i].clone();
        gens.extend_from_slice(&self.gens[j]);
        self.index[&g.generated_subgroup(&gens)]
    }

    pub fn quotient_poset(&self) -> ClassPoset {
        let nc = self.class_members.len();
        let classes: Vec<ClassInfo> = self
            .class_members
            .iter()
            .map(|m| ClassInfo {
                rep: m[0] as usize,
                size: m.len(),
                order: self.subgroups[m[0] as usize].len(),
            })
            .collect();
        let mut leq = BitMatrix::new(nc);
        for (ck, members) in self.class_members.iter().enumerate() {
            for ch in 0..nc {
                let h_rep = classes[ch].rep;
                if members.iter().any(|&m| self.leq.get(m as usize, h_rep)) {
                    leq.set(ck, ch);
                }
            }
        }
        ClassPoset {
            classes,
            leq,
            pi: self.class_of.clone(),
            members: self.class_members.clone(),
        }
    }

    /// Subgroups whose order is a product of the given primes and whose index
    /// is coprime to all of them.
    pub fn hall_subgroups(&self, primes: &[u64]) -> Vec<usize> {
        (0..self.subgroups.len())
            .filter(|&i| {
                let h = self.subgroups[i].len() as u64;
                let idx = (self.group_order / self.subgroups[i].len()) as u64;
                let mut rest = h;
                for &p in primes {
                    while rest % p == 0 {
                        rest /= p;
                    }
                }
                rest == 1 && primes.iter().all(|&p| idx % p != 0)
            })
            .collect()
    }

    /// The interval [N, G] of subgroups containing a normal N, with the
    /// induced order; also returns the member subgroup indices.
    pub fn interval_poset(&self, n_idx: usize) -> Result<(FinitePoset, Vec<usize>)> {
        if self.class_members[self.class_of[n_idx] as usize].len() != 1 {
            return Err(Error::NotNormal);
        }
        let nodes: Vec<usize> = (0..self.subgroups.len())
            .filter(|&i| self.leq.get(n_idx, i))
            .collect();
        let k = nodes.len();
        let mut m = BitMatrix::new(k);
        for a in 0..k {
            for b in 0..k {
                if self.leq.get(nodes[a], nodes[b]) {
                    m.set(a, b);
                }
            }
        }
        Ok((FinitePoset::new(m, None)?, nodes))
    }
}

impl ClassPoset {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, c: usize) -> &ClassInfo {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    pub fn pi(&self, subgroup: usize) -> usize {
        self.pi[subgroup] as usize
    }

    pub fn members(&self, c: usize) -> &[u32] {
        &self.members[c]
    }

    pub fn poset(&self) -> FinitePoset {
        let labels = self
            .classes
            .iter()
            .map(|c| format!("[{}:{}]", c.order, c.rep))
            .collect();
        FinitePoset::new(self.leq.clone(), Some(labels)).expect("class order is a poset")
    }
}
