//! Transfer systems: reflexive sub-relations of the containment order that
//! are closed under the structure of the carrier — conjugation and
//! restriction on a subgroup lattice, the maximal-lower-bound rule on an
//! abstract poset — plus least-closure and exhaustive enumeration.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::poset::FinitePoset;

/// Enumeration refuses carriers with more than this many generator pairs
/// (comparable pairs, or conjugation orbits of them).
pub const MAX_ENUM_PAIRS: usize = 24;

/// A reflexive relation refining the carrier order, indexed like the carrier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Relation {
    pairs: BitMatrix,
}

impl Relation {
    pub fn reflexive(n: usize) -> Self {
        Relation {
            pairs: BitMatrix::identity(n),
        }
    }

    pub fn from_matrix(pairs: BitMatrix) -> Self {
        let mut pairs = pairs;
        for i in 0..pairs.size() {
            pairs.set(i, i);
        }
        Relation { pairs }
    }

    pub fn size(&self) -> usize {
        self.pairs.size()
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.get(i, j)
    }

    pub fn add(&mut self, i: usize, j: usize) {
        self.pairs.set(i, j);
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.pairs
    }

    /// Non-reflexive pairs in index order; the canonical external form.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        self.pairs.iter_pairs().filter(|&(i, j)| i != j).collect()
    }

    pub fn is_subrelation(&self, other: &Relation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }
}

/// First violated axiom, in the order the axioms are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotReflexive(usize),
    NotRefining(usize, usize),
    NotTransitive(usize, usize, usize),
    /// Arrow whose conjugate by the given element is missing.
    NotConjugationClosed {
        from: usize,
        to: usize,
        by: usize,
    },
    /// K -> H present but (K ∩ L) -> L missing for the given L ≤ H.
    NotRestrictionClosed {
        from: usize,
        to: usize,
        against: usize,
    },
    /// x -> y present, z ≤ y, but some maximal lower bound w of {x, z}
    /// lacks w -> z.
    NotMlbClosed {
        from: usize,
        to: usize,
        against: usize,
        witness: usize,
    },
}

pub fn is_g_transfer_system(l: &SubgroupLattice, r: &Relation) -> Option<Violation> {
    let n = l.len();
    debug_assert_eq!(r.size(), n);
    for i in 0..n {
        if !r.contains(i, i) {
            return Some(Violation::NotReflexive(i));
        }
    }
    for (i, j) in r.matrix().iter_pairs() {
        if !l.leq(i, j) {
            return Some(Violation::NotRefining(i, j));
        }
    }
    for (i, j) in r.matrix().iter_pairs() {
        for k in r.matrix().iter_row(j) {
            if !r.contains(i, k) {
                return Some(Violation::NotTransitive(i, j, k));
            }
        }
    }
    // Closure under the generators implies closure under every element.
    for (i, j) in r.matrix().iter_pairs() {
        for &e in l.group_generators() {
            if !r.contains(l.conjugate(e, i), l.conjugate(e, j)) {
                return Some(Violation::NotConjugationClosed { from: i, to: j, by: e });
            }
        }
    }
    for (i, j) in r.matrix().iter_pairs() {
        for sub in 0..n {
            if l.leq(sub, j) && !r.contains(l.meet(i, sub), sub) {
                return Some(Violation::NotRestrictionClosed {
                    from: i,
                    to: j,
                    against: sub,
                });
            }
        }
    }
    None
}

pub fn is_cat_transfer_system(p: &FinitePoset, r: &Relation) -> Option<Violation> {
    let n = p.size();
    debug_assert_eq!(r.size(), n);
    for i in 0..n {
        if !r.contains(i, i) {
            return Some(Violation::NotReflexive(i));
        }
    }
    for (i, j) in r.matrix().iter_pairs() {
        if !p.leq(i, j) {
            return Some(Violation::NotRefining(i, j));
        }
    }
    for (i, j) in r.matrix().iter_pairs() {
        for k in r.matrix().iter_row(j) {
            if !r.contains(i, k) {
                return Some(Violation::NotTransitive(i, j, k));
            }
        }
    }
    for (x, y) in r.matrix().iter_pairs() {
        for z in 0..n {
            if !p.leq(z, y) {
                continue;
            }
            for w in p.maximal_lower_bounds(x, z) {
                if !r.contains(w, z) {
                    return Some(Violation::NotMlbClosed {
                        from: x,
                        to: y,
                        against: z,
                        witness: w,
                    });
                }
            }
        }
    }
    None
}

fn g_close_in_place(l: &SubgroupLattice, m: &mut BitMatrix) {
    let n = l.len();
    // below[j] = subgroups contained in j, once per closure.
    let below: Vec<Vec<u32>> = (0..n)
        .map(|j| (0..n).filter(|&i| l.leq(i, j)).map(|i| i as u32).collect())
        .collect();
    loop {
        let before = m.count();
        let arrows: Vec<(usize, usize)> = m.iter_pairs().filter(|&(i, j)| i != j).collect();
        for &(i, j) in &arrows {
            for &e in l.group_generators() {
                m.set(l.conjugate(e, i), l.conjugate(e, j));
            }
            for &sub in &below[j] {
                m.set(l.meet(i, sub as usize), sub as usize);
            }
        }
        m.transitive_close();
        if m.count() == before {
            return;
        }
    }
}

/// Least G-transfer system containing the seed arrows.
pub fn g_closure(l: &SubgroupLattice, seed: &[(usize, usize)]) -> Result<Relation> {
    let mut m = BitMatrix::identity(l.len());
    for &(i, j) in seed {
        if !l.leq(i, j) {
            return Err(Error::InvalidArrow { from: i, to: j });
        }
        m.set(i, j);
    }
    g_close_in_place(l, &mut m);
    Ok(Relation { pairs: m })
}

fn cat_close_in_place(p: &FinitePoset, m: &mut BitMatrix) {
    let n = p.size();
    loop {
        let before = m.count();
        let arrows: Vec<(usize, usize)> = m.iter_pairs().filter(|&(i, j)| i != j).collect();
        for &(x, y) in &arrows {
            for z in 0..n {
                if !p.leq(z, y) {
                    continue;
                }
                for w in p.maximal_lower_bounds(x, z) {
                    m.set(w, z);
                }
            }
        }
        m.transitive_close();
        if m.count() == before {
            return;
        }
    }
}

/// Least categorical transfer system containing the seed arrows.
pub fn cat_closure(p: &FinitePoset, seed: &[(usize, usize)]) -> Result<Relation> {
    let mut m = BitMatrix::identity(p.size());
    for &(i, j) in seed {
        if !p.leq(i, j) {
            return Err(Error::InvalidArrow { from: i, to: j });
        }
        m.set(i, j);
    }
    cat_close_in_place(p, &mut m);
    Ok(Relation { pairs: m })
}

/// All categorical transfer systems on the poset, by saturating single-arrow
/// additions: every system is reached because a larger system can be built
/// from a smaller one by adding any one missing arrow and closing.
pub fn enumerate_cat_transfer_systems(p: &FinitePoset) -> Result<Vec<Relation>> {
    let pairs = p.strict_pairs();
    if pairs.len() > MAX_ENUM_PAIRS {
        return Err(Error::TooLarge {
            what: "comparable pair count",
            size: pairs.len(),
            bound: MAX_ENUM_PAIRS,
        });
    }
    let mut seen: BTreeSet<BitMatrix> = BTreeSet::new();
    let mut queue: Vec<BitMatrix> = vec![BitMatrix::identity(p.size())];
    seen.insert(queue[0].clone());
    while let Some(s) = queue.pop() {
        for &(a, b) in &pairs {
            if s.get(a, b) {
                continue;
            }
            let mut t = s.clone();
            t.set(a, b);
            cat_close_in_place(p, &mut t);
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    Ok(seen.into_iter().map(|pairs| Relation { pairs }).collect())
}

/// Least representative of each conjugation orbit of non-reflexive
/// comparable pairs.
pub fn arrow_orbit_reps(l: &SubgroupLattice) -> Vec<(usize, usize)> {
    let mut orbit_reps: Vec<(usize, usize)> = Vec::new();
    let mut seen_pair = BTreeSet::new();
    for i in 0..l.len() {
        for j in 0..l.len() {
            if i == j || !l.leq(i, j) || seen_pair.contains(&(i, j)) {
                continue;
            }
            orbit_reps.push((i, j));
            // Orbit under the generators, grown to a fixpoint.
            let mut stack = vec![(i, j)];
            seen_pair.insert((i, j));
            while let Some((a, b)) = stack.pop() {
                for &e in l.group_generators() {
                    let c = (l.conjugate(e, a), l.conjugate(e, b));
                    if seen_pair.insert(c) {
                        stack.push(c);
                    }
                }
            }
        }
    }
    orbit_reps
}

/// All G-transfer systems on the lattice. Granularity is conjugation orbits
/// of arrows: a G-transfer system is a union of orbits, so seeding one
/// representative per orbit loses nothing.
pub fn enumerate_g_transfer_systems(l: &SubgroupLattice) -> Result<Vec<Relation>> {
    let orbit_reps = arrow_orbit_reps(l);
    if orbit_reps.len() > MAX_ENUM_PAIRS {
        return Err(Error::TooLarge {
            what: "arrow orbit count",
            size: orbit_reps.len(),
            bound: MAX_ENUM_PAIRS,
        });
    }
    let mut seen: BTreeSet<BitMatrix> = BTreeSet::new();
    let mut queue: Vec<BitMatrix> = vec![BitMatrix::identity(l.len())];
    seen.insert(queue[0].clone());
    while let Some(s) = queue.pop() {
        for &(a, b) in &orbit_reps {
            if s.get(a, b) {
                continue;
            }
            let mut t = s.clone();
            t.set(a, b);
            g_close_in_place(l, &mut t);
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    Ok(seen.into_iter().map(|pairs| Relation { pairs }).collect())
}
