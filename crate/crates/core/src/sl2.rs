//! Split transfer systems for SL2 over a prime field with p = +-3 mod 8.
//!
//! The class poset of such a group is covered by two small pieces: the
//! classes inside universally lossless maximal subgroups, and the subgroups
//! of one dicyclic torus normalizer. A transfer system decomposes into a
//! compatible triple over these pieces, and the round-trip identity of
//! decompose/lift is an open question this module tests by sampling.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::group::{build_group_bounded, Group, GroupSpec, DEFAULT_MAX_ORDER};
use crate::lattice::{enumerate_subgroups, ClassPoset, SubgroupLattice};
use crate::lossless::is_universally_lossless;
use crate::poset::FinitePoset;
use crate::transfer::{arrow_orbit_reps, g_closure, is_cat_transfer_system, Relation, Violation};

/// Everything needed to move transfer systems between the full lattice and
/// the two covering posets.
pub struct Sl2Frame {
    pub p: u64,
    pub eps: i64,
    pub group: Group,
    pub lattice: SubgroupLattice,
    pub cp: ClassPoset,
    /// Torus normalizer of order 2(p + eps), dicyclic.
    pub h_eps: usize,
    /// One node per H_eps-conjugacy class of subgroups of H_eps, ordered by
    /// (order, least member); the extra top node is last.
    pub d_poset: FinitePoset,
    pub d_reps: Vec<usize>,
    /// d node of each subgroup of H_eps.
    d_node_of: Vec<Option<u32>>,
    /// Class (in cp) of each d node.
    pub psi_d: Vec<usize>,
    /// Classes lying inside a universally lossless maximal subgroup, plus
    /// the top class; ascending class index.
    pub u_classes: Vec<usize>,
    pub u_poset: FinitePoset,
    u_pos_of_class: Vec<Option<u32>>,
    /// D nodes whose class appears among u_classes.
    pub i_nodes: Vec<usize>,
    pub i_poset: FinitePoset,
    /// Subgroup indices (class representatives) of the universally lossless
    /// maximal subgroups.
    pub ul_maximal_reps: Vec<usize>,
    in_ul_max: Vec<bool>,
    conj_into_heps: Vec<Option<u32>>,
}

/// The triple of class-level systems a full system splits into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTransferSystem {
    pub r_d: Relation,
    pub r_i: Relation,
    pub r_u: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitPart {
    D,
    I,
    U,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitViolation {
    Component(SplitPart, Violation),
    /// Some order-4 cyclic node reaches the top but not all three do.
    C4Saturation,
    /// R_I and R_D disagree at the given pair of D nodes.
    DCompatibility(usize, usize),
    /// R_U disagrees with the image of R_I at the given pair of U nodes.
    UCompatibility(usize, usize),
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn is_cyclic_set(g: &Group, s: &crate::bitset::BitSet) -> bool {
    s.iter().any(|x| g.element_order(x) == s.len())
}

pub fn build_frame(p: u64) -> Result<Sl2Frame> {
    build_frame_bounded(p, DEFAULT_MAX_ORDER)
}

pub fn build_frame_bounded(p: u64, max_order: usize) -> Result<Sl2Frame> {
    // p = 11 satisfies the congruence but is excluded by hypothesis.
    if !is_prime(p) || p < 5 || p == 11 || (p % 8 != 3 && p % 8 != 5) {
        return Err(Error::BadPrime(p));
    }
    let eps: i64 = if (p + 1) % 8 == 4 { 1 } else { -1 };
    debug_assert_eq!((p as i64 + eps).rem_euclid(8), 4);
    let group = build_group_bounded(&GroupSpec::Sl2(p), max_order)?;
    let lattice = enumerate_subgroups(&group)?;
    let cp = lattice.quotient_poset();
    let torus_order = (p as i64 + eps) as usize;

    // H_eps: normalizer of a cyclic subgroup of order p + eps.
    let torus = (0..lattice.len())
        .find(|&i| {
            lattice.subgroup(i).len() == torus_order && is_cyclic_set(&group, lattice.subgroup(i))
        })
        .ok_or(Error::BadPrime(p))?;
    let h_eps = lattice.normalizer_of(torus);
    if lattice.subgroup(h_eps).len() != 2 * torus_order {
        return Err(Error::BadPrime(p));
    }
    let dic = build_group_bounded(&GroupSpec::Dicyclic(torus_order as u64 / 2), max_order)?;
    if !group
        .subgroup_as_group(lattice.subgroup(h_eps))?
        .is_isomorphic(&dic, 2 * torus_order)?
    {
        return Err(Error::BadPrime(p));
    }

    // Maximal classes and their universal-losslessness classification.
    let top_class = cp.pi(lattice.top());
    let mut ul_maximal_reps = Vec::new();
    for c in 0..cp.len() {
        if c == top_class {
            continue;
        }
        let maximal = (0..cp.len())
            .all(|b| b == c || b == top_class || !cp.leq(c, b));
        if !maximal {
            continue;
        }
        let rep = cp.class(c).rep;
        let o = lattice.subgroup(rep).len();
        let sub = group.subgroup_as_group(lattice.subgroup(rep))?;
        let subl = enumerate_subgroups(&sub)?;
        let ul = is_universally_lossless(&sub, &subl)?;
        // Classify against the known list; anything else is unexpected.
        let pu = p as usize;
        let expected_ul = if c == cp.pi(h_eps) {
            p == 5 // H_eps itself; universally lossless only degenerately
        } else if o == pu * (pu - 1) {
            true // Borel
        } else if o == 2 * ((p as i64 - eps) as usize) {
            true // normalizer of the other torus
        } else if o == 24 || o == 120 {
            true // binary tetrahedral / icosahedral
        } else {
            return Err(Error::InvalidSpec(alloc::format!(
                "unexpected maximal subgroup of order {o}"
            )));
        };
        if ul != expected_ul {
            return Err(Error::InvalidSpec(alloc::format!(
                "maximal subgroup of order {o}: losslessness classification mismatch"
            )));
        }
        if ul {
            ul_maximal_reps.push(rep);
        }
    }

    // Membership in some conjugate of a universally lossless maximal.
    let mut ul_members: Vec<usize> = Vec::new();
    for &rep in &ul_maximal_reps {
        for &m in cp.members(cp.pi(rep)) {
            ul_members.push(m as usize);
        }
    }
    let in_ul_max: Vec<bool> = (0..lattice.len())
        .map(|i| ul_members.iter().any(|&m| lattice.leq(i, m)))
        .collect();

    // D nodes: orbits of Sub(H_eps) under H_eps-conjugation, plus a top.
    let heps_elems: Vec<usize> = lattice.subgroup(h_eps).iter().collect();
    let mut d_node_of: Vec<Option<u32>> = vec![None; lattice.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..lattice.len() {
        if !lattice.leq(i, h_eps) || d_node_of[i].is_some() {
            continue;
        }
        let id = orbits.len() as u32;
        let mut members = vec![i];
        d_node_of[i] = Some(id);
        let mut stack = vec![i];
        while let Some(a) = stack.pop() {
            for &e in &heps_elems {
                let b = lattice.conjugate(e, a);
                if d_node_of[b].is_none() {
                    d_node_of[b] = Some(id);
                    members.push(b);
                    stack.push(b);
                }
            }
        }
        orbits.push(members);
    }
    // Canonical node order: (subgroup order, least member), top last.
    let mut order_idx: Vec<usize> = (0..orbits.len()).collect();
    order_idx.sort_by_key(|&o| {
        let rep = *orbits[o].iter().min().unwrap();
        (lattice.subgroup(rep).len(), rep)
    });
    let mut renumber = vec![0u32; orbits.len()];
    for (new, &old) in order_idx.iter().enumerate() {
        renumber[old] = new as u32;
    }
    for slot in d_node_of.iter_mut().flatten() {
        *slot = renumber[*slot as usize];
    }
    let orbits: Vec<Vec<usize>> = order_idx.iter().map(|&o| orbits[o].clone()).collect();
    let d_reps: Vec<usize> = orbits
        .iter()
        .map(|m| *m.iter().min().unwrap())
        .chain(core::iter::once(lattice.top()))
        .collect();
    let nd = d_reps.len();
    let mut dm = BitMatrix::new(nd);
    for a in 0..nd - 1 {
        for b in 0..nd - 1 {
            if orbits[a]
                .iter()
                .any(|&m| lattice.leq(m, d_reps[b]))
            {
                dm.set(a, b);
            }
        }
    }
    for a in 0..nd {
        dm.set(a, nd - 1);
        dm.set(a, a);
    }
    let d_labels: Vec<alloc::string::String> = d_reps
        .iter()
        .map(|&r| alloc::format!("[{}:{}]", lattice.subgroup(r).len(), r))
        .collect();
    let d_poset = FinitePoset::new(dm, Some(d_labels))?;
    let psi_d: Vec<usize> = d_reps.iter().map(|&r| cp.pi(r)).collect();

    // U classes: inside a universally lossless maximal, or the whole group.
    let u_classes: Vec<usize> = (0..cp.len())
        .filter(|&c| c == top_class || in_ul_max[cp.class(c).rep])
        .collect();
    let mut u_pos_of_class: Vec<Option<u32>> = vec![None; cp.len()];
    for (pos, &c) in u_classes.iter().enumerate() {
        u_pos_of_class[c] = Some(pos as u32);
    }
    let u_poset = cp.poset().restrict(&u_classes);

    // I nodes: D nodes whose class is a U class.
    let i_nodes: Vec<usize> = (0..nd)
        .filter(|&d| u_pos_of_class[psi_d[d]].is_some())
        .collect();
    let i_poset = d_poset.restrict(&i_nodes);

    // Least conjugator into H_eps per subgroup.
    let conj_into_heps: Vec<Option<u32>> = (0..lattice.len())
        .map(|i| {
            (0..group.order())
                .find(|&e| lattice.leq(lattice.conjugate(e, i), h_eps))
                .map(|e| e as u32)
        })
        .collect();

    Ok(Sl2Frame {
        p,
        eps,
        group,
        lattice,
        cp,
        h_eps,
        d_poset,
        d_reps,
        d_node_of,
        psi_d,
        u_classes,
        u_poset,
        u_pos_of_class,
        i_nodes,
        i_poset,
        ul_maximal_reps,
        in_ul_max,
        conj_into_heps,
    })
}

impl Sl2Frame {
    pub fn d_top(&self) -> usize {
        self.d_reps.len() - 1
    }

    pub fn d_node_of(&self, subgroup: usize) -> Option<usize> {
        if subgroup == self.lattice.top() {
            return Some(self.d_top());
        }
        self.d_node_of[subgroup].map(|d| d as usize)
    }

    pub fn u_pos_of_class(&self, class: usize) -> Option<usize> {
        self.u_pos_of_class[class].map(|u| u as usize)
    }

    pub fn in_ul_maximal(&self, subgroup: usize) -> bool {
        self.in_ul_max[subgroup]
    }

    /// phi_U on I-node positions: the U position of the node's class.
    pub fn phi_u(&self, i_pos: usize) -> usize {
        self.u_pos_of_class[self.psi_d[self.i_nodes[i_pos]]]
            .expect("I nodes map into U classes") as usize
    }
}

pub fn decompose(frame: &Sl2Frame, rg: &Relation) -> SplitTransferSystem {
    let l = &frame.lattice;
    let top = l.top();
    let nd = frame.d_reps.len();
    let mut r_d = Relation::reflexive(nd);
    let mut r_u = Relation::reflexive(frame.u_classes.len());
    for (i, j) in rg.matrix().iter_pairs() {
        if l.leq(i, frame.h_eps) {
            // The restriction domain includes the whole group on top so the
            // arrows the lift consumes at the top vertex survive.
            if l.leq(j, frame.h_eps) {
                r_d.add(
                    frame.d_node_of(i).unwrap(),
                    frame.d_node_of(j).unwrap(),
                );
            } else if j == top {
                r_d.add(frame.d_node_of(i).unwrap(), frame.d_top());
            }
        }
        if let (Some(u), Some(v)) = (
            frame.u_pos_of_class(frame.cp.pi(i)),
            frame.u_pos_of_class(frame.cp.pi(j)),
        ) {
            r_u.add(u, v);
        }
    }
    let mut r_i = Relation::reflexive(frame.i_nodes.len());
    for (a, &da) in frame.i_nodes.iter().enumerate() {
        for (b, &db) in frame.i_nodes.iter().enumerate() {
            if r_d.contains(da, db) {
                r_i.add(a, b);
            }
        }
    }
    SplitTransferSystem { r_d, r_i, r_u }
}

pub fn is_split_transfer_system(
    frame: &Sl2Frame,
    triple: &SplitTransferSystem,
) -> Option<SplitViolation> {
    if let Some(v) = is_cat_transfer_system(&frame.d_poset, &triple.r_d) {
        return Some(SplitViolation::Component(SplitPart::D, v));
    }
    if let Some(v) = is_cat_transfer_system(&frame.i_poset, &triple.r_i) {
        return Some(SplitViolation::Component(SplitPart::I, v));
    }
    if let Some(v) = is_cat_transfer_system(&frame.u_poset, &triple.r_u) {
        return Some(SplitViolation::Component(SplitPart::U, v));
    }
    // All order-4 cyclic nodes reach the top together or not at all.
    let c4s: Vec<usize> = (0..frame.d_reps.len() - 1)
        .filter(|&d| {
            let s = frame.lattice.subgroup(frame.d_reps[d]);
            s.len() == 4 && is_cyclic_set(&frame.group, s)
        })
        .collect();
    let up = c4s
        .iter()
        .filter(|&&d| triple.r_d.contains(d, frame.d_top()))
        .count();
    if up != 0 && up != c4s.len() {
        return Some(SplitViolation::C4Saturation);
    }
    for (a, &da) in frame.i_nodes.iter().enumerate() {
        for (b, &db) in frame.i_nodes.iter().enumerate() {
            if triple.r_i.contains(a, b) != triple.r_d.contains(da, db) {
                return Some(SplitViolation::DCompatibility(da, db));
            }
        }
    }
    // On the joint image, R_U must be exactly the image of R_I.
    let in_image: BTreeSet<usize> = (0..frame.i_nodes.len()).map(|a| frame.phi_u(a)).collect();
    for &u in &in_image {
        for &v in &in_image {
            let image_hit = (0..frame.i_nodes.len()).any(|a| {
                frame.phi_u(a) == u
                    && (0..frame.i_nodes.len())
                        .any(|b| frame.phi_u(b) == v && triple.r_i.contains(a, b))
            });
            if triple.r_u.contains(u, v) != image_hit {
                return Some(SplitViolation::UCompatibility(u, v));
            }
        }
    }
    None
}

/// Rebuilds a relation on the full lattice from a valid triple, case by
/// case on the target subgroup.
pub fn lift_split(frame: &Sl2Frame, triple: &SplitTransferSystem) -> Result<Relation> {
    if let Some(v) = is_split_transfer_system(frame, triple) {
        return Err(Error::InvalidTriple(alloc::format!("{v:?}")));
    }
    let l = &frame.lattice;
    let top = l.top();
    let mut r = Relation::reflexive(l.len());
    for k in 0..l.len() {
        for h in 0..l.len() {
            if k == h || !l.leq(k, h) {
                continue;
            }
            let related = if h == top {
                if frame.in_ul_max[k] {
                    let u = frame.u_pos_of_class(frame.cp.pi(k)).unwrap();
                    let v = frame.u_pos_of_class(frame.cp.pi(top)).unwrap();
                    triple.r_u.contains(u, v)
                } else {
                    let e = frame.conj_into_heps[k].ok_or_else(|| {
                        Error::InvalidTriple(alloc::format!(
                            "subgroup {k} not conjugate into the torus normalizer"
                        ))
                    })? as usize;
                    let dk = frame.d_node_of(l.conjugate(e, k)).unwrap();
                    triple.r_d.contains(dk, frame.d_top())
                }
            } else if frame.in_ul_max[h] {
                let u = frame.u_pos_of_class(frame.cp.pi(k)).unwrap();
                let v = frame.u_pos_of_class(frame.cp.pi(h)).unwrap();
                triple.r_u.contains(u, v)
            } else {
                let e = frame.conj_into_heps[h].ok_or_else(|| {
                    Error::InvalidTriple(alloc::format!(
                        "subgroup {h} not conjugate into the torus normalizer"
                    ))
                })? as usize;
                let dk = frame.d_node_of(l.conjugate(e, k)).unwrap();
                let dh = frame.d_node_of(l.conjugate(e, h)).unwrap();
                triple.r_d.contains(dk, dh)
            };
            if related {
                r.add(k, h);
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct ConjectureFailure {
    pub seed_arrows: Vec<(usize, usize)>,
    pub violation: Option<SplitViolation>,
    /// First subgroup pair where the lifted relation differs.
    pub first_diff: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub p: u64,
    pub samples: usize,
    pub passes: usize,
    pub failures: Vec<ConjectureFailure>,
}

fn check_one(frame: &Sl2Frame, seeds: &[(usize, usize)]) -> Option<ConjectureFailure> {
    let rg = g_closure(&frame.lattice, seeds).expect("orbit reps respect containment");
    let triple = decompose(frame, &rg);
    if let Some(v) = is_split_transfer_system(frame, &triple) {
        return Some(ConjectureFailure {
            seed_arrows: seeds.to_vec(),
            violation: Some(v),
            first_diff: None,
        });
    }
    let lifted = lift_split(frame, &triple).expect("triple was just validated");
    if lifted != rg {
        let diff = lifted
            .matrix()
            .iter_pairs()
            .chain(rg.matrix().iter_pairs())
            .find(|&(a, b)| lifted.contains(a, b) != rg.contains(a, b));
        return Some(ConjectureFailure {
            seed_arrows: seeds.to_vec(),
            violation: None,
            first_diff: diff,
        });
    }
    None
}

/// Round-trip experiment: reflexive and full systems, every single-orbit
/// closure when requested, and seed-reproducible pseudorandom orbit subsets.
pub fn conjecture_check(
    frame: &Sl2Frame,
    random_samples: usize,
    seed: u64,
    include_singles: bool,
) -> ConjectureReport {
    let reps = arrow_orbit_reps(&frame.lattice);
    let mut samples = 0usize;
    let mut failures = Vec::new();
    let mut run = |seeds: &[(usize, usize)], failures: &mut Vec<ConjectureFailure>| {
        samples += 1;
        if let Some(f) = check_one(frame, seeds) {
            failures.push(f);
        }
    };
    run(&[], &mut failures);
    run(&reps, &mut failures); // closure of all orbits = the full system
    if include_singles {
        for &r in &reps {
            run(&[r], &mut failures);
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_samples {
        let k = 1 + (rng.next_u32() as usize) % 4;
        let mut picked = BTreeSet::new();
        while picked.len() < k {
            picked.insert(reps[(rng.next_u32() as usize) % reps.len()]);
        }
        let seeds: Vec<(usize, usize)> = picked.into_iter().collect();
        run(&seeds, &mut failures);
    }
    ConjectureReport {
        p: frame.p,
        samples,
        passes: samples - failures.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame13() -> Sl2Frame {
        build_frame(13).unwrap()
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(matches!(build_frame(7), Err(Error::BadPrime(7))));
        assert!(matches!(build_frame(9), Err(Error::BadPrime(9))));
        assert!(matches!(build_frame(11), Err(Error::BadPrime(11))));
        assert!(matches!(build_frame(17), Err(Error::BadPrime(17))));
        assert!(matches!(build_frame(19), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn frame_13_shape() {
        let f = frame13();
        assert_eq!(f.eps, -1);
        assert_eq!(f.lattice.subgroup(f.h_eps).len(), 24);
        assert_eq!(f.cp.len(), 21);
        // D poset: 12 orbit classes of the order-24 dicyclic plus a top.
        assert_eq!(f.d_poset.size(), 13);
        // Exactly three order-4 cyclic nodes, all below the quaternion node.
        let c4s: Vec<usize> = (0..f.d_reps.len() - 1)
            .filter(|&d| f.lattice.subgroup(f.d_reps[d]).len() == 4
                && is_cyclic_set(&f.group, f.lattice.subgroup(f.d_reps[d])))
            .collect();
        assert_eq!(c4s.len(), 3);
        let q8 = (0..f.d_reps.len() - 1)
            .find(|&d| f.lattice.subgroup(f.d_reps[d]).len() == 8)
            .unwrap();
        for &c in &c4s {
            assert!(f.d_poset.leq(c, q8));
        }
        // U leaves out exactly the two Dic3 classes and the Dic6 class.
        assert_eq!(f.u_classes.len(), 18);
        let missing: Vec<usize> = (0..f.cp.len())
            .filter(|&c| f.u_pos_of_class(c).is_none())
            .collect();
        let orders: Vec<usize> = missing.iter().map(|&c| f.cp.class(c).order).collect();
        assert_eq!(orders, alloc::vec![12, 12, 24]);
        // I drops the same shapes from D.
        assert_eq!(f.i_nodes.len(), 10);
        // Universally lossless maximals: Borel, torus normalizer, binary
        // tetrahedral.
        let mut ul_orders: Vec<usize> = f
            .ul_maximal_reps
            .iter()
            .map(|&r| f.lattice.subgroup(r).len())
            .collect();
        ul_orders.sort_unstable();
        assert_eq!(ul_orders, alloc::vec![24, 28, 156]);
    }

    #[test]
    fn equal_order_cyclic_subgroups_are_conjugate() {
        let f = frame13();
        for i in 0..f.lattice.len() {
            for j in 0..f.lattice.len() {
                if f.lattice.subgroup(i).len() == f.lattice.subgroup(j).len()
                    && is_cyclic_set(&f.group, f.lattice.subgroup(i))
                    && is_cyclic_set(&f.group, f.lattice.subgroup(j))
                {
                    assert_eq!(f.lattice.class_of(i), f.lattice.class_of(j));
                }
            }
        }
    }

    #[test]
    fn center_is_the_intersection_of_torus_normalizers() {
        let f = frame13();
        let z = f.group.center();
        assert_eq!(z.len(), 2);
        let zi = f.lattice.index_of(&z).unwrap();
        // Some conjugate pair of the two normalizers meets exactly in Z,
        // and Z sits inside every conjugate of both.
        let other = (0..f.lattice.len())
            .find(|&i| f.lattice.subgroup(i).len() == 28)
            .unwrap();
        let mut exact = false;
        for &m in f.cp.members(f.cp.pi(other)) {
            let m = m as usize;
            assert!(f.lattice.leq(zi, m));
            if f.lattice.meet(f.h_eps, m) == zi {
                exact = true;
            }
        }
        assert!(exact);
        for &m in f.cp.members(f.cp.pi(f.h_eps)) {
            assert!(f.lattice.leq(zi, m as usize));
        }
    }

    /// Schematic 21-node diagram of the class poset, nodes as
    /// (order, cyclic?) and edges normalized from smaller to larger order.
    fn reference_diagram() -> (Vec<(usize, bool)>, Vec<(usize, usize)>) {
        let nodes = alloc::vec![
            (1, true),      // 0 e
            (2, true),      // 1 C2
            (3, true),      // 2 C3
            (4, true),      // 3 C4
            (6, true),      // 4 C6
            (7, true),      // 5 C7
            (8, false),     // 6 Q8
            (12, true),     // 7 C12
            (12, false),    // 8 Dic3
            (12, false),    // 9 Dic3
            (13, true),     // 10 C13
            (14, true),     // 11 C14
            (24, false),    // 12 Dic6
            (24, false),    // 13 SL2(F3)
            (26, true),     // 14 C26
            (28, false),    // 15 Dic7
            (39, false),    // 16 C13:C3
            (52, false),    // 17 Dic13
            (78, false),    // 18 C2 x C13:C3
            (156, false),   // 19 Borel
            (2184, false),  // 20 G
        ];
        let edges = alloc::vec![
            (0, 2), (0, 1), (1, 3), (2, 4), (1, 4),
            (4, 8), (4, 9), (4, 7), (3, 6), (3, 8),
            (8, 12), (9, 12), (7, 12), (6, 12),
            (3, 9), (3, 7), (3, 15),
            (11, 15), (5, 11), (0, 5), (1, 11),
            (0, 10), (10, 14), (1, 14),
            (14, 17), (3, 17),
            (14, 18), (4, 18), (16, 18),
            (2, 16), (10, 16),
            (18, 19), (17, 19), (7, 19),
            (6, 13), (4, 13),
            (15, 20), (12, 20), (13, 20), (19, 20),
        ];
        (nodes, edges)
    }

    #[test]
    fn class_poset_embeds_the_reference_diagram() {
        let f = frame13();
        let (nodes, edges) = reference_diagram();
        assert_eq!(nodes.len(), f.cp.len());
        // Candidates by order and cyclicness; then match edges by
        // backtracking into distinct classes.
        let cand: Vec<Vec<usize>> = nodes
            .iter()
            .map(|&(o, cyc)| {
                (0..f.cp.len())
                    .filter(|&c| {
                        f.cp.class(c).order == o
                            && is_cyclic_set(&f.group, f.lattice.subgroup(f.cp.class(c).rep))
                                == cyc
                    })
                    .collect()
            })
            .collect();
        fn search(
            pos: usize,
            cand: &[Vec<usize>],
            edges: &[(usize, usize)],
            cp: &ClassPoset,
            image: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if pos == cand.len() {
                return true;
            }
            for &c in &cand[pos] {
                if used[c] {
                    continue;
                }
                let consistent = edges.iter().all(|&(a, b)| {
                    if a == pos && b < pos {
                        cp.leq(c, image[b])
                    } else if b == pos && a < pos {
                        cp.leq(image[a], c)
                    } else {
                        true
                    }
                });
                if consistent {
                    image[pos] = c;
                    used[c] = true;
                    if search(pos + 1, cand, edges, cp, image, used) {
                        return true;
                    }
                    used[c] = false;
                }
            }
            false
        }
        let mut image = alloc::vec![usize::MAX; nodes.len()];
        let mut used = alloc::vec![false; f.cp.len()];
        assert!(search(0, &cand, &edges, &f.cp, &mut image, &mut used));
    }

    #[test]
    fn d_poset_matches_reference_shape() {
        let f = frame13();
        // 13 nodes: bottom, C2, C3, C6, three C4, two Dic3, C12, Q8, Dic6,
        // top.
        let mut orders: Vec<usize> = (0..f.d_reps.len() - 1)
            .map(|d| f.lattice.subgroup(f.d_reps[d]).len())
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, alloc::vec![1, 2, 3, 4, 4, 4, 6, 8, 12, 12, 12, 24]);
        let edges: &[(usize, usize)] = &[
            (0, 1), (0, 2), (2, 4), (1, 4), (1, 3), (1, 5), (1, 6),
            (4, 8), (4, 9), (4, 10), (3, 7), (5, 7), (6, 7),
            (3, 8), (5, 9), (6, 10),
            (8, 11), (9, 11), (10, 11), (7, 11),
            (11, 12), (7, 12),
        ];
        // Node ids in this edge list: 0 e, 1 C2, 2 C3, 3-5-6 the C4s, 4 C6,
        // 7 Q8, 8 9 the Dic3s, 10 C12, 11 Dic6, 12 top.
        let reference = FinitePoset::from_edges(13, edges, None).unwrap();
        assert!(f.d_poset.is_isomorphic(&reference).unwrap().is_some());
    }

    #[test]
    fn decompose_extremes() {
        let f = frame13();
        let refl = Relation::reflexive(f.lattice.len());
        let t = decompose(&f, &refl);
        assert!(t.r_d.arrows().is_empty());
        assert!(t.r_i.arrows().is_empty());
        assert!(t.r_u.arrows().is_empty());
        assert_eq!(is_split_transfer_system(&f, &t), None);
        assert_eq!(lift_split(&f, &t).unwrap(), refl);

        let full = Relation::from_matrix(f.lattice.leq_matrix().clone());
        let t = decompose(&f, &full);
        assert_eq!(is_split_transfer_system(&f, &t), None);
        assert_eq!(lift_split(&f, &t).unwrap(), full);
    }

    #[test]
    fn c4_saturation_is_enforced() {
        let f = frame13();
        let c4 = (0..f.d_reps.len() - 1)
            .find(|&d| {
                let s = f.lattice.subgroup(f.d_reps[d]);
                s.len() == 4 && is_cyclic_set(&f.group, s)
            })
            .unwrap();
        let mut t = decompose(&f, &Relation::reflexive(f.lattice.len()));
        // Force a single order-4 node up to the top, closed under the poset
        // rules so only the saturation (or image) check can trip.
        t.r_d = crate::transfer::cat_closure(&f.d_poset, &[(c4, f.d_top())]).unwrap();
        for (a, &da) in f.i_nodes.iter().enumerate() {
            for (b, &db) in f.i_nodes.iter().enumerate() {
                if t.r_d.contains(da, db) {
                    t.r_i.add(a, b);
                }
            }
        }
        let verdict = is_split_transfer_system(&f, &t);
        assert!(
            matches!(
                verdict,
                Some(SplitViolation::C4Saturation) | Some(SplitViolation::UCompatibility(..))
            ),
            "got {verdict:?}"
        );
    }

    #[test]
    fn single_borel_seed_decomposition() {
        let f = frame13();
        let c13 = (0..f.lattice.len())
            .find(|&i| f.lattice.subgroup(i).len() == 13)
            .unwrap();
        let borel = (0..f.lattice.len())
            .find(|&i| f.lattice.subgroup(i).len() == 156 && f.lattice.leq(c13, i))
            .unwrap();
        let rg = g_closure(&f.lattice, &[(c13, borel)]).unwrap();
        let t = decompose(&f, &rg);
        let u13 = f.u_pos_of_class(f.cp.pi(c13)).unwrap();
        let ub = f.u_pos_of_class(f.cp.pi(borel)).unwrap();
        assert!(t.r_u.contains(u13, ub));
        // Restricting the seed against the cyclic subgroups of the Borel
        // leaves only bottom-sourced arrows in the D part, none to the top.
        assert!(!t.r_d.arrows().is_empty());
        assert!(t
            .r_d
            .arrows()
            .iter()
            .all(|&(a, b)| a == 0 && b != f.d_top()));
        assert_eq!(is_split_transfer_system(&f, &t), None);
        assert_eq!(lift_split(&f, &t).unwrap(), rg);
    }

    #[test]
    fn conjecture_holds_on_sampled_systems() {
        let f = frame13();
        let report = conjecture_check(&f, 25, 0xA5A5, false);
        assert_eq!(report.passes, report.samples, "{:?}", report.failures);
    }
}
