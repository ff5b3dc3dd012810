//! Losslessness: whether G-conjugacy of subgroups below a fixed H is always
//! witnessed inside the normalizer of H. Includes the stronger
//! isomorphic-implies-conjugate property, pronormality, T-groups, and the
//! sufficient structural criteria.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::Result;
use crate::group::{Group, DEFAULT_ISO_BOUND};
use crate::lattice::SubgroupLattice;

/// Outcome of the direct losslessness scan. The witness triple (H, K, g)
/// satisfies K, gKg⁻¹ ≤ H with no element of N_G(H) conjugating K to gKg⁻¹,
/// and is lexicographically least.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LosslessVerdict {
    pub lossless: bool,
    pub witness: Option<(usize, usize, usize)>,
}

/// Assigns each subgroup below `h` an orbit id under conjugation by N_G(h);
/// entries not below `h` stay usize::MAX.
fn normalizer_orbits(l: &SubgroupLattice, h: usize) -> Vec<usize> {
    let n_h = l.subgroup(l.normalizer_of(h));
    let nelems: Vec<usize> = n_h.iter().collect();
    let mut orbit = alloc::vec![usize::MAX; l.len()];
    let mut next = 0;
    for k in 0..l.len() {
        if !l.leq(k, h) || orbit[k] != usize::MAX {
            continue;
        }
        orbit[k] = next;
        let mut stack = alloc::vec![k];
        while let Some(a) = stack.pop() {
            for &e in &nelems {
                let b = l.conjugate(e, a);
                if orbit[b] == usize::MAX {
                    orbit[b] = next;
                    stack.push(b);
                }
            }
        }
        next += 1;
    }
    orbit
}

pub fn is_lossless(g: &Group, l: &SubgroupLattice) -> LosslessVerdict {
    for h in 0..l.len() {
        let orbit = normalizer_orbits(l, h);
        // A class split across several normalizer orbits means lossy.
        let mut split = false;
        'scan: for k in 0..l.len() {
            if !l.leq(k, h) {
                continue;
            }
            for &m in l.class_members(l.class_of(k)) {
                let m = m as usize;
                if l.leq(m, h) && orbit[m] != orbit[k] {
                    split = true;
                    break 'scan;
                }
            }
        }
        if !split {
            continue;
        }
        for k in 0..l.len() {
            if !l.leq(k, h) {
                continue;
            }
            for e in 0..g.order() {
                let j = l.conjugate(e, k);
                if l.leq(j, h) && orbit[j] != orbit[k] {
                    return LosslessVerdict {
                        lossless: false,
                        witness: Some((h, k, e)),
                    };
                }
            }
        }
    }
    LosslessVerdict {
        lossless: true,
        witness: None,
    }
}

/// True when isomorphic subgroups are always conjugate; strictly stronger
/// than lossless.
pub fn is_universally_lossless(g: &Group, l: &SubgroupLattice) -> Result<bool> {
    let nc = l.class_count();
    let cp = l.quotient_poset();
    for a in 0..nc {
        for b in (a + 1)..nc {
            if cp.class(a).order != cp.class(b).order {
                continue;
            }
            let ga = g.subgroup_as_group(l.subgroup(cp.class(a).rep))?;
            let gb = g.subgroup_as_group(l.subgroup(cp.class(b).rep))?;
            if ga.is_isomorphic(&gb, DEFAULT_ISO_BOUND)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// K is pronormal when each conjugate gKg⁻¹ is reached from K by an element
/// of the join ⟨K, gKg⁻¹⟩.
pub fn is_pronormal(g: &Group, l: &SubgroupLattice, k: usize) -> bool {
    for e in 0..g.order() {
        let j = l.conjugate(e, k);
        if j == k {
            continue;
        }
        let join = l.join(g, k, j);
        if !l
            .subgroup(join)
            .iter()
            .any(|x| l.conjugate(x, k) == j)
        {
            return false;
        }
    }
    true
}

fn is_normal_in(g: &Group, inner: &BitSet, outer: &BitSet) -> bool {
    outer
        .iter()
        .all(|e| g.conjugate_set(inner, e) == *inner)
}

/// Subnormality via the descending chain of normal closures.
pub fn is_subnormal(g: &Group, l: &SubgroupLattice, k: usize) -> bool {
    let target = l.subgroup(k);
    let mut h = l.subgroup(l.top()).clone();
    loop {
        let next = g
            .normal_closure(target, &h)
            .expect("chain members contain the target");
        if next == h {
            return h == *target;
        }
        h = next;
    }
}

/// Every subnormal subgroup is normal.
pub fn is_t_group(g: &Group, l: &SubgroupLattice) -> bool {
    (0..l.len()).all(|k| {
        !is_subnormal(g, l, k) || l.class_members(l.class_of(k)).len() == 1
    })
}

/// The two-step variant: K normal in H and H normal in G forces K normal
/// in G. Kept separate so the two formulations can be compared.
pub fn is_t_group_two_step(g: &Group, l: &SubgroupLattice) -> bool {
    let top = l.subgroup(l.top());
    for h in 0..l.len() {
        if !is_normal_in(g, l.subgroup(h), top) {
            continue;
        }
        for k in 0..l.len() {
            if l.leq(k, h)
                && is_normal_in(g, l.subgroup(k), l.subgroup(h))
                && !is_normal_in(g, l.subgroup(k), top)
            {
                return false;
            }
        }
    }
    true
}

fn derived_of_set(g: &Group, s: &BitSet) -> BitSet {
    let elems: Vec<usize> = s.iter().collect();
    let mut comms = Vec::new();
    for &a in &elems {
        for &b in &elems {
            comms.push(g.mul(g.mul(a, b), g.inv(g.mul(b, a))));
        }
    }
    g.generated_subgroup(&comms)
}

pub fn is_solvable(g: &Group) -> bool {
    let mut s = g.generated_subgroup(&(0..g.order()).collect::<Vec<_>>());
    loop {
        let d = derived_of_set(g, &s);
        if d.len() == 1 {
            return true;
        }
        if d == s {
            return false;
        }
        s = d;
    }
}

fn is_cyclic_set(g: &Group, s: &BitSet) -> bool {
    s.iter().any(|x| g.element_order(x) == s.len())
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Which of the sufficient structural conditions hold; each one alone
/// implies losslessness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaReport {
    pub solvable_t_group: bool,
    pub cyclic_normal_prime_index: bool,
    pub derived_subgroup_prime_order: bool,
    pub rank_two_elementary_coprime_complement: bool,
}

impl CriteriaReport {
    pub fn any(&self) -> bool {
        self.solvable_t_group
            || self.cyclic_normal_prime_index
            || self.derived_subgroup_prime_order
            || self.rank_two_elementary_coprime_complement
    }
}

pub fn lossless_criteria(g: &Group, l: &SubgroupLattice) -> CriteriaReport {
    let solvable_t_group = is_solvable(g) && is_t_group(g, l);

    let cyclic_normal_prime_index = (0..l.len()).any(|i| {
        l.class_members(l.class_of(i)).len() == 1
            && is_prime(g.order() / l.subgroup(i).len())
            && is_cyclic_set(g, l.subgroup(i))
    });

    let derived_subgroup_prime_order = is_prime(g.derived_subgroup().len());

    // Normal (C_p)^2 with a cyclic complement of coprime order.
    let rank_two_elementary_coprime_complement = (0..l.len()).any(|i| {
        let s = l.subgroup(i);
        let p2 = s.len();
        if l.class_members(l.class_of(i)).len() != 1 {
            return false;
        }
        let p = match p2 {
            4 => 2,
            9 => 3,
            25 => 5,
            49 => 7,
            _ => {
                let mut p = 0;
                for c in 2..p2 {
                    if c * c == p2 {
                        p = c;
                    }
                }
                if p == 0 || !is_prime(p) {
                    return false;
                }
                p
            }
        };
        if !s.iter().all(|x| x == 0 || g.element_order(x) == p) {
            return false;
        }
        let m = g.order() / p2;
        if m % p == 0 {
            return false;
        }
        (0..l.len()).any(|t| {
            l.subgroup(t).len() == m
                && is_cyclic_set(g, l.subgroup(t))
                && l.meet(i, t) == 0
        })
    });

    CriteriaReport {
        solvable_t_group,
        cyclic_normal_prime_index,
        derived_subgroup_prime_order,
        rank_two_elementary_coprime_complement,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};
    use crate::lattice::enumerate_subgroups;
    use alloc::boxed::Box;
    use alloc::vec;
    use alloc::vec::Vec;

    fn make(spec: GroupSpec) -> (Group, SubgroupLattice) {
        let g = build_group(&spec).unwrap();
        let l = enumerate_subgroups(&g).unwrap();
        (g, l)
    }

    fn c2_x_a4() -> GroupSpec {
        GroupSpec::Product(Box::new(GroupSpec::Cyclic(2)), Box::new(GroupSpec::Alternating(4)))
    }

    /// Order-81 group with a Jordan-block action of C3 on (C3)^3.
    fn jordan_81() -> GroupSpec {
        GroupSpec::VecSemidirect {
            p: 3,
            d: 3,
            m: 3,
            matrix: vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]],
        }
    }

    #[test]
    fn abelian_groups_are_lossless() {
        for spec in [
            GroupSpec::Cyclic(12),
            GroupSpec::Product(Box::new(GroupSpec::Cyclic(2)), Box::new(GroupSpec::Cyclic(2))),
            GroupSpec::Product(Box::new(GroupSpec::Cyclic(4)), Box::new(GroupSpec::Cyclic(6))),
        ] {
            let (g, l) = make(spec);
            assert!(is_lossless(&g, &l).lossless);
        }
    }

    #[test]
    fn c2_x_a4_is_lossy_with_valid_witness() {
        let (g, l) = make(c2_x_a4());
        let v = is_lossless(&g, &l);
        assert!(!v.lossless);
        let (h, k, e) = v.witness.unwrap();
        let j = l.conjugate(e, k);
        assert!(l.leq(k, h) && l.leq(j, h) && j != k);
        // No normalizer element of H moves K onto the conjugate.
        let n_h = l.subgroup(l.normalizer_of(h));
        assert!(n_h.iter().all(|x| l.conjugate(x, k) != j));
        // The offending H is a Klein four-group.
        assert_eq!(l.subgroup(h).len(), 4);
        assert!(l.subgroup(h).iter().all(|x| x == 0 || g.element_order(x) == 2));
    }

    #[test]
    fn jordan_block_81_is_lossy() {
        let (g, l) = make(jordan_81());
        assert_eq!(g.order(), 81);
        assert!(!is_lossless(&g, &l).lossless);
    }

    #[test]
    fn universal_losslessness_examples() {
        let (g, l) = make(GroupSpec::Cyclic(12));
        assert!(is_universally_lossless(&g, &l).unwrap());
        let (g, l) = make(GroupSpec::Product(
            Box::new(GroupSpec::Cyclic(2)),
            Box::new(GroupSpec::Cyclic(2)),
        ));
        assert!(!is_universally_lossless(&g, &l).unwrap());
        assert!(is_lossless(&g, &l).lossless, "still lossless: it is abelian");
    }

    #[test]
    fn sl2_f5_is_universally_lossless() {
        let (g, l) = make(GroupSpec::Sl2(5));
        assert!(is_universally_lossless(&g, &l).unwrap());
        assert!(is_lossless(&g, &l).lossless);
    }

    #[test]
    fn pronormality_examples() {
        let (g, l) = make(GroupSpec::Symmetric(3));
        assert!(is_pronormal(&g, &l, l.top()));
        for i in 0..l.len() {
            let o = l.subgroup(i).len();
            if o == 2 || o == 3 {
                assert!(is_pronormal(&g, &l, i), "Sylow subgroups of S3");
            }
        }
        // In the lossy order-81 group some C3 fails pronormality.
        let (g, l) = make(jordan_81());
        let lossy_c3 = (0..l.len())
            .filter(|&i| l.subgroup(i).len() == 3)
            .find(|&i| !is_pronormal(&g, &l, i));
        assert!(lossy_c3.is_some());
    }

    #[test]
    fn t_group_examples() {
        let (g, l) = make(GroupSpec::Symmetric(3));
        assert!(is_t_group(&g, &l));
        assert!(is_t_group_two_step(&g, &l));
        let (g, l) = make(GroupSpec::Cyclic(30));
        assert!(is_t_group(&g, &l));
        let (g, l) = make(GroupSpec::Dihedral(4));
        assert!(!is_t_group(&g, &l));
        assert!(!is_t_group_two_step(&g, &l));
        // A reflection C2 is subnormal (via the Klein subgroup) not normal.
        let sub_not_norm = (0..l.len()).any(|k| {
            l.subgroup(k).len() == 2
                && is_subnormal(&g, &l, k)
                && l.class_members(l.class_of(k)).len() > 1
        });
        assert!(sub_not_norm);
    }

    #[test]
    fn two_step_and_chain_t_group_agree_on_corpus() {
        for spec in [
            GroupSpec::Symmetric(3),
            GroupSpec::Symmetric(4),
            GroupSpec::Dihedral(4),
            GroupSpec::Dihedral(6),
            GroupSpec::Dicyclic(3),
            GroupSpec::Alternating(4),
            GroupSpec::Cyclic(16),
            c2_x_a4(),
        ] {
            let (g, l) = make(spec.clone());
            assert_eq!(is_t_group(&g, &l), is_t_group_two_step(&g, &l), "{spec:?}");
        }
    }

    #[test]
    fn criteria_examples_and_soundness() {
        let (g, l) = make(GroupSpec::Dihedral(9));
        let c = lossless_criteria(&g, &l);
        assert!(c.cyclic_normal_prime_index, "C9 has index 2");
        assert!(is_lossless(&g, &l).lossless);

        let (g, l) = make(GroupSpec::Quaternion8);
        let c = lossless_criteria(&g, &l);
        assert!(c.cyclic_normal_prime_index && c.derived_subgroup_prime_order);
        assert!(is_lossless(&g, &l).lossless);

        let (g, l) = make(GroupSpec::Sl2(7));
        let c = lossless_criteria(&g, &l);
        assert!(!c.any());
        assert!(!is_lossless(&g, &l).lossless);

        // Soundness across a mixed corpus: criterion true implies lossless.
        for spec in [
            GroupSpec::Symmetric(3),
            GroupSpec::Symmetric(4),
            GroupSpec::Dihedral(4),
            GroupSpec::Dihedral(5),
            GroupSpec::Dicyclic(2),
            GroupSpec::Dicyclic(5),
            GroupSpec::Semidihedral(4),
            GroupSpec::ModularMaximalCyclic(4),
            GroupSpec::Agl1(5),
            GroupSpec::Agl1(7),
            GroupSpec::Alternating(4),
            c2_x_a4(),
            jordan_81(),
        ] {
            let (g, l) = make(spec.clone());
            if lossless_criteria(&g, &l).any() {
                assert!(is_lossless(&g, &l).lossless, "{spec:?}");
            }
        }
    }

    #[test]
    fn agl1_f5_satisfies_rank_two_like_or_other_criteria() {
        // AGL1(F5) = C5 x| C4: cyclic normal C5 of prime-power index; the
        // cyclic-normal-prime-index test wants prime index, so check the
        // solvable T-group route instead.
        let (g, l) = make(GroupSpec::Agl1(5));
        let c = lossless_criteria(&g, &l);
        assert!(c.solvable_t_group);
        assert!(is_lossless(&g, &l).lossless);
    }

    #[test]
    fn all_pronormal_implies_lossless_on_corpus() {
        for spec in [
            GroupSpec::Symmetric(3),
            GroupSpec::Symmetric(4),
            GroupSpec::Dihedral(6),
            GroupSpec::Agl1(5),
            c2_x_a4(),
        ] {
            let (g, l) = make(spec.clone());
            if (0..l.len()).all(|k| is_pronormal(&g, &l, k)) {
                assert!(is_lossless(&g, &l).lossless, "{spec:?}");
            }
        }
    }

    #[test]
    fn quotient_closure_of_losslessness() {
        for spec in [GroupSpec::Dihedral(6), GroupSpec::Symmetric(4), GroupSpec::Dicyclic(3)] {
            let (g, l) = make(spec.clone());
            if !is_lossless(&g, &l).lossless {
                continue;
            }
            for i in 0..l.len() {
                if l.class_members(l.class_of(i)).len() != 1 {
                    continue;
                }
                let q = g.quotient_group(l.subgroup(i)).unwrap();
                let ql = enumerate_subgroups(&q).unwrap();
                assert!(is_lossless(&q, &ql).lossless, "{spec:?} / subgroup {i}");
            }
        }
    }

    #[test]
    fn small_p_groups_are_lossless() {
        let specs: Vec<GroupSpec> = vec![
            GroupSpec::Cyclic(8),
            GroupSpec::Dihedral(4),
            GroupSpec::Quaternion8,
            GroupSpec::Product(Box::new(GroupSpec::Cyclic(2)), Box::new(GroupSpec::Cyclic(4))),
            GroupSpec::Product(
                Box::new(GroupSpec::Cyclic(2)),
                Box::new(GroupSpec::Product(
                    Box::new(GroupSpec::Cyclic(2)),
                    Box::new(GroupSpec::Cyclic(2)),
                )),
            ),
            GroupSpec::Cyclic(27),
            GroupSpec::UnitSemidirect { n: 9, k: 4, m: 3 },
            GroupSpec::VecSemidirect {
                p: 3,
                d: 2,
                m: 3,
                matrix: vec![vec![1, 1], vec![0, 1]],
            },
            GroupSpec::Product(Box::new(GroupSpec::Cyclic(3)), Box::new(GroupSpec::Cyclic(9))),
        ];
        for spec in specs {
            let (g, l) = make(spec.clone());
            assert!(is_lossless(&g, &l).lossless, "{spec:?}");
        }
    }
}
