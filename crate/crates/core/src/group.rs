//! Finite groups as explicit multiplication tables over canonical element
//! indices.
//!
//! Every constructor materializes the full table: index 0 is the identity and
//! the remaining elements appear in breadth-first generation order from a
//! fixed generator list, so all downstream indices are reproducible.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Default cap on group order; lattice algorithms are designed for this scale.
pub const DEFAULT_MAX_ORDER: usize = 5000;
/// Default cap on isomorphism testing.
pub const DEFAULT_ISO_BOUND: usize = 360;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(u64),
    /// Order 2n, n > 2.
    Dihedral(u64),
    /// Order 4n.
    Dicyclic(u64),
    /// Order 2^n.
    Semidihedral(u32),
    /// Order 2^n.
    ModularMaximalCyclic(u32),
    Quaternion8,
    /// n <= 6.
    Symmetric(u32),
    /// n <= 6.
    Alternating(u32),
    /// p prime; order p(p^2 - 1).
    Sl2(u64),
    /// p prime; order p(p - 1).
    Agl1(u64),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Z/n semidirect C_m, the generator of C_m acting by multiplication by k.
    UnitSemidirect { n: u64, k: u64, m: u64 },
    /// (Z/p)^d semidirect C_m, the generator acting by the matrix (mod p).
    VecSemidirect {
        p: u64,
        d: u32,
        m: u64,
        matrix: Vec<Vec<u64>>,
    },
    /// Group generated by permutations of `0..degree`.
    PermGens {
        degree: usize,
        gens: Vec<Vec<usize>>,
    },
}

pub struct Group {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    labels: Option<Vec<String>>,
    spec: Option<GroupSpec>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != 0 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest subset containing `gens` closed under the group operation.
    ///
    /// BFS over right multiplication by the generators; in a finite group the
    /// resulting closed set already contains inverses and the identity.
    pub fn generated_subgroup(&self, gens: &[usize]) -> BitSet {
        let mut set = BitSet::new(self.order);
        set.insert(0);
        let mut queue: Vec<usize> = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push(y);
                }
            }
        }
        set
    }

    pub fn conjugate_set(&self, s: &BitSet, g: usize) -> BitSet {
        let gi = self.inv(g);
        let mut out = BitSet::new(self.order);
        for x in s.iter() {
            out.insert(self.mul(self.mul(g, x), gi));
        }
        out
    }

    pub fn is_subgroup(&self, s: &BitSet) -> bool {
        if !s.contains(0) {
            return false;
        }
        let elems: Vec<usize> = s.iter().collect();
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| s.contains(self.mul(a, b))))
    }

    pub fn normalizer(&self, s: &BitSet) -> Result<BitSet> {
        if !self.is_subgroup(s) {
            return Err(Error::NotASubgroup);
        }
        let mut out = BitSet::new(self.order);
        for g in 0..self.order {
            if self.conjugate_set(s, g) == *s {
                out.insert(g);
            }
        }
        Ok(out)
    }

    pub fn centralizer(&self, s: &BitSet) -> Result<BitSet> {
        if !self.is_subgroup(s) {
            return Err(Error::NotASubgroup);
        }
        let elems: Vec<usize> = s.iter().collect();
        let mut out = BitSet::new(self.order);
        for g in 0..self.order {
            if elems.iter().all(|&x| self.mul(g, x) == self.mul(x, g)) {
                out.insert(g);
            }
        }
        Ok(out)
    }

    pub fn center(&self) -> BitSet {
        let mut out = BitSet::new(self.order);
        for g in 0..self.order {
            if (0..self.order).all(|x| self.mul(g, x) == self.mul(x, g)) {
                out.insert(g);
            }
        }
        out
    }

    pub fn derived_subgroup(&self) -> BitSet {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = BitSet::new(self.order);
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(
                    self.mul(a, b),
                    self.mul(self.inv(a), self.inv(b)),
                );
                if !seen.contains(c) {
                    seen.insert(c);
                    comms.push(c);
                }
            }
        }
        self.generated_subgroup(&comms)
    }

    /// Smallest subgroup of `h` containing `k` and closed under h-conjugation.
    pub fn normal_closure(&self, k: &BitSet, h: &BitSet) -> Result<BitSet> {
        if !self.is_subgroup(k) || !self.is_subgroup(h) || !k.is_subset(h) {
            return Err(Error::NotASubgroup);
        }
        let h_elems: Vec<usize> = h.iter().collect();
        let mut cur = k.clone();
        loop {
            let mut gens: Vec<usize> = cur.iter().collect();
            let before = gens.len();
            for &g in &h_elems {
                let conj = self.conjugate_set(&cur, g);
                for x in conj.iter() {
                    if !cur.contains(x) {
                        cur.insert(x);
                        gens.push(x);
                    }
                }
            }
            if gens.len() == before {
                return Ok(cur);
            }
            cur = self.generated_subgroup(&gens);
        }
    }

    /// Re-indexes the elements of a subgroup as a standalone group.
    /// Element order follows the ambient indices, so the identity stays first.
    pub fn subgroup_as_group(&self, s: &BitSet) -> Result<Group> {
        if !self.is_subgroup(s) {
            return Err(Error::NotASubgroup);
        }
        let elems: Vec<usize> = s.iter().collect();
        let mut index = vec![u16::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            index[e] = i as u16;
        }
        let n = elems.len();
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = index[self.mul(elems[i], elems[j])];
            }
        }
        let inv = (0..n).map(|i| index[self.inv(elems[i])]).collect();
        Ok(Group {
            order: n,
            mul,
            inv,
            labels: None,
            spec: None,
        })
    }

    /// Quotient by a normal subgroup, with cosets as elements. Coset indices
    /// follow the least ambient element they contain.
    pub fn quotient_group(&self, n: &BitSet) -> Result<Group> {
        if !self.is_subgroup(n) {
            return Err(Error::NotASubgroup);
        }
        if (0..self.order).any(|g| self.conjugate_set(n, g) != *n) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![u16::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..self.order {
            if coset_of[g] == u16::MAX {
                let c = reps.len() as u16;
                for x in n.iter() {
                    coset_of[self.mul(g, x)] = c;
                }
                reps.push(g);
            }
        }
        let q = reps.len();
        let mut mul = vec![0u16; q * q];
        for i in 0..q {
            for j in 0..q {
                mul[i * q + j] = coset_of[self.mul(reps[i], reps[j])];
            }
        }
        let inv = (0..q).map(|i| coset_of[self.inv(reps[i])]).collect();
        Ok(Group {
            order: q,
            mul,
            inv,
            labels: None,
            spec: None,
        })
    }

    /// Greedy generating sequence: scan elements in index order, keeping those
    /// that enlarge the generated subgroup.
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.generated_subgroup(&gens);
        for x in 1..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = self.generated_subgroup(&gens);
                if span.len() == self.order {
                    break;
                }
            }
        }
        gens
    }

    fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for x in 0..self.order {
            *h.entry(self.element_order(x)).or_insert(0) += 1;
        }
        h
    }

    /// Generator-image backtracking pruned by element-order profiles.
    pub fn is_isomorphic(&self, other: &Group, bound: usize) -> Result<bool> {
        if self.order.max(other.order) > bound {
            return Err(Error::TooLarge {
                what: "isomorphism test",
                size: self.order.max(other.order),
                bound,
            });
        }
        if self.order != other.order {
            return Ok(false);
        }
        if self.order_histogram() != other.order_histogram() {
            return Ok(false);
        }
        let gens = self.generating_sequence();
        if gens.is_empty() {
            return Ok(true); // trivial group
        }
        let gen_orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        // Partial homomorphism state: map on the subgroup generated so far,
        // kept as a BFS-ordered element list.
        let mut map = vec![u16::MAX; self.order];
        let mut hit = BitSet::new(self.order);
        map[0] = 0;
        hit.insert(0);
        let mut defined: Vec<usize> = vec![0];
        Ok(self.extend_iso(other, &gens, &gen_orders, 0, &mut map, &mut hit, &mut defined))
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso(
        &self,
        other: &Group,
        gens: &[usize],
        gen_orders: &[usize],
        depth: usize,
        map: &mut Vec<u16>,
        hit: &mut BitSet,
        defined: &mut Vec<usize>,
    ) -> bool {
        if depth == gens.len() {
            return defined.len() == self.order;
        }
        let g = gens[depth];
        for h in 0..other.order() {
            if hit.contains(h) || other.element_order(h) != gen_orders[depth] {
                continue;
            }
            let save_len = defined.len();
            let save_hit = hit.clone();
            if self.try_extend(other, g, h, map, hit, defined)
                && self.extend_iso(other, gens, gen_orders, depth + 1, map, hit, defined)
            {
                return true;
            }
            for &x in &defined[save_len..] {
                map[x] = u16::MAX;
            }
            defined.truncate(save_len);
            *hit = save_hit;
        }
        false
    }

    /// Closes the partial map under products with the new generator pair,
    /// failing on any inconsistency or collision.
    fn try_extend(
        &self,
        other: &Group,
        g: usize,
        h: usize,
        map: &mut Vec<u16>,
        hit: &mut BitSet,
        defined: &mut Vec<usize>,
    ) -> bool {
        if map[g] != u16::MAX {
            return map[g] as usize == h;
        }
        if hit.contains(h) {
            return false;
        }
        map[g] = h as u16;
        hit.insert(h);
        defined.push(g);
        let mut head = 0;
        // Close under right multiplication by every defined element.
        while head < defined.len() {
            let x = defined[head];
            head += 1;
            let mut i = 0;
            while i < defined.len() {
                let y = defined[i];
                i += 1;
                for (a, b) in [(x, y), (y, x)] {
                    let p = self.mul(a, b);
                    let q = other.mul(map[a] as usize, map[b] as usize);
                    if map[p] != u16::MAX {
                        if map[p] as usize != q {
                            return false;
                        }
                    } else {
                        if hit.contains(q) {
                            return false;
                        }
                        map[p] = q as u16;
                        hit.insert(q);
                        defined.push(p);
                    }
                }
            }
        }
        true
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    build_group_bounded(spec, DEFAULT_MAX_ORDER)
}

pub fn build_group_bounded(spec: &GroupSpec, bound: usize) -> Result<Group> {
    let g = construct(spec, bound)?;
    validate(&g)?;
    Ok(g)
}

/// Generic table builder: BFS from the identity over right multiplication by
/// the listed generators fixes the canonical element order.
fn materialize<K: Ord + Clone>(
    identity: K,
    gens: &[K],
    mul: impl Fn(&K, &K) -> K,
    bound: usize,
    spec: GroupSpec,
) -> Result<Group> {
    let mut index: BTreeMap<K, usize> = BTreeMap::new();
    let mut elems: Vec<K> = vec![identity.clone()];
    index.insert(identity, 0);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = mul(&x, g);
            if !index.contains_key(&y) {
                if elems.len() >= bound {
                    return Err(Error::TooLarge {
                        what: "group order",
                        size: elems.len() + 1,
                        bound,
                    });
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    let n = elems.len();
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index[&mul(&elems[i], &elems[j])] as u16;
        }
    }
    let mut inv = vec![0u16; n];
    for i in 0..n {
        let j = (0..n).find(|&j| table[i * n + j] == 0).unwrap();
        inv[i] = j as u16;
    }
    Ok(Group {
        order: n,
        mul: table,
        inv,
        labels: None,
        spec: Some(spec),
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Split metacyclic product Z/n x| C_m with the C_m generator acting by
/// multiplication by k: (i, e) * (j, f) = (i + j * k^e, e + f).
fn metacyclic(n: u64, k: u64, m: u64, bound: usize, spec: GroupSpec) -> Result<Group> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidSpec(String::from("moduli must be positive")));
    }
    if pow_mod(k, m, n) != 1 % n {
        return Err(Error::InvalidSpec(format!("k^m = {}^{} is not 1 mod {}", k, m, n)));
    }
    let kp: Vec<u64> = (0..m).scan(1 % n, |acc, _| {
        let v = *acc;
        *acc = *acc * (k % n) % n;
        Some(v)
    })
    .collect();
    materialize(
        (0u64, 0u64),
        &[(1 % n, 0), (0, 1 % m)],
        |a, b| ((a.0 + b.0 * kp[a.1 as usize]) % n, (a.1 + b.1) % m),
        bound,
        spec,
    )
}

fn perm_group(degree: usize, gens: &[Vec<usize>], bound: usize, spec: GroupSpec) -> Result<Group> {
    for g in gens {
        let mut seen = vec![false; degree];
        if g.len() != degree {
            return Err(Error::InvalidSpec(String::from("permutation length mismatch")));
        }
        for &i in g {
            if i >= degree || seen[i] {
                return Err(Error::InvalidSpec(String::from("not a permutation")));
            }
            seen[i] = true;
        }
    }
    let id: Vec<usize> = (0..degree).collect();
    let gens: Vec<Vec<usize>> = gens.to_vec();
    // a then b, i.e. (a * b)(i) = b[a[i]].
    materialize(
        id,
        &gens,
        |a, b| a.iter().map(|&i| b[i]).collect::<Vec<usize>>(),
        bound,
        spec,
    )
}

fn construct(spec: &GroupSpec, bound: usize) -> Result<Group> {
    let check_bound = |order: usize| -> Result<()> {
        if order > bound {
            Err(Error::TooLarge {
                what: "group order",
                size: order,
                bound,
            })
        } else {
            Ok(())
        }
    };
    match spec {
        GroupSpec::Trivial => materialize(0u64, &[], |_, _| 0, bound, spec.clone()),
        GroupSpec::Cyclic(n) => {
            if *n == 0 {
                return Err(Error::InvalidSpec(String::from("cyclic order must be positive")));
            }
            check_bound(*n as usize)?;
            let n = *n;
            materialize(0u64, &[1 % n], |a, b| (a + b) % n, bound, spec.clone())
        }
        GroupSpec::Dihedral(n) => {
            if *n <= 2 {
                return Err(Error::InvalidSpec(String::from("dihedral requires n > 2")));
            }
            check_bound(2 * *n as usize)?;
            metacyclic(*n, *n - 1, 2, bound, spec.clone())
        }
        GroupSpec::Dicyclic(n) => {
            let n = *n;
            if n == 0 {
                return Err(Error::InvalidSpec(String::from("dicyclic requires n >= 1")));
            }
            check_bound(4 * n as usize)?;
            // <a, x | a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1>, elements a^i x^e.
            materialize(
                (0u64, 0u64),
                &[(1, 0), (0, 1)],
                move |a, b| {
                    let m = 2 * n;
                    if a.1 == 0 {
                        ((a.0 + b.0) % m, b.1)
                    } else {
                        let twist = (a.0 + m - b.0 % m) % m;
                        if b.1 == 0 {
                            (twist, 1)
                        } else {
                            ((twist + n) % m, 0)
                        }
                    }
                },
                bound,
                spec.clone(),
            )
        }
        GroupSpec::Semidihedral(n) => {
            if *n < 4 {
                return Err(Error::InvalidSpec(String::from("semidihedral requires n >= 4")));
            }
            check_bound(1usize << n)?;
            let half = 1u64 << (n - 1);
            metacyclic(half, (1 << (n - 2)) - 1, 2, bound, spec.clone())
        }
        GroupSpec::ModularMaximalCyclic(n) => {
            if *n < 4 {
                return Err(Error::InvalidSpec(String::from(
                    "modular maximal-cyclic requires n >= 4",
                )));
            }
            check_bound(1usize << n)?;
            let half = 1u64 << (n - 1);
            metacyclic(half, (1 << (n - 2)) + 1, 2, bound, spec.clone())
        }
        GroupSpec::Quaternion8 => {
            let g = construct(&GroupSpec::Dicyclic(2), bound)?;
            Ok(Group {
                spec: Some(spec.clone()),
                ..g
            })
        }
        GroupSpec::Symmetric(n) => {
            let n = *n as usize;
            if n > 6 {
                return Err(Error::InvalidSpec(String::from("symmetric degree capped at 6")));
            }
            if n < 2 {
                return construct(&GroupSpec::Trivial, bound);
            }
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            perm_group(n, &[swap, cycle], bound, spec.clone())
        }
        GroupSpec::Alternating(n) => {
            let n = *n as usize;
            if n > 6 {
                return Err(Error::InvalidSpec(String::from("alternating degree capped at 6")));
            }
            if n < 3 {
                return construct(&GroupSpec::Trivial, bound);
            }
            let mut three: Vec<usize> = (0..n).collect();
            three[0] = 1;
            three[1] = 2;
            three[2] = 0;
            let gens = if n == 3 {
                vec![three]
            } else if n % 2 == 1 {
                let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                vec![three, cycle]
            } else {
                // (1 2 ... n-1) fixing 0.
                let mut cycle: Vec<usize> = (0..n).collect();
                for i in 1..n {
                    cycle[i] = if i == n - 1 { 1 } else { i + 1 };
                }
                vec![three, cycle]
            };
            perm_group(n, &gens, bound, spec.clone())
        }
        GroupSpec::Sl2(p) => {
            let p = *p;
            if !is_prime(p) {
                return Err(Error::InvalidSpec(format!("{p} is not prime")));
            }
            check_bound((p * (p * p - 1)) as usize)?;
            let mul = move |a: &[u64; 4], b: &[u64; 4]| {
                [
                    (a[0] * b[0] + a[1] * b[2]) % p,
                    (a[0] * b[1] + a[1] * b[3]) % p,
                    (a[2] * b[0] + a[3] * b[2]) % p,
                    (a[2] * b[1] + a[3] * b[3]) % p,
                ]
            };
            materialize(
                [1, 0, 0, 1],
                &[[1, 1, 0, 1], [0, p - 1, 1, 0]],
                mul,
                bound,
                spec.clone(),
            )
        }
        GroupSpec::Agl1(p) => {
            let p = *p;
            if !is_prime(p) {
                return Err(Error::InvalidSpec(format!("{p} is not prime")));
            }
            check_bound((p * (p - 1)) as usize)?;
            let root = (1..p)
                .find(|&g| {
                    let mut x = g;
                    let mut n = 1;
                    while x != 1 {
                        x = x * g % p;
                        n += 1;
                    }
                    n == p - 1
                })
                .unwrap_or(1);
            // x -> a x + b as the pair (a, b); composition applies self first.
            materialize(
                (1u64, 0u64),
                &[(root, 0), (1, 1 % p)],
                move |f, g| (g.0 * f.0 % p, (g.0 * f.1 + g.1) % p),
                bound,
                spec.clone(),
            )
        }
        GroupSpec::Product(a, b) => {
            let ga = construct(a, bound)?;
            let gb = construct(b, bound)?;
            let (na, nb) = (ga.order, gb.order);
            check_bound(na.checked_mul(nb).ok_or(Error::TooLarge {
                what: "group order",
                size: usize::MAX,
                bound,
            })?)?;
            let n = na * nb;
            let mut mul = vec![0u16; n * n];
            for i in 0..n {
                for j in 0..n {
                    let x = ga.mul(i / nb, j / nb) * nb + gb.mul(i % nb, j % nb);
                    mul[i * n + j] = x as u16;
                }
            }
            let inv = (0..n)
                .map(|i| (ga.inv(i / nb) * nb + gb.inv(i % nb)) as u16)
                .collect();
            Ok(Group {
                order: n,
                mul,
                inv,
                labels: None,
                spec: Some(spec.clone()),
            })
        }
        GroupSpec::UnitSemidirect { n, k, m } => {
            if *n == 0 || *m == 0 {
                return Err(Error::InvalidSpec(String::from("moduli must be positive")));
            }
            check_bound((*n * *m) as usize)?;
            metacyclic(*n, *k, *m, bound, spec.clone())
        }
        GroupSpec::VecSemidirect { p, d, m, matrix } => {
            let (p, d, m) = (*p, *d as usize, *m);
            if !is_prime(p) {
                return Err(Error::InvalidSpec(format!("{p} is not prime")));
            }
            if d == 0 || m == 0 {
                return Err(Error::InvalidSpec(String::from("dimensions must be positive")));
            }
            if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
                return Err(Error::InvalidSpec(String::from("matrix shape mismatch")));
            }
            let mut order = m;
            for _ in 0..d {
                order = order.checked_mul(p).ok_or_else(|| {
                    Error::InvalidSpec(String::from("group order overflow"))
                })?;
            }
            check_bound(order as usize)?;
            let mat_mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
                (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| (0..d).map(|l| a[i][l] * b[l][j] % p).sum::<u64>() % p)
                            .collect()
                    })
                    .collect()
            };
            let ident: Vec<Vec<u64>> =
                (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect();
            // Powers A^0 .. A^(m-1), and A^m must be the identity.
            let mut powers = vec![ident.clone()];
            for e in 1..=m {
                let next = mat_mul(&powers[(e - 1) as usize], matrix);
                if e == m {
                    if next != ident {
                        return Err(Error::InvalidSpec(String::from("A^m is not the identity")));
                    }
                } else {
                    powers.push(next);
                }
            }
            let apply = move |a: &Vec<Vec<u64>>, v: &[u64]| -> Vec<u64> {
                (0..d)
                    .map(|i| (0..d).map(|j| a[i][j] * v[j] % p).sum::<u64>() % p)
                    .collect()
            };
            let mut gens: Vec<(Vec<u64>, u64)> = (0..d)
                .map(|i| ((0..d).map(|j| u64::from(i == j)).collect(), 0))
                .collect();
            gens.push((vec![0; d], 1 % m));
            materialize(
                (vec![0u64; d], 0u64),
                &gens,
                move |a, b| {
                    let tw = apply(&powers[a.1 as usize], &b.0);
                    let v = (0..d).map(|i| (a.0[i] + tw[i]) % p).collect();
                    (v, (a.1 + b.1) % m)
                },
                bound,
                spec.clone(),
            )
        }
        GroupSpec::PermGens { degree, gens } => perm_group(*degree, gens, bound, spec.clone()),
    }
}

/// Identity/inverse checks always run in full; associativity is exhaustive up
/// to order 512 and spot-sampled above that.
fn validate(g: &Group) -> Result<()> {
    let n = g.order;
    for a in 0..n {
        if g.mul(a, 0) != a || g.mul(0, a) != a {
            return Err(Error::InvalidSpec(String::from("identity is not two-sided")));
        }
        if g.mul(a, g.inv(a)) != 0 || g.mul(g.inv(a), a) != 0 {
            return Err(Error::InvalidSpec(String::from("inverse failure")));
        }
    }
    let assoc = |a: usize, b: usize, c: usize| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
    if n <= 512 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        return Err(Error::InvalidSpec(String::from("not associative")));
                    }
                }
            }
        }
    } else {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..200_000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (state >> 33) as usize % n;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = (state >> 33) as usize % n;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let c = (state >> 33) as usize % n;
            if !assoc(a, b, c) {
                return Err(Error::InvalidSpec(String::from("not associative")));
            }
        }
    }
    Ok(())
}
