//! Abstract finite posets: chains, products, divisor lattices, maximal lower
//! bounds, order isomorphism.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{BitMatrix, BitSet};
use crate::error::{Error, Result};

pub const POSET_ISO_BOUND: usize = 64;

#[derive(Clone, Debug)]
pub struct FinitePoset {
    size: usize,
    leq: BitMatrix,
    labels: Option<Vec<String>>,
}

impl FinitePoset {
    /// Builds from an explicit relation matrix, checking reflexivity,
    /// antisymmetry and transitivity.
    pub fn new(leq: BitMatrix, labels: Option<Vec<String>>) -> Result<Self> {
        let n = leq.size();
        for i in 0..n {
            if !leq.get(i, i) {
                return Err(Error::InvalidSpec(String::from("order not reflexive")));
            }
            for j in 0..n {
                if i != j && leq.get(i, j) && leq.get(j, i) {
                    return Err(Error::InvalidSpec(String::from("order not antisymmetric")));
                }
                if leq.get(i, j) {
                    for k in 0..n {
                        if leq.get(j, k) && !leq.get(i, k) {
                            return Err(Error::InvalidSpec(String::from("order not transitive")));
                        }
                    }
                }
            }
        }
        if let Some(ref l) = labels {
            if l.len() != n {
                return Err(Error::InvalidSpec(String::from("label count mismatch")));
            }
        }
        Ok(FinitePoset { size: n, leq, labels })
    }

    pub fn from_edges(size: usize, edges: &[(usize, usize)], labels: Option<Vec<String>>) -> Result<Self> {
        let mut m = BitMatrix::identity(size);
        for &(a, b) in edges {
            if a >= size || b >= size {
                return Err(Error::InvalidSpec(String::from("edge out of range")));
            }
            m.set(a, b);
        }
        m.transitive_close();
        Self::new(m, labels)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    pub fn leq_matrix(&self) -> &BitMatrix {
        &self.leq
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("{i}"),
        }
    }

    /// Totally ordered set with n+1 elements 0 < 1 < ... < n.
    pub fn chain(n: usize) -> Self {
        let mut m = BitMatrix::new(n + 1);
        for i in 0..=n {
            for j in i..=n {
                m.set(i, j);
            }
        }
        FinitePoset {
            size: n + 1,
            leq: m,
            labels: Some((0..=n).map(|i| format!("{i}")).collect()),
        }
    }

    /// Componentwise order on pairs; index (i, j) -> i * |Q| + j.
    pub fn product(p: &FinitePoset, q: &FinitePoset) -> Self {
        let n = p.size * q.size;
        let mut m = BitMatrix::new(n);
        for a1 in 0..p.size {
            for a2 in 0..q.size {
                for b1 in 0..p.size {
                    for b2 in 0..q.size {
                        if p.leq(a1, b1) && q.leq(a2, b2) {
                            m.set(a1 * q.size + a2, b1 * q.size + b2);
                        }
                    }
                }
            }
        }
        let labels = (0..p.size)
            .flat_map(|i| {
                let q = &q;
                let p = &p;
                (0..q.size).map(move |j| format!("({},{})", p.label(i), q.label(j)))
            })
            .collect();
        FinitePoset {
            size: n,
            leq: m,
            labels: Some(labels),
        }
    }

    /// Divisors of n ordered by divisibility.
    pub fn divisor_lattice(n: u64) -> Self {
        let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        let k = divs.len();
        let mut m = BitMatrix::new(k);
        for i in 0..k {
            for j in 0..k {
                if divs[j] % divs[i] == 0 {
                    m.set(i, j);
                }
            }
        }
        FinitePoset {
            size: k,
            leq: m,
            labels: Some(divs.iter().map(|d| format!("{d}")).collect()),
        }
    }

    pub fn down_set(&self, x: usize) -> BitSet {
        BitSet::from_iter(self.size, (0..self.size).filter(|&y| self.leq(y, x)))
    }

    /// Maximal elements of the intersection of the two down-sets.
    pub fn maximal_lower_bounds(&self, x: usize, y: usize) -> Vec<usize> {
        let common: Vec<usize> = (0..self.size)
            .filter(|&w| self.leq(w, x) && self.leq(w, y))
            .collect();
        common
            .iter()
            .copied()
            .filter(|&w| !common.iter().any(|&v| v != w && self.leq(w, v)))
            .collect()
    }

    pub fn has_bottom(&self) -> Option<usize> {
        (0..self.size).find(|&b| (0..self.size).all(|x| self.leq(b, x)))
    }

    pub fn has_top(&self) -> Option<usize> {
        (0..self.size).find(|&t| (0..self.size).all(|x| self.leq(x, t)))
    }

    /// Comparable pairs (a, b) with a < b.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Induced subposet on the given node list; returns it with the
    /// index-into-parent map given by the list itself.
    pub fn restrict(&self, nodes: &[usize]) -> FinitePoset {
        let k = nodes.len();
        let mut m = BitMatrix::new(k);
        for i in 0..k {
            for j in 0..k {
                if self.leq(nodes[i], nodes[j]) {
                    m.set(i, j);
                }
            }
        }
        FinitePoset {
            size: k,
            leq: m,
            labels: Some(nodes.iter().map(|&n| self.label(n)).collect()),
        }
    }

    /// Some order isomorphism onto `other`, as an image vector, or None.
    pub fn is_isomorphic(&self, other: &FinitePoset) -> Result<Option<Vec<usize>>> {
        if self.size.max(other.size) > POSET_ISO_BOUND {
            return Err(Error::TooLarge {
                what: "poset isomorphism test",
                size: self.size.max(other.size),
                bound: POSET_ISO_BOUND,
            });
        }
        if self.size != other.size {
            return Ok(None);
        }
        let profile = |p: &FinitePoset, x: usize| -> (usize, usize) {
            (
                (0..p.size).filter(|&y| p.leq(y, x)).count(),
                (0..p.size).filter(|&y| p.leq(x, y)).count(),
            )
        };
        let mine: Vec<(usize, usize)> = (0..self.size).map(|x| profile(self, x)).collect();
        let theirs: Vec<(usize, usize)> = (0..other.size).map(|x| profile(other, x)).collect();
        {
            let mut a = mine.clone();
            let mut b = theirs.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Ok(None);
            }
        }
        let mut image = vec![usize::MAX; self.size];
        let mut used = vec![false; self.size];
        if self.search_iso(other, &mine, &theirs, 0, &mut image, &mut used) {
            Ok(Some(image))
        } else {
            Ok(None)
        }
    }

    fn search_iso(
        &self,
        other: &FinitePoset,
        mine: &[(usize, usize)],
        theirs: &[(usize, usize)],
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == self.size {
            return true;
        }
        for cand in 0..other.size {
            if used[cand] || theirs[cand] != mine[depth] {
                continue;
            }
            let ok = (0..depth).all(|prev| {
                self.leq(prev, depth) == other.leq(image[prev], cand)
                    && self.leq(depth, prev) == other.leq(cand, image[prev])
            });
            if ok {
                image[depth] = cand;
                used[cand] = true;
                if self.search_iso(other, mine, theirs, depth + 1, image, used) {
                    return true;
                }
                used[cand] = false;
                image[depth] = usize::MAX;
            }
        }
        false
    }
}

/// Five-element lattice that is not the subgroup lattice of any group:
/// a diamond with an extra element on top. Shipped for poset-only tests.
pub fn non_subgroup_lattice_fixture() -> FinitePoset {
    FinitePoset::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)], None).unwrap()
}
