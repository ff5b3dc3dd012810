//! On-disk JSON schemas: subgroup lattices, abstract posets, and transfer
//! systems. All exports round-trip through the matching parser.

use normlift_core::{FinitePoset, Relation, SubgroupLattice};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
pub struct SubgroupEntry {
    pub index: usize,
    pub order: usize,
    pub elements: Vec<usize>,
    pub class: usize,
    pub normalizer: usize,
}

#[derive(Serialize, Deserialize)]
pub struct LatticeFile {
    pub group: String,
    pub subgroups: Vec<SubgroupEntry>,
    /// Strict containments (i, j) with i < j in the lattice order.
    pub leq: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
pub struct PosetFile {
    pub size: usize,
    pub leq: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
pub struct TransferFile {
    /// `"subgroups"` or `"poset"`.
    pub carrier: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    /// Non-reflexive pairs by canonical index.
    pub arrows: Vec<(usize, usize)>,
}

pub fn lattice_file(spec: &str, l: &SubgroupLattice) -> LatticeFile {
    let subgroups = (0..l.len())
        .map(|i| SubgroupEntry {
            index: i,
            order: l.subgroup(i).len(),
            elements: l.subgroup(i).iter().collect(),
            class: l.class_of(i),
            normalizer: l.normalizer_of(i),
        })
        .collect();
    let mut leq = Vec::new();
    for i in 0..l.len() {
        for j in 0..l.len() {
            if i != j && l.leq(i, j) {
                leq.push((i, j));
            }
        }
    }
    LatticeFile {
        group: spec.to_string(),
        subgroups,
        leq,
    }
}

pub fn poset_from_file(f: &PosetFile) -> Result<FinitePoset, String> {
    for &(i, j) in &f.leq {
        if i >= f.size || j >= f.size {
            return Err(format!("leq pair ({i}, {j}) out of range for size {}", f.size));
        }
    }
    FinitePoset::from_edges(f.size, &f.leq, f.labels.clone()).map_err(|e| e.to_string())
}

pub fn transfer_file(carrier: &str, spec: Option<&str>, r: &Relation) -> TransferFile {
    TransferFile {
        carrier: carrier.to_string(),
        group: spec.map(|s| s.to_string()),
        arrows: r.arrows(),
    }
}
