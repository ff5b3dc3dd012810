//! DOT export: gray Hasse edges, nodes colored by conjugacy class, and red
//! transfer arrows drawn over the order diagram.

use normlift_core::{BitMatrix, FinitePoset, Relation, SubgroupLattice};
use std::fmt::Write;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];

/// Covering pairs (i, j): i < j with nothing strictly between.
fn hasse_edges(n: usize, leq: &BitMatrix) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !leq.get(i, j) {
                continue;
            }
            let covered = (0..n)
                .any(|k| k != i && k != j && leq.get(i, k) && leq.get(k, j));
            if !covered {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn node_lines(out: &mut String, l: &SubgroupLattice) {
    for i in 0..l.len() {
        let color = PALETTE[l.class_of(i) % PALETTE.len()];
        writeln!(
            out,
            "  n{i} [label=\"{i} ({})\", style=filled, fillcolor=\"{color}\"];",
            l.subgroup(i).len()
        )
        .unwrap();
    }
}

fn hasse_lines(out: &mut String, n: usize, leq: &BitMatrix) {
    for (i, j) in hasse_edges(n, leq) {
        writeln!(out, "  n{i} -> n{j} [color=gray, arrowhead=none];").unwrap();
    }
}

pub fn lattice_dot(name: &str, l: &SubgroupLattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    node_lines(&mut out, l);
    hasse_lines(&mut out, l.len(), l.leq_matrix());
    out.push_str("}\n");
    out
}

/// Hasse diagram with the relation's non-reflexive arrows overlaid in red.
pub fn transfer_dot(name: &str, l: &SubgroupLattice, r: &Relation) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    node_lines(&mut out, l);
    hasse_lines(&mut out, l.len(), l.leq_matrix());
    for (i, j) in r.arrows() {
        writeln!(out, "  n{i} -> n{j} [color=red, constraint=false];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Same overlay on an abstract poset carrier.
pub fn poset_transfer_dot(name: &str, p: &FinitePoset, r: &Relation) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for i in 0..p.size() {
        writeln!(out, "  n{i} [label=\"{}\"];", p.label(i)).unwrap();
    }
    hasse_lines(&mut out, p.size(), p.leq_matrix());
    for (i, j) in r.arrows() {
        writeln!(out, "  n{i} -> n{j} [color=red, constraint=false];").unwrap();
    }
    out.push_str("}\n");
    out
}
