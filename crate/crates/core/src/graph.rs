//! Parallelism graph export in Graphviz DOT.
//!
//! Vertices are demand-system tasks (named by instance task id); an edge
//! joins two tasks that fit together on every resource, i.e. the complement
//! of the pairwise disjointness graph.

use std::fmt::Write as _;

use crate::instance::DemandSystem;

/// Whether columns `u` and `v` can run at the same time on every row.
pub fn can_run_in_parallel(system: &DemandSystem, u: usize, v: usize) -> bool {
    system
        .rows()
        .iter()
        .zip(system.rhs())
        .all(|(row, &b)| row[u] + row[v] <= b)
}

/// Column pairs `(u, v)`, `u < v`, that may overlap.
pub fn parallel_pairs(system: &DemandSystem) -> Vec<(usize, usize)> {
    let n = system.num_cols();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if can_run_in_parallel(system, u, v) {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

pub fn export_parallelism_graph(system: &DemandSystem) -> String {
    let ids = system.task_map();
    let mut out = String::from("graph parallelism {\n");
    for (col, &d) in system.durations().iter().enumerate() {
        let _ = writeln!(out, "  t{} [label=\"{} (d={})\", duration={}];", ids[col], ids[col], d, d);
    }
    for (u, v) in parallel_pairs(system) {
        let _ = writeln!(out, "  t{} -- t{};", ids[u], ids[v]);
    }
    out.push_str("}\n");
    out
}
