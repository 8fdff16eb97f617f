//! Shared helpers for the integration tests: the naive enumerate-every-path
//! separation oracle (the blocking definition taken literally) and triple
//! enumeration utilities.

#![allow(dead_code)]

use polydep_core::{Dag, NodeId, VarSet};

/// Every simple undirected path between `a` and `b`, as node sequences.
pub fn all_simple_paths(g: &Dag, a: NodeId, b: NodeId) -> Vec<Vec<NodeId>> {
    let mut paths = Vec::new();
    let mut current = vec![a];
    let mut on_path = vec![false; g.n()];
    on_path[a.index()] = true;
    extend_paths(g, b, &mut current, &mut on_path, &mut paths);
    paths
}

fn extend_paths(
    g: &Dag,
    target: NodeId,
    current: &mut Vec<NodeId>,
    on_path: &mut Vec<bool>,
    paths: &mut Vec<Vec<NodeId>>,
) {
    let last = *current.last().unwrap();
    if last == target {
        paths.push(current.clone());
        return;
    }
    let neighbors: Vec<NodeId> = g
        .parents(last)
        .iter()
        .chain(g.children(last))
        .copied()
        .collect();
    for u in neighbors {
        if on_path[u.index()] {
            continue;
        }
        on_path[u.index()] = true;
        current.push(u);
        extend_paths(g, target, current, on_path, paths);
        current.pop();
        on_path[u.index()] = false;
    }
}

/// The blocking definition, verbatim: some node on the path is either a
/// non-head-to-head node in `z`, or a head-to-head node such that neither it
/// nor any of its descendants is in `z`.
pub fn blocked_by_definition(g: &Dag, nodes: &[NodeId], z: &VarSet) -> bool {
    nodes.iter().enumerate().any(|(i, &v)| {
        let head_to_head = i > 0
            && i + 1 < nodes.len()
            && g.has_edge(nodes[i - 1], v)
            && g.has_edge(nodes[i + 1], v);
        if head_to_head {
            !z.contains(v) && g.descendants(v).unwrap().is_disjoint(z)
        } else {
            z.contains(v)
        }
    })
}

/// Separation by exhaustive path enumeration over every endpoint pair.
pub fn sep_naive(g: &Dag, x: &VarSet, y: &VarSet, z: &VarSet) -> bool {
    x.iter().all(|a| {
        y.iter().all(|b| {
            all_simple_paths(g, a, b)
                .iter()
                .all(|p| blocked_by_definition(g, p, z))
        })
    })
}

/// Every `(a, b, Z)` with `a < b` and `Z` ranging over subsets of the rest.
pub fn pair_triples(g: &Dag) -> Vec<(NodeId, NodeId, VarSet)> {
    let ids: Vec<NodeId> = g.node_ids().collect();
    let mut out = Vec::new();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            let rest: VarSet = ids.iter().copied().filter(|&v| v != a && v != b).collect();
            for z in rest.subsets() {
                out.push((a, b, z));
            }
        }
    }
    out
}

/// Every canonical `(X, Y, Z)` with X, Y non-empty and mutually disjoint
/// (`X <= Y` lexicographically, so each symmetric pair appears once).
pub fn canonical_set_triples(g: &Dag) -> Vec<(VarSet, VarSet, VarSet)> {
    polydep_core::canonical_triples(&g.all_nodes())
}
