//! Structural invariants of the graph types, checked over seeded random
//! corpora.

mod common;

use polydep_core::{random_directed_tree, random_polytree, Polytree};
use proptest::prelude::*;

#[test]
fn random_polytrees_always_validate() {
    // 1 <= n <= 50, 100 seeds each.
    for n in 1..=50 {
        for seed in 0..100 {
            let pt = random_polytree(n, seed).unwrap();
            assert_eq!(pt.n(), n);
            assert!(Polytree::new(pt.as_dag().clone()).is_ok());
        }
    }
}

#[test]
fn polytree_edge_count_matches_components() {
    for seed in 0..200 {
        let pt = random_polytree(1 + (seed as usize % 12), seed).unwrap();
        assert_eq!(
            pt.edge_count(),
            pt.n() - pt.component_count(),
            "edges = nodes - components on polytrees"
        );
    }
}

#[test]
fn no_node_descends_from_itself() {
    for seed in 0..100 {
        let pt = random_polytree(2 + (seed as usize % 10), seed).unwrap();
        for v in pt.node_ids() {
            assert!(!pt.descendants(v).unwrap().contains(v));
        }
    }
}

#[test]
fn topological_orders_respect_edges() {
    for seed in 0..100 {
        let pt = random_polytree(2 + (seed as usize % 10), seed).unwrap();
        let order = pt.topological_order();
        assert_eq!(order.len(), pt.n());
        let mut position = vec![0; pt.n()];
        for (i, &v) in order.iter().enumerate() {
            position[v.index()] = i;
        }
        for &(p, c) in pt.edges() {
            assert!(position[p.index()] < position[c.index()]);
        }
    }
}

#[test]
fn directed_trees_are_polytrees_with_single_parents() {
    for seed in 0..100 {
        let t = random_directed_tree(1 + (seed as usize % 8), seed).unwrap();
        assert!(t.is_directed_tree());
    }
}

proptest! {
    #[test]
    fn path_reversal_is_involutive(n in 2usize..12, seed in 0u64..300) {
        let pt = random_polytree(n, seed).unwrap();
        let ids: Vec<_> = pt.node_ids().collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let forward = pt.unique_path(a, b).unwrap();
                let backward = pt.unique_path(b, a).unwrap();
                match (forward, backward) {
                    (Some(f), Some(bk)) => {
                        prop_assert_eq!(f.reversed(), bk.clone());
                        // Role flags are direction-independent.
                        let f_h2h = f.head_to_head_nodes();
                        let mut b_h2h = bk.head_to_head_nodes();
                        b_h2h.reverse();
                        prop_assert_eq!(f_h2h, b_h2h);
                    }
                    (None, None) => {}
                    _ => prop_assert!(false, "path existence must be symmetric"),
                }
            }
        }
    }

    #[test]
    fn connected_polytrees_have_all_paths(n in 1usize..15, seed in 0u64..200) {
        let pt = random_polytree(n, seed).unwrap();
        prop_assert_eq!(pt.component_count(), 1);
        let ids: Vec<_> = pt.node_ids().collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                prop_assert!(pt.unique_path(a, b).unwrap().is_some());
            }
        }
    }
}
