//! Small graphs shared across unit tests.

use crate::graph::{Dag, Polytree, VarSet};

/// Collider with two child branches: A -> C <- B, C -> D, C -> E.
pub fn p1() -> Polytree {
    let dag = Dag::new(
        &["A", "B", "C", "D", "E"],
        &[("A", "C"), ("B", "C"), ("C", "D"), ("C", "E")],
    )
    .unwrap();
    Polytree::new(dag).unwrap()
}

/// `p1` plus a grandchild: D -> F.
pub fn p1_extended() -> Polytree {
    let dag = Dag::new(
        &["A", "B", "C", "D", "E", "F"],
        &[("A", "C"), ("B", "C"), ("C", "D"), ("C", "E"), ("D", "F")],
    )
    .unwrap();
    Polytree::new(dag).unwrap()
}

/// Chain A -> B -> C.
pub fn p2() -> Polytree {
    let dag = Dag::new(&["A", "B", "C"], &[("A", "B"), ("B", "C")]).unwrap();
    Polytree::new(dag).unwrap()
}

/// Directed tree A -> B, A -> C.
pub fn p3() -> Polytree {
    let dag = Dag::new(&["A", "B", "C"], &[("A", "B"), ("A", "C")]).unwrap();
    Polytree::new(dag).unwrap()
}

/// A DAG that is not a polytree: its skeleton has the cycle X-Y-Z-W-V-X.
pub fn g3() -> Dag {
    Dag::new(
        &["X", "Y", "Z", "W", "V", "A", "B", "C"],
        &[
            ("X", "Y"),
            ("Y", "Z"),
            ("Z", "W"),
            ("X", "V"),
            ("V", "W"),
            ("A", "B"),
            ("C", "B"),
        ],
    )
    .unwrap()
}

pub fn set(g: &Dag, names: &[&str]) -> VarSet {
    names.iter().map(|n| g.node(n).unwrap()).collect()
}
