//! d-separation: the path-blocking criterion on DAGs and its single-path
//! specialization for polytrees.
//!
//! A path is blocked by `Z` when some node on it either (i) is not
//! head-to-head on the path and belongs to `Z`, or (ii) is head-to-head and
//! neither it nor any of its descendants belongs to `Z`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Dag, NodeId, Path, Polytree, VarSet};

/// Precondition violations for statement-shaped queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QueryError {
    /// The three sets are not mutually disjoint.
    Overlap { node: alloc::string::String },
    /// X or Y is empty.
    EmptySide { side: &'static str },
    /// A node id does not belong to the graph.
    UnknownNode { node: alloc::string::String },
}

impl fmt::Display for QueryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryError::Overlap { node } => {
                write!(f, "sets overlap on node `{node}`; X, Y and Z must be disjoint")
            }
            QueryError::EmptySide { side } => write!(f, "{side} must be non-empty"),
            QueryError::UnknownNode { node } => write!(f, "unknown node {node}"),
        }
    }
}

impl core::error::Error for QueryError {}

pub(crate) fn validate_triple(
    g: &Dag,
    x: &VarSet,
    y: &VarSet,
    z: &VarSet,
) -> Result<(), QueryError> {
    if x.is_empty() {
        return Err(QueryError::EmptySide { side: "X" });
    }
    if y.is_empty() {
        return Err(QueryError::EmptySide { side: "Y" });
    }
    for v in x.iter().chain(y.iter()).chain(z.iter()) {
        if !g.contains(v) {
            return Err(QueryError::UnknownNode {
                node: alloc::format!("#{}", v.index()),
            });
        }
    }
    for (s, t) in [(x, y), (x, z), (y, z)] {
        if let Some(v) = s.iter().find(|&v| t.contains(v)) {
            return Err(QueryError::Overlap {
                node: g.name(v).to_string(),
            });
        }
    }
    Ok(())
}

/// True iff every path between `X` and `Y` is blocked by `Z`.
///
/// Implemented as a reachability sweep over (node, entering-edge-direction)
/// states; the naive enumerate-every-path oracle lives in the test suite as
/// the reference.
pub fn sep_dag(g: &Dag, x: &VarSet, y: &VarSet, z: &VarSet) -> Result<bool, QueryError> {
    validate_triple(g, x, y, z)?;
    Ok(!d_connected(g, x, y, z))
}

fn d_connected(g: &Dag, x: &VarSet, y: &VarSet, z: &VarSet) -> bool {
    let n = g.n();

    // Nodes in Z or with a descendant in Z: exactly the colliders a trail may
    // pass through.
    let mut collider_open = vec![false; n];
    let mut stack: Vec<NodeId> = z.iter().collect();
    for v in z.iter() {
        collider_open[v.index()] = true;
    }
    while let Some(v) = stack.pop() {
        for &p in g.parents(v) {
            if !core::mem::replace(&mut collider_open[p.index()], true) {
                stack.push(p);
            }
        }
    }

    // State: (node, entered the node along an edge pointing into it).
    let mut seen = vec![[false; 2]; n];
    let mut stack: Vec<(NodeId, bool)> = x.iter().map(|v| (v, false)).collect();
    while let Some((v, entered_into)) = stack.pop() {
        if core::mem::replace(&mut seen[v.index()][entered_into as usize], true) {
            continue;
        }
        if y.contains(v) {
            return true;
        }
        let conditioned = z.contains(v);
        if !conditioned {
            // Chain or fork: leave to children regardless of entry direction.
            for &c in g.children(v) {
                stack.push((c, true));
            }
        }
        if entered_into {
            // Leaving to a parent makes the node a collider on the trail.
            if collider_open[v.index()] {
                for &p in g.parents(v) {
                    stack.push((p, false));
                }
            }
        } else if !conditioned {
            for &p in g.parents(v) {
                stack.push((p, false));
            }
        }
    }
    false
}

/// Single-pair separation on a polytree: the unique path is absent or
/// blocked. Agrees with [`sep_dag`] on singleton queries.
pub fn sep_polytree(
    pt: &Polytree,
    a: NodeId,
    b: NodeId,
    z: &VarSet,
) -> Result<bool, QueryError> {
    let x = VarSet::singleton(a);
    let y = VarSet::singleton(b);
    validate_triple(pt.as_dag(), &x, &y, z)?;
    let path = pt
        .unique_path(a, b)
        .expect("endpoints validated as distinct and known");
    Ok(match path {
        None => true,
        Some(p) => path_blocked(pt.as_dag(), &p, z),
    })
}

/// True iff some node on `path` blocks it given `Z`: a non-head-to-head node
/// in `Z`, or a head-to-head node with neither itself nor any descendant in
/// `Z`.
pub fn path_blocked(g: &Dag, path: &Path, z: &VarSet) -> bool {
    path.nodes().iter().enumerate().any(|(i, &v)| {
        if path.is_head_to_head(i) {
            !z.contains(v)
                && g.descendants(v)
                    .expect("path nodes belong to the graph")
                    .is_disjoint(z)
        } else {
            z.contains(v)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, set};
    use crate::graph::{Dag, Polytree};

    #[test]
    fn chain_blocked_by_middle() {
        let p2 = fixtures::p2();
        let g = p2.as_dag();
        assert!(sep_dag(g, &set(g, &["A"]), &set(g, &["C"]), &set(g, &["B"])).unwrap());
    }

    #[test]
    fn collider_descendant_unblocks() {
        let p1 = fixtures::p1();
        let g = p1.as_dag();
        let (a, b) = (set(g, &["A"]), set(g, &["B"]));
        assert!(sep_dag(g, &a, &b, &VarSet::empty()).unwrap());
        assert!(!sep_dag(g, &a, &b, &set(g, &["D"])).unwrap());
    }

    #[test]
    fn g3_two_route_query() {
        let g = fixtures::g3();
        // Y-X-V is blocked at X; Y-Z-W-V is blocked at the childless collider W.
        assert!(sep_dag(&g, &set(&g, &["Y"]), &set(&g, &["V"]), &set(&g, &["X"])).unwrap());
    }

    #[test]
    fn preconditions_rejected() {
        let p2 = fixtures::p2();
        let g = p2.as_dag();
        assert_eq!(
            sep_dag(g, &set(g, &["A"]), &set(g, &["A"]), &VarSet::empty()),
            Err(QueryError::Overlap {
                node: "A".to_string()
            })
        );
        assert_eq!(
            sep_dag(g, &VarSet::empty(), &set(g, &["A"]), &VarSet::empty()),
            Err(QueryError::EmptySide { side: "X" })
        );
    }

    #[test]
    fn polytree_variant_examples() {
        let p1 = fixtures::p1();
        let (a, b) = (p1.node("A").unwrap(), p1.node("B").unwrap());
        assert!(!sep_polytree(&p1, a, b, &set(&p1, &["C"])).unwrap());

        let p1x = fixtures::p1_extended();
        let (a, b) = (p1x.node("A").unwrap(), p1x.node("B").unwrap());
        assert!(!sep_polytree(&p1x, a, b, &set(&p1x, &["F"])).unwrap());

        let p2 = fixtures::p2();
        let (a, c) = (p2.node("A").unwrap(), p2.node("C").unwrap());
        assert!(!sep_polytree(&p2, a, c, &VarSet::empty()).unwrap());
    }

    #[test]
    fn path_blocked_clauses() {
        let p1 = fixtures::p1();
        let g = p1.as_dag();
        let path = p1
            .unique_path(g.node("A").unwrap(), g.node("B").unwrap())
            .unwrap()
            .unwrap();
        assert!(path_blocked(g, &path, &VarSet::empty()));
        assert!(!path_blocked(g, &path, &set(g, &["E"])));

        let p2 = fixtures::p2();
        let g2 = p2.as_dag();
        let chain = p2
            .unique_path(g2.node("A").unwrap(), g2.node("C").unwrap())
            .unwrap()
            .unwrap();
        assert!(path_blocked(g2, &chain, &set(g2, &["B"])));
    }

    #[test]
    fn separated_components() {
        let dag = Dag::new(&["A", "B", "C"], &[("A", "B")]).unwrap();
        let pt = Polytree::new(dag).unwrap();
        let (a, c) = (pt.node("A").unwrap(), pt.node("C").unwrap());
        assert!(sep_polytree(&pt, a, c, &VarSet::empty()).unwrap());
    }
}
