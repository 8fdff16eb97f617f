//! The dependence criterion for polytrees, with witness extraction.
//!
//! A pair `(a, b)` is certified dependent given `Z` when the unique path
//! between them is open and every head-to-head node `C` on it is either in
//! `Z` or has exactly one conditioned descendant that is not itself a
//! descendant of another conditioned descendant of `C`.

use alloc::vec::Vec;

use crate::graph::{GraphError, NodeId, Path, Polytree, VarSet};
use crate::sep::{self, sep_polytree, QueryError};

/// Why a head-to-head node on a witness path does not spoil the certificate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ColliderSupport {
    /// The node itself is in the conditioning set.
    Conditioned,
    /// Exactly one maximal conditioned descendant exists.
    UniqueMaximalDescendant(NodeId),
}

/// A certified dependent pair: endpoints, their unique path, and one
/// justification per head-to-head node on the path.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DepWitness {
    pub a: NodeId,
    pub b: NodeId,
    pub path: Path,
    pub support: Vec<(NodeId, ColliderSupport)>,
}

/// The conditioned descendants of `c` that are not descendants of another
/// conditioned descendant of `c`.
pub fn maximal_conditioned_descendants(
    pt: &Polytree,
    c: NodeId,
    z: &VarSet,
) -> Result<VarSet, GraphError> {
    let candidates = pt.descendants(c)?.intersection(z);
    Ok(candidates
        .iter()
        .filter(|&d| {
            !candidates.iter().any(|e| {
                e != d
                    && pt
                        .descendants(e)
                        .expect("candidate descendants are graph nodes")
                        .contains(d)
            })
        })
        .collect())
}

/// The pairwise criterion: the path `a : b` is open given `z` and every
/// head-to-head node on it is conditioned or has a unique maximal
/// conditioned descendant.
pub fn dep_pair(pt: &Polytree, a: NodeId, b: NodeId, z: &VarSet) -> Result<bool, QueryError> {
    if sep_polytree(pt, a, b, z)? {
        return Ok(false);
    }
    let path = pt
        .unique_path(a, b)
        .expect("validated by sep_polytree")
        .expect("an open query implies a path");
    Ok(colliders_supported(pt, &path, z))
}

fn colliders_supported(pt: &Polytree, path: &Path, z: &VarSet) -> bool {
    path.head_to_head_positions().all(|i| {
        let c = path.nodes()[i];
        z.contains(c)
            || maximal_conditioned_descendants(pt, c, z)
                .expect("path nodes are graph nodes")
                .len()
                == 1
    })
}

/// Set-level dependence: searches for the lexicographically smallest
/// `(a, b)` in `X x Y` (by node index, `a` first) whose pair criterion
/// holds, and packages it as a witness. `None` when no pair qualifies.
pub fn dep(
    pt: &Polytree,
    x: &VarSet,
    y: &VarSet,
    z: &VarSet,
) -> Result<Option<DepWitness>, QueryError> {
    sep::validate_triple(pt.as_dag(), x, y, z)?;
    for a in x.iter() {
        for b in y.iter() {
            if dep_pair(pt, a, b, z)? {
                return Ok(Some(witness(pt, a, b, z)));
            }
        }
    }
    Ok(None)
}

fn witness(pt: &Polytree, a: NodeId, b: NodeId, z: &VarSet) -> DepWitness {
    let path = pt
        .unique_path(a, b)
        .expect("witness endpoints are valid")
        .expect("witness pair is connected");
    let support = path
        .head_to_head_positions()
        .map(|i| {
            let c = path.nodes()[i];
            let support = if z.contains(c) {
                ColliderSupport::Conditioned
            } else {
                let mcd = maximal_conditioned_descendants(pt, c, z)
                    .expect("path nodes are graph nodes");
                debug_assert_eq!(mcd.len(), 1);
                let unique = mcd.iter().next().unwrap();
                ColliderSupport::UniqueMaximalDescendant(unique)
            };
            (c, support)
        })
        .collect();
    DepWitness {
        a,
        b,
        path,
        support,
    }
}
