//! Immutable directed-graph types: DAGs, polytrees, node sets and skeleton
//! paths, plus seeded random generators for test corpora.
//!
//! Everything here is a value: graphs cannot be mutated after construction
//! and every query is a pure function, so graphs can be shared freely across
//! threads.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::ops::Deref;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense index of a node inside one graph.
///
/// Ids are assigned in input order at build time (`0..n`) and are only
/// meaningful for the graph that minted them.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(u32);

impl NodeId {
    pub(crate) fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Errors from graph construction and topology queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    EmptyGraph,
    EmptyName,
    DuplicateName(String),
    UnknownEndpoint(String),
    SelfLoop(String),
    DuplicateEdge(String, String),
    DirectedCycle(Vec<String>),
    UndirectedCycle(Vec<String>),
    UnknownNode(String),
    IdenticalEndpoints(String),
    InvalidPath(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::EmptyGraph => write!(f, "graph must have at least one node"),
            GraphError::EmptyName => write!(f, "node names must be non-empty"),
            GraphError::DuplicateName(n) => write!(f, "duplicate node name `{n}`"),
            GraphError::UnknownEndpoint(n) => write!(f, "edge endpoint `{n}` is not a node"),
            GraphError::SelfLoop(n) => write!(f, "self-loop on `{n}`"),
            GraphError::DuplicateEdge(p, c) => write!(f, "duplicate edge `{p} -> {c}`"),
            GraphError::DirectedCycle(nodes) => {
                write!(f, "directed cycle: {}", nodes.join(" -> "))
            }
            GraphError::UndirectedCycle(nodes) => {
                write!(f, "undirected cycle in skeleton: {}", nodes.join(" - "))
            }
            GraphError::UnknownNode(n) => write!(f, "unknown node {n}"),
            GraphError::IdenticalEndpoints(n) => {
                write!(f, "path endpoints must differ, got `{n}` twice")
            }
            GraphError::InvalidPath(detail) => write!(f, "invalid path: {detail}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A set of nodes with ascending-index iteration order.
///
/// Backed by a sorted vector, so iteration is deterministic and the derived
/// `Ord` gives a stable lexicographic order between sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct VarSet {
    members: Vec<NodeId>,
}

impl VarSet {
    pub fn empty() -> Self {
        VarSet::default()
    }

    pub fn singleton(v: NodeId) -> Self {
        VarSet { members: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.members
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn intersection(&self, other: &VarSet) -> VarSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn with(&self, v: NodeId) -> VarSet {
        self.iter().chain(core::iter::once(v)).collect()
    }

    pub fn without(&self, v: NodeId) -> VarSet {
        self.iter().filter(|&u| u != v).collect()
    }

    /// All `2^len` subsets, in ascending bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = VarSet> + '_ {
        let k = self.members.len();
        assert!(k < 24, "subset enumeration over {k} elements");
        (0u32..(1 << k)).map(move |mask| {
            self.members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect()
        })
    }

    fn from_mask(mask: &[bool]) -> VarSet {
        VarSet {
            members: mask
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| NodeId::new(i))
                .collect(),
        }
    }
}

impl FromIterator<NodeId> for VarSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        let mut members: Vec<NodeId> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VarSet { members }
    }
}

impl<'a> IntoIterator for &'a VarSet {
    type Item = NodeId;
    type IntoIter = core::iter::Copied<core::slice::Iter<'a, NodeId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

/// An immutable labeled DAG with adjacency stored both ways.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dag {
    names: Vec<String>,
    index_of: BTreeMap<String, NodeId>,
    parents: Vec<Vec<NodeId>>,
    children: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
}

impl Dag {
    /// Builds a DAG from node names and `(parent, child)` name pairs.
    ///
    /// Node ids follow input order. Rejects empty graphs, duplicate names,
    /// unknown endpoints, self-loops, duplicate edges and directed cycles.
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Dag, GraphError> {
        if names.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut index_of = BTreeMap::new();
        let mut owned = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(GraphError::EmptyName);
            }
            if index_of.insert(name.to_string(), NodeId::new(i)).is_some() {
                return Err(GraphError::DuplicateName(name.to_string()));
            }
            owned.push(name.to_string());
        }
        let n = owned.len();
        let mut parents = vec![Vec::new(); n];
        let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut edge_list = Vec::with_capacity(edges.len());
        for (pa, ch) in edges {
            let (pa, ch) = (pa.as_ref(), ch.as_ref());
            let p = *index_of
                .get(pa)
                .ok_or_else(|| GraphError::UnknownEndpoint(pa.to_string()))?;
            let c = *index_of
                .get(ch)
                .ok_or_else(|| GraphError::UnknownEndpoint(ch.to_string()))?;
            if p == c {
                return Err(GraphError::SelfLoop(pa.to_string()));
            }
            if children[p.index()].contains(&c) {
                return Err(GraphError::DuplicateEdge(pa.to_string(), ch.to_string()));
            }
            children[p.index()].push(c);
            parents[c.index()].push(p);
            edge_list.push((p, c));
        }
        for list in parents.iter_mut().chain(children.iter_mut()) {
            list.sort_unstable();
        }
        let dag = Dag {
            names: owned,
            index_of,
            parents,
            children,
            edges: edge_list,
        };
        if let Some(cycle) = dag.find_directed_cycle() {
            return Err(GraphError::DirectedCycle(cycle));
        }
        Ok(dag)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.index_of.get(name).copied()
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.n()).map(NodeId::new)
    }

    /// All nodes as a set.
    pub fn all_nodes(&self) -> VarSet {
        self.node_ids().collect()
    }

    pub fn parents(&self, v: NodeId) -> &[NodeId] {
        &self.parents[v.index()]
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v.index()]
    }

    /// Edges as `(parent, child)` pairs in input order.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn has_edge(&self, parent: NodeId, child: NodeId) -> bool {
        self.children[parent.index()].binary_search(&child).is_ok()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v.index() < self.n()
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(format!("#{}", v.index())))
        }
    }

    /// Strict descendants of `v` (`v` itself excluded).
    pub fn descendants(&self, v: NodeId) -> Result<VarSet, GraphError> {
        self.check_node(v)?;
        Ok(self.reachable(v, |u| self.children(u)))
    }

    /// Strict ancestors of `v` (`v` itself excluded).
    pub fn ancestors(&self, v: NodeId) -> Result<VarSet, GraphError> {
        self.check_node(v)?;
        Ok(self.reachable(v, |u| self.parents(u)))
    }

    fn reachable<'a, F>(&'a self, v: NodeId, step: F) -> VarSet
    where
        F: Fn(NodeId) -> &'a [NodeId],
    {
        let mut seen = vec![false; self.n()];
        let mut stack: Vec<NodeId> = step(v).to_vec();
        while let Some(u) = stack.pop() {
            if core::mem::replace(&mut seen[u.index()], true) {
                continue;
            }
            stack.extend_from_slice(step(u));
        }
        VarSet::from_mask(&seen)
    }

    /// A topological order with ties broken by ascending node index, so the
    /// result is the same on every run.
    pub fn topological_order(&self) -> Vec<NodeId> {
        let n = self.n();
        let mut indegree: Vec<usize> = (0..n).map(|i| self.parents[i].len()).collect();
        let mut ready: BinaryHeap<Reverse<NodeId>> = (0..n)
            .filter(|&i| indegree[i] == 0)
            .map(|i| Reverse(NodeId::new(i)))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &c in self.children(v) {
                indegree[c.index()] -= 1;
                if indegree[c.index()] == 0 {
                    ready.push(Reverse(c));
                }
            }
        }
        debug_assert_eq!(order.len(), n, "type invariant: no directed cycle");
        order
    }

    /// Number of weakly connected components of the skeleton.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        for start in self.node_ids() {
            if seen[start.index()] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start.index()] = true;
            while let Some(v) = stack.pop() {
                for u in self.skeleton_neighbors(v) {
                    if !core::mem::replace(&mut seen[u.index()], true) {
                        stack.push(u);
                    }
                }
            }
        }
        count
    }

    pub(crate) fn skeleton_neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.parents(v).iter().chain(self.children(v)).copied()
    }

    fn find_directed_cycle(&self) -> Option<Vec<String>> {
        // Iterative DFS; color 1 marks nodes on the current path.
        let n = self.n();
        let mut color = vec![0u8; n];
        for start in self.node_ids() {
            if color[start.index()] != 0 {
                continue;
            }
            let mut path: Vec<(NodeId, usize)> = vec![(start, 0)];
            color[start.index()] = 1;
            while let Some(&(v, cursor)) = path.last() {
                if let Some(&child) = self.children(v).get(cursor) {
                    path.last_mut().unwrap().1 += 1;
                    match color[child.index()] {
                        0 => {
                            color[child.index()] = 1;
                            path.push((child, 0));
                        }
                        1 => {
                            let from = path.iter().position(|&(u, _)| u == child).unwrap();
                            let mut cycle: Vec<String> = path[from..]
                                .iter()
                                .map(|&(u, _)| self.name(u).to_string())
                                .collect();
                            cycle.push(self.name(child).to_string());
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    color[v.index()] = 2;
                    path.pop();
                }
            }
        }
        None
    }
}

/// An undirected simple path through a graph's skeleton, with a
/// head-to-head role flag per node.
///
/// A node is head-to-head on the path when both of its path neighbors are
/// its parents; endpoints are never head-to-head.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Path {
    nodes: Vec<NodeId>,
    head_to_head: Vec<bool>,
}

impl Path {
    /// Validates that `nodes` is a skeleton path in `g` (consecutive nodes
    /// adjacent, no repeats, at least two nodes) and computes role flags.
    pub fn along(g: &Dag, nodes: &[NodeId]) -> Result<Path, GraphError> {
        if nodes.len() < 2 {
            return Err(GraphError::InvalidPath("need at least two nodes".to_string()));
        }
        for &v in nodes {
            g.check_node(v)?;
        }
        for w in nodes.windows(2) {
            if !g.has_edge(w[0], w[1]) && !g.has_edge(w[1], w[0]) {
                return Err(GraphError::InvalidPath(format!(
                    "`{}` and `{}` are not adjacent",
                    g.name(w[0]),
                    g.name(w[1])
                )));
            }
        }
        let mut sorted = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != nodes.len() {
            return Err(GraphError::InvalidPath("repeated node".to_string()));
        }
        let head_to_head = (0..nodes.len())
            .map(|i| {
                i > 0
                    && i + 1 < nodes.len()
                    && g.has_edge(nodes[i - 1], nodes[i])
                    && g.has_edge(nodes[i + 1], nodes[i])
            })
            .collect();
        Ok(Path {
            nodes: nodes.to_vec(),
            head_to_head,
        })
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_head_to_head(&self, position: usize) -> bool {
        self.head_to_head[position]
    }

    /// Positions of the head-to-head nodes, in path order.
    pub fn head_to_head_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.head_to_head[i])
    }

    /// The head-to-head nodes, in path order.
    pub fn head_to_head_nodes(&self) -> Vec<NodeId> {
        self.head_to_head_positions()
            .map(|i| self.nodes[i])
            .collect()
    }

    pub fn reversed(&self) -> Path {
        let mut nodes = self.nodes.clone();
        let mut flags = self.head_to_head.clone();
        nodes.reverse();
        flags.reverse();
        Path {
            nodes,
            head_to_head: flags,
        }
    }
}

/// A DAG whose undirected skeleton is acyclic.
///
/// Disconnected skeletons (forests) are accepted; between any two nodes
/// there is at most one undirected path.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polytree {
    dag: Dag,
}

impl Polytree {
    /// Certifies that `dag`'s skeleton has no cycle, or reports one.
    pub fn new(dag: Dag) -> Result<Polytree, GraphError> {
        if let Some(cycle) = find_skeleton_cycle(&dag) {
            return Err(GraphError::UndirectedCycle(cycle));
        }
        Ok(Polytree { dag })
    }

    pub fn as_dag(&self) -> &Dag {
        &self.dag
    }

    pub fn into_dag(self) -> Dag {
        self.dag
    }

    /// True when every node has at most one parent.
    pub fn is_directed_tree(&self) -> bool {
        self.dag.node_ids().all(|v| self.dag.parents(v).len() <= 1)
    }

    /// The unique skeleton path from `a` to `b`, or `None` when they lie in
    /// different components.
    pub fn unique_path(&self, a: NodeId, b: NodeId) -> Result<Option<Path>, GraphError> {
        self.dag.check_node(a)?;
        self.dag.check_node(b)?;
        if a == b {
            return Err(GraphError::IdenticalEndpoints(self.dag.name(a).to_string()));
        }
        let n = self.dag.n();
        let mut pred: Vec<Option<NodeId>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[a.index()] = true;
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            if v == b {
                break;
            }
            for u in self.dag.skeleton_neighbors(v) {
                if !core::mem::replace(&mut seen[u.index()], true) {
                    pred[u.index()] = Some(v);
                    stack.push(u);
                }
            }
        }
        if !seen[b.index()] {
            return Ok(None);
        }
        let mut rev = vec![b];
        let mut cur = b;
        while let Some(p) = pred[cur.index()] {
            rev.push(p);
            cur = p;
        }
        rev.reverse();
        let path = Path::along(&self.dag, &rev).expect("walked along skeleton edges");
        Ok(Some(path))
    }
}

impl Deref for Polytree {
    type Target = Dag;

    fn deref(&self) -> &Dag {
        &self.dag
    }
}

fn find_skeleton_cycle(dag: &Dag) -> Option<Vec<String>> {
    let n = dag.n();
    let mut visited = vec![false; n];
    let mut tree_parent: Vec<Option<NodeId>> = vec![None; n];
    for start in dag.node_ids() {
        if visited[start.index()] {
            continue;
        }
        visited[start.index()] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in dag.skeleton_neighbors(v) {
                if tree_parent[v.index()] == Some(u) {
                    continue;
                }
                if !visited[u.index()] {
                    visited[u.index()] = true;
                    tree_parent[u.index()] = Some(v);
                    stack.push(u);
                } else {
                    return Some(extract_cycle(dag, &tree_parent, v, u));
                }
            }
        }
    }
    None
}

// Both endpoints of the extra edge sit in the same DFS tree; the cycle is the
// tree path between them plus the edge itself.
fn extract_cycle(
    dag: &Dag,
    tree_parent: &[Option<NodeId>],
    v: NodeId,
    u: NodeId,
) -> Vec<String> {
    let mut v_chain = vec![v];
    let mut cur = v;
    while let Some(p) = tree_parent[cur.index()] {
        v_chain.push(p);
        cur = p;
    }
    let mut u_chain = vec![u];
    cur = u;
    while !v_chain.contains(&cur) {
        let p = tree_parent[cur.index()].expect("u and v share a DFS tree");
        u_chain.push(p);
        cur = p;
    }
    let meet = cur;
    let mut cycle: Vec<NodeId> = v_chain
        .iter()
        .copied()
        .take_while(|&x| x != meet)
        .collect();
    cycle.push(meet);
    for &x in u_chain.iter().rev().skip(1) {
        cycle.push(x);
    }
    let mut names: Vec<String> = cycle.iter().map(|&x| dag.name(x).to_string()).collect();
    names.push(dag.name(v).to_string());
    names
}

/// Connected polytree on `n` nodes: a uniformly random labeled tree skeleton
/// (random Prüfer sequence) with every edge oriented by an independent fair
/// coin. The same `(n, seed)` reproduces the same graph bit-exactly.
pub fn random_polytree(n: usize, seed: u64) -> Result<Polytree, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("V{i}")).collect();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (u, v) in random_tree(&mut rng, n) {
        let (pa, ch) = if rng.random_bool(0.5) { (u, v) } else { (v, u) };
        edges.push((names[pa].clone(), names[ch].clone()));
    }
    let dag = Dag::new(&names, &edges).expect("tree edges are simple and acyclic");
    Ok(Polytree::new(dag).expect("any orientation of a tree skeleton is a polytree"))
}

/// Connected directed tree on `n` nodes: a uniformly random labeled tree
/// skeleton rooted at a random node, every edge oriented away from the root.
pub fn random_directed_tree(n: usize, seed: u64) -> Result<Polytree, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("V{i}")).collect();
    let tree = random_tree(&mut rng, n);
    let root = rng.random_range(0..n);
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &tree {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut edges = Vec::with_capacity(tree.len());
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !core::mem::replace(&mut seen[u], true) {
                edges.push((names[v].clone(), names[u].clone()));
                stack.push(u);
            }
        }
    }
    let dag = Dag::new(&names, &edges).expect("tree edges are simple and acyclic");
    Ok(Polytree::new(dag).expect("tree skeleton"))
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    match n {
        1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let prufer: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
            prufer_decode(&prufer)
        }
    }
}

fn prufer_decode(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&i| degree[i] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(u) = leaves.pop().unwrap();
    let Reverse(v) = leaves.pop().unwrap();
    edges.push((u, v));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_node_dag() {
        let g = Dag::new(&["A"], &[]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn chain_adjacency_readback() {
        let g = fixtures::p2().into_dag();
        let a = g.node("A").unwrap();
        let b = g.node("B").unwrap();
        let c = g.node("C").unwrap();
        assert_eq!(g.parents(c), &[b]);
        assert_eq!(g.children(a), &[b]);
    }

    #[test]
    fn two_cycle_rejected() {
        let err = Dag::new(&["A", "B"], &[("A", "B"), ("B", "A")]).unwrap_err();
        assert!(matches!(err, GraphError::DirectedCycle(_)));
    }

    #[test]
    fn construction_errors_are_distinct() {
        assert_eq!(Dag::new::<&str>(&[], &[]), Err(GraphError::EmptyGraph));
        assert!(matches!(
            Dag::new(&["A", "A"], &[]),
            Err(GraphError::DuplicateName(_))
        ));
        assert!(matches!(
            Dag::new(&["A"], &[("A", "B")]),
            Err(GraphError::UnknownEndpoint(_))
        ));
        assert!(matches!(
            Dag::new(&["A"], &[("A", "A")]),
            Err(GraphError::SelfLoop(_))
        ));
        assert!(matches!(
            Dag::new(&["A", "B"], &[("A", "B"), ("A", "B")]),
            Err(GraphError::DuplicateEdge(_, _))
        ));
    }

    #[test]
    fn polytree_accepts_star_and_tree() {
        assert!(Polytree::new(fixtures::p1().into_dag()).is_ok());
        assert!(Polytree::new(fixtures::p3().into_dag()).is_ok());
    }

    #[test]
    fn polytree_rejects_g3_with_cycle() {
        let err = Polytree::new(fixtures::g3()).unwrap_err();
        let GraphError::UndirectedCycle(cycle) = err else {
            panic!("expected undirected cycle");
        };
        // X-Y-Z-W-V closes back on itself; the report repeats the start node.
        let mut distinct = cycle.clone();
        distinct.pop();
        distinct.sort();
        assert_eq!(distinct, ["V", "W", "X", "Y", "Z"]);
    }

    #[test]
    fn descendants_strict_and_transitive() {
        let p1 = fixtures::p1();
        let c = p1.node("C").unwrap();
        assert_eq!(
            p1.descendants(c).unwrap(),
            fixtures::set(&p1, &["D", "E"])
        );

        let p1x = fixtures::p1_extended();
        let c = p1x.node("C").unwrap();
        assert_eq!(
            p1x.descendants(c).unwrap(),
            fixtures::set(&p1x, &["D", "E", "F"])
        );

        let p2 = fixtures::p2();
        let leaf = p2.node("C").unwrap();
        assert!(p2.descendants(leaf).unwrap().is_empty());
    }

    #[test]
    fn unique_path_collider_flags() {
        let p1 = fixtures::p1();
        let (a, b) = (p1.node("A").unwrap(), p1.node("B").unwrap());
        let path = p1.unique_path(a, b).unwrap().unwrap();
        assert_eq!(path.nodes(), &[a, p1.node("C").unwrap(), b]);
        assert_eq!(path.head_to_head_nodes(), vec![p1.node("C").unwrap()]);
    }

    #[test]
    fn unique_path_chain_has_no_collider() {
        let p2 = fixtures::p2();
        let (a, c) = (p2.node("A").unwrap(), p2.node("C").unwrap());
        let path = p2.unique_path(a, c).unwrap().unwrap();
        assert_eq!(path.nodes().len(), 3);
        assert!(path.head_to_head_nodes().is_empty());
    }

    #[test]
    fn unique_path_absent_across_components() {
        let dag = Dag::new(&["A", "B", "C"], &[("A", "B")]).unwrap();
        let pt = Polytree::new(dag).unwrap();
        let (a, c) = (pt.node("A").unwrap(), pt.node("C").unwrap());
        assert_eq!(pt.unique_path(a, c).unwrap(), None);
    }

    #[test]
    fn unique_path_same_endpoint_errors() {
        let p2 = fixtures::p2();
        let a = p2.node("A").unwrap();
        assert!(matches!(
            p2.unique_path(a, a),
            Err(GraphError::IdenticalEndpoints(_))
        ));
    }

    #[test]
    fn directed_chain_path_not_head_to_head() {
        let p1 = fixtures::p1();
        let nodes = [
            p1.node("A").unwrap(),
            p1.node("C").unwrap(),
            p1.node("D").unwrap(),
        ];
        let path = Path::along(p1.as_dag(), &nodes).unwrap();
        assert!(path.head_to_head_nodes().is_empty());
    }

    #[test]
    fn topological_order_examples() {
        let p2 = fixtures::p2();
        let order: Vec<&str> = p2
            .topological_order()
            .into_iter()
            .map(|v| p2.name(v))
            .collect();
        assert_eq!(order, ["A", "B", "C"]);

        let p1 = fixtures::p1();
        let order: Vec<&str> = p1
            .topological_order()
            .into_iter()
            .map(|v| p1.name(v))
            .collect();
        assert_eq!(order, ["A", "B", "C", "D", "E"]);

        let single = Dag::new(&["A"], &[]).unwrap();
        assert_eq!(single.topological_order().len(), 1);
    }

    #[test]
    fn random_polytree_deterministic_per_seed() {
        let one = random_polytree(1, 99).unwrap();
        assert_eq!(one.n(), 1);

        let g1 = random_polytree(5, 7).unwrap();
        let g2 = random_polytree(5, 7).unwrap();
        assert_eq!(g1.edges(), g2.edges());
        assert_eq!(g1.names(), g2.names());
    }

    #[test]
    fn random_polytree_seeds_differ() {
        let differs = (0..100).any(|s| {
            random_polytree(6, s).unwrap().edges() != random_polytree(6, s + 1).unwrap().edges()
        });
        assert!(differs);
    }

    #[test]
    fn random_polytree_rejects_zero_nodes() {
        assert_eq!(random_polytree(0, 1), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn random_directed_tree_has_single_parents() {
        for seed in 0..50 {
            let t = random_directed_tree(8, seed).unwrap();
            assert!(t.is_directed_tree());
            assert_eq!(t.edge_count(), 7);
        }
    }
}
