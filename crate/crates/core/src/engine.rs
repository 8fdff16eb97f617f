//! The dependence base and a forward-chaining closure engine over the
//! graphoid rules extended with composition and weak transitivity.
//!
//! Construction of a minimal directed independence map guarantees, for every
//! node `B` and parent `A`, the dependence
//! `{A} u (Pre(B) \ Pa(B))  is dependent on  {B}  given  Pa(B) \ {A}`.
//! These statements form the dependence base. Further dependencies follow by
//! rules whose independence antecedents are discharged by d-separation on
//! the graph. The closure is the brute-force oracle the path criterion in
//! [`crate::dep`] is checked against.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Dag, NodeId, Polytree, VarSet};
use crate::sep::sep_dag;
use crate::statement::{Polarity, Statement};

/// Hard cap on closure universes; the engine trades speed for certainty and
/// enumerates subsets freely below this size.
pub const MAX_CLOSURE_NODES: usize = 12;

/// The rules a derivation step may cite.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RuleId {
    Base,
    Symmetry,
    Decomposition,
    WeakUnion,
    Contraction1,
    Contraction2,
    Intersection,
    Composition,
    WeakTransitivity1,
    WeakTransitivity2,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::Base,
        RuleId::Symmetry,
        RuleId::Decomposition,
        RuleId::WeakUnion,
        RuleId::Contraction1,
        RuleId::Contraction2,
        RuleId::Intersection,
        RuleId::Composition,
        RuleId::WeakTransitivity1,
        RuleId::WeakTransitivity2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Base => "base",
            RuleId::Symmetry => "symmetry",
            RuleId::Decomposition => "decomposition",
            RuleId::WeakUnion => "weak_union",
            RuleId::Contraction1 => "contraction1",
            RuleId::Contraction2 => "contraction2",
            RuleId::Intersection => "intersection",
            RuleId::Composition => "composition",
            RuleId::WeakTransitivity1 => "weak_transitivity1",
            RuleId::WeakTransitivity2 => "weak_transitivity2",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Number of dependence premises the rule consumes.
    pub fn arity(self) -> usize {
        match self {
            RuleId::Base => 0,
            RuleId::WeakTransitivity1 | RuleId::WeakTransitivity2 => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineError {
    InvalidOrder { detail: String },
    UniverseTooLarge { nodes: usize, cap: usize },
    MalformedPremises { detail: String },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::InvalidOrder { detail } => {
                write!(f, "order is not a topological order: {detail}")
            }
            EngineError::UniverseTooLarge { nodes, cap } => {
                write!(f, "closure universe of {nodes} nodes exceeds the cap of {cap}")
            }
            EngineError::MalformedPremises { detail } => {
                write!(f, "malformed premises: {detail}")
            }
        }
    }
}

impl core::error::Error for EngineError {}

/// Answers separation queries for rule antecedents.
pub trait SepOracle {
    fn sep(&mut self, x: &VarSet, y: &VarSet, z: &VarSet) -> bool;
}

/// Memoizing d-separation oracle over one graph.
pub struct GraphSepOracle<'a> {
    graph: &'a Dag,
    cache: BTreeMap<(VarSet, VarSet, VarSet), bool>,
}

impl<'a> GraphSepOracle<'a> {
    pub fn new(graph: &'a Dag) -> Self {
        GraphSepOracle {
            graph,
            cache: BTreeMap::new(),
        }
    }
}

impl SepOracle for GraphSepOracle<'_> {
    fn sep(&mut self, x: &VarSet, y: &VarSet, z: &VarSet) -> bool {
        let key = if y < x {
            (y.clone(), x.clone(), z.clone())
        } else {
            (x.clone(), y.clone(), z.clone())
        };
        if let Some(&hit) = self.cache.get(&key) {
            return hit;
        }
        let result = sep_dag(self.graph, x, y, z).expect("rule antecedents are valid triples");
        self.cache.insert(key, result);
        result
    }
}

impl<F: FnMut(&VarSet, &VarSet, &VarSet) -> bool> SepOracle for F {
    fn sep(&mut self, x: &VarSet, y: &VarSet, z: &VarSet) -> bool {
        self(x, y, z)
    }
}

/// The dependence base of the graph under the given topological order: one
/// statement per (node, parent) pair,
/// `{A} u (Pre(B) \ Pa(B))  dependent on  {B}  given  Pa(B) \ {A}`.
pub fn dependence_base(
    pt: &Polytree,
    order: &[NodeId],
) -> Result<BTreeSet<Statement>, EngineError> {
    check_topological(pt.as_dag(), order)?;
    let mut base = BTreeSet::new();
    for (i, &b) in order.iter().enumerate() {
        if pt.parents(b).is_empty() {
            continue;
        }
        let pre: VarSet = order[..i].iter().copied().collect();
        let pa: VarSet = pt.parents(b).iter().copied().collect();
        let extra = pre.difference(&pa);
        for &a in pt.parents(b) {
            let statement = Statement::dependence(
                extra.with(a),
                VarSet::singleton(b),
                pa.without(a),
            )
            .expect("base sets are disjoint by construction");
            base.insert(statement);
        }
    }
    Ok(base)
}

fn check_topological(g: &Dag, order: &[NodeId]) -> Result<(), EngineError> {
    let n = g.n();
    if order.len() != n {
        return Err(EngineError::InvalidOrder {
            detail: format!("{} nodes listed, graph has {n}", order.len()),
        });
    }
    let mut position = alloc::vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if !g.contains(v) {
            return Err(EngineError::InvalidOrder {
                detail: format!("unknown node #{}", v.index()),
            });
        }
        if position[v.index()] != usize::MAX {
            return Err(EngineError::InvalidOrder {
                detail: format!("`{}` listed twice", g.name(v)),
            });
        }
        position[v.index()] = i;
    }
    for &(p, c) in g.edges() {
        if position[p.index()] > position[c.index()] {
            return Err(EngineError::InvalidOrder {
                detail: format!("edge `{} -> {}` goes backwards", g.name(p), g.name(c)),
            });
        }
    }
    Ok(())
}

/// Everything derivable from `premises` by one application of `rule`, with
/// every independence antecedent certified by `oracle`.
///
/// The rules, on dependence statements (`sep` marks discharged antecedents):
///
/// - symmetry:            `Y dep X | Z  =>  X dep Y | Z`
/// - decomposition:       `X dep Y | Z  =>  X dep YW | Z`
/// - weak union:          `X dep Y | ZW  =>  X dep YW | Z`
/// - contraction1:        `X dep YW | Z  and  sep(X, Y | ZW)  =>  X dep W | Z`
/// - contraction2:        `X dep YW | Z  and  sep(X, W | Z)   =>  X dep Y | ZW`
/// - intersection:        `X dep YW | Z  and  sep(X, Y | ZW)  =>  X dep W | ZY`
/// - composition:         `X dep YW | Z  and  sep(X, W | Z)   =>  X dep Y | Z`
/// - weak transitivity1:  `X dep V | Z  and  V dep Y | Z  and  sep(X, Y | Z)
///                         =>  X dep Y | ZV`   (V a single node)
/// - weak transitivity2:  `X dep V | Z  and  V dep Y | Z  and  sep(X, Y | ZV)
///                         =>  X dep Y | Z`    (V a single node)
///
/// Statements are canonical under symmetry, so each rule is instantiated in
/// both side orientations; free sets `W` range over all non-empty choices,
/// and weak transitivity instantiates `V` over single variables only.
pub fn apply_rule(
    rule: RuleId,
    premises: &[Statement],
    oracle: &mut dyn SepOracle,
    universe: &VarSet,
) -> Result<Vec<Statement>, EngineError> {
    if premises.len() != rule.arity() {
        return Err(EngineError::MalformedPremises {
            detail: format!(
                "{rule} takes {} premise(s), got {}",
                rule.arity(),
                premises.len()
            ),
        });
    }
    for p in premises {
        if p.polarity() != Polarity::Dependence {
            return Err(EngineError::MalformedPremises {
                detail: format!("premises must be dependencies, got `{p}`"),
            });
        }
        if !p.mentioned().is_subset(universe) {
            return Err(EngineError::MalformedPremises {
                detail: format!("premise `{p}` mentions nodes outside the universe"),
            });
        }
    }

    let mut out = BTreeSet::new();
    match rule {
        RuleId::Base => {
            return Err(EngineError::MalformedPremises {
                detail: "base statements come from dependence_base, not rule application"
                    .into(),
            });
        }
        RuleId::Symmetry => {
            // Canonical statements already quotient by symmetry.
            out.insert(premises[0].clone());
        }
        RuleId::Decomposition => {
            let s = &premises[0];
            let free = universe.difference(&s.mentioned());
            for (x, y) in orientations(s) {
                for w in free.subsets().filter(|w| !w.is_empty()) {
                    push(&mut out, x.clone(), y.union(&w), s.z().clone());
                }
            }
        }
        RuleId::WeakUnion => {
            let s = &premises[0];
            for (x, y) in orientations(s) {
                for w in s.z().subsets().filter(|w| !w.is_empty()) {
                    push(&mut out, x.clone(), y.union(&w), s.z().difference(&w));
                }
            }
        }
        RuleId::Contraction1 => {
            split_rule(&mut out, &premises[0], oracle, |x, y, w, z, oracle| {
                oracle
                    .sep(x, y, &z.union(w))
                    .then(|| (x.clone(), w.clone(), z.clone()))
            });
        }
        RuleId::Contraction2 => {
            split_rule(&mut out, &premises[0], oracle, |x, y, w, z, oracle| {
                oracle
                    .sep(x, w, z)
                    .then(|| (x.clone(), y.clone(), z.union(w)))
            });
        }
        RuleId::Intersection => {
            split_rule(&mut out, &premises[0], oracle, |x, y, w, z, oracle| {
                oracle
                    .sep(x, y, &z.union(w))
                    .then(|| (x.clone(), w.clone(), z.union(y)))
            });
        }
        RuleId::Composition => {
            split_rule(&mut out, &premises[0], oracle, |x, y, w, z, oracle| {
                oracle
                    .sep(x, w, z)
                    .then(|| (x.clone(), y.clone(), z.clone()))
            });
        }
        RuleId::WeakTransitivity1 => {
            weak_transitivity(&mut out, premises, oracle, |x, y, v, z, oracle| {
                oracle
                    .sep(x, y, z)
                    .then(|| (x.clone(), y.clone(), z.with(v)))
            });
        }
        RuleId::WeakTransitivity2 => {
            weak_transitivity(&mut out, premises, oracle, |x, y, v, z, oracle| {
                oracle
                    .sep(x, y, &z.with(v))
                    .then(|| (x.clone(), y.clone(), z.clone()))
            });
        }
    }
    Ok(out.into_iter().collect())
}

fn orientations(s: &Statement) -> [(&VarSet, &VarSet); 2] {
    let (x, y) = s.sides();
    [(x, y), (y, x)]
}

fn push(out: &mut BTreeSet<Statement>, x: VarSet, y: VarSet, z: VarSet) {
    out.insert(Statement::dependence(x, y, z).expect("rule algebra preserves disjointness"));
}

/// Shared shape of the four split rules: orient the premise as `X dep S | Z`,
/// split `S` into non-empty `Y` and `W`, and let the rule decide.
fn split_rule<F>(out: &mut BTreeSet<Statement>, s: &Statement, oracle: &mut dyn SepOracle, f: F)
where
    F: Fn(&VarSet, &VarSet, &VarSet, &VarSet, &mut dyn SepOracle) -> Option<(VarSet, VarSet, VarSet)>,
{
    for (x, side) in orientations(s) {
        if side.len() < 2 {
            continue;
        }
        for w in side.subsets() {
            let y = side.difference(&w);
            if w.is_empty() || y.is_empty() {
                continue;
            }
            if let Some((cx, cy, cz)) = f(x, &y, &w, s.z(), oracle) {
                push(out, cx, cy, cz);
            }
        }
    }
}

fn weak_transitivity<F>(
    out: &mut BTreeSet<Statement>,
    premises: &[Statement],
    oracle: &mut dyn SepOracle,
    f: F,
) where
    F: Fn(&VarSet, &VarSet, NodeId, &VarSet, &mut dyn SepOracle) -> Option<(VarSet, VarSet, VarSet)>,
{
    let (p, q) = (&premises[0], &premises[1]);
    if p.z() != q.z() {
        return;
    }
    let z = p.z();
    for (x, v_set) in orientations(p) {
        if v_set.len() != 1 {
            continue;
        }
        let v = v_set.iter().next().unwrap();
        for (v2_set, y) in orientations(q) {
            if v2_set != v_set || !x.is_disjoint(y) {
                continue;
            }
            if let Some((cx, cy, cz)) = f(x, y, v, z, oracle) {
                push(out, cx, cy, cz);
            }
        }
    }
}

/// Every canonical `(X, Y, Z)` triple over `universe`: `X`, `Y` non-empty
/// and mutually disjoint, sides ordered so each symmetric pair appears once.
/// Intended for exhaustive small-universe sweeps; capped at 10 nodes.
pub fn canonical_triples(universe: &VarSet) -> Vec<(VarSet, VarSet, VarSet)> {
    let ids: Vec<NodeId> = universe.iter().collect();
    let n = ids.len();
    assert!(n <= 10, "triple enumeration over {n} nodes");
    let mut out = Vec::new();
    for assignment in 0..4usize.pow(n as u32) {
        let mut x = Vec::new();
        let mut y = Vec::new();
        let mut z = Vec::new();
        let mut code = assignment;
        for &v in &ids {
            match code % 4 {
                1 => x.push(v),
                2 => y.push(v),
                3 => z.push(v),
                _ => {}
            }
            code /= 4;
        }
        if x.is_empty() || y.is_empty() {
            continue;
        }
        let x: VarSet = x.into_iter().collect();
        let y: VarSet = y.into_iter().collect();
        if y < x {
            continue;
        }
        out.push((x, y, z.into_iter().collect()));
    }
    out
}

/// Least fixpoint of the rules over the dependence base. Deterministic: the
/// result is a set, independent of firing order.
pub fn cwt_closure(
    pt: &Polytree,
    base: &BTreeSet<Statement>,
) -> Result<BTreeSet<Statement>, EngineError> {
    if pt.n() > MAX_CLOSURE_NODES {
        return Err(EngineError::UniverseTooLarge {
            nodes: pt.n(),
            cap: MAX_CLOSURE_NODES,
        });
    }
    let universe = pt.all_nodes();
    let mut oracle = GraphSepOracle::new(pt.as_dag());

    let mut closed: BTreeSet<Statement> = base.clone();
    let mut seen: Vec<Statement> = closed.iter().cloned().collect();
    let mut work: VecDeque<Statement> = seen.iter().cloned().collect();

    const UNARY: [RuleId; 6] = [
        RuleId::Decomposition,
        RuleId::WeakUnion,
        RuleId::Contraction1,
        RuleId::Contraction2,
        RuleId::Intersection,
        RuleId::Composition,
    ];

    while let Some(s) = work.pop_front() {
        let mut derived: Vec<Statement> = Vec::new();
        for rule in UNARY {
            derived.extend(apply_rule(
                rule,
                core::slice::from_ref(&s),
                &mut oracle,
                &universe,
            )?);
        }
        // Pair the popped statement with everything inserted so far (itself
        // included); later statements pick up the remaining pairs when they
        // are popped in turn.
        for other in &seen {
            for rule in [RuleId::WeakTransitivity1, RuleId::WeakTransitivity2] {
                derived.extend(apply_rule(
                    rule,
                    &[s.clone(), other.clone()],
                    &mut oracle,
                    &universe,
                )?);
            }
        }
        for t in derived {
            if closed.insert(t.clone()) {
                seen.push(t.clone());
                work.push_back(t);
            }
        }
    }
    Ok(closed)
}
