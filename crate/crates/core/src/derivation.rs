//! Constructive derivations: given a certified dependence, build a checkable
//! trace that reaches it from the dependence base, plus an independent
//! verifier for such traces.
//!
//! The builder works pairwise. For an adjacent witness pair it starts from
//! the base statement of the child node, strips the surplus context with
//! contraction1 / weak union / composition, and then rebuilds the queried
//! conditioning set in four phases (nodes hanging off the parent, off the
//! child's other parents, off the child's children, and disconnected
//! remainder), each phase a decomposition followed by an intersection or
//! contraction2 with a separation side condition. Longer paths recurse on an
//! interior node (weak transitivity), and unconditioned head-to-head nodes
//! recurse through their unique maximal conditioned descendant. Steps whose
//! introduced set is empty are skipped; repeated statements are emitted once
//! and reused.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dep::{dep, dep_pair, maximal_conditioned_descendants};
use crate::engine::{dependence_base, RuleId};
use crate::graph::{NodeId, Polytree, VarSet};
use crate::sep::{sep_dag, QueryError};
use crate::statement::{Polarity, Statement};

/// An independence antecedent discharged by d-separation, recorded on the
/// step that used it. Sides are kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SepCondition {
    x: VarSet,
    y: VarSet,
    z: VarSet,
}

impl SepCondition {
    pub fn new(x: VarSet, y: VarSet, z: VarSet) -> Self {
        let (x, y) = if y < x { (y, x) } else { (x, y) };
        SepCondition { x, y, z }
    }

    pub fn x(&self) -> &VarSet {
        &self.x
    }

    pub fn y(&self) -> &VarSet {
        &self.y
    }

    pub fn z(&self) -> &VarSet {
        &self.z
    }
}

/// One derivation step. Base steps cite no premises; rule steps cite earlier
/// step indices and carry their separation side conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub index: usize,
    pub statement: Statement,
    pub rule: RuleId,
    pub premises: Vec<usize>,
    pub sep_conditions: Vec<SepCondition>,
}

/// A full derivation: the node universe it was built over, the goal
/// statement, and the numbered steps ending in the goal.
///
/// Traces are plain data so they can be stored, transported and tampered
/// with; [`verify_trace`] re-checks everything from scratch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub nodes: Vec<String>,
    pub goal: Statement,
    pub steps: Vec<TraceStep>,
}

/// The conditioning set split around an edge `a -> b`: nodes reaching `a`
/// through its parents, through its other children, nodes reaching `b`
/// through its other parents, through its children, and nodes connected to
/// neither endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextPartition {
    pub upstream_a: VarSet,
    pub downstream_a: VarSet,
    pub upstream_b: VarSet,
    pub downstream_b: VarSet,
    pub rest: VarSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeriveError {
    Query(QueryError),
    NotAnEdge { parent: String, child: String },
    /// The criterion does not certify the requested dependence.
    DepAbsent,
    /// A recursive subquery or side condition failed; this indicates a bug
    /// in the criterion reading and is never expected.
    Internal { detail: String },
}

impl fmt::Display for DeriveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeriveError::Query(e) => write!(f, "{e}"),
            DeriveError::NotAnEdge { parent, child } => {
                write!(f, "`{parent} -> {child}` is not an edge")
            }
            DeriveError::DepAbsent => {
                write!(f, "the dependence criterion does not certify this statement")
            }
            DeriveError::Internal { detail } => {
                write!(f, "internal derivation failure: {detail}")
            }
        }
    }
}

impl core::error::Error for DeriveError {}

impl From<QueryError> for DeriveError {
    fn from(e: QueryError) -> Self {
        DeriveError::Query(e)
    }
}

/// Splits `z` by how each node connects to the edge `a -> b`.
pub fn partition_context(
    pt: &Polytree,
    a: NodeId,
    b: NodeId,
    z: &VarSet,
) -> Result<ContextPartition, DeriveError> {
    pt.check_node(a).map_err(|_| DeriveError::Query(QueryError::UnknownNode {
        node: format!("#{}", a.index()),
    }))?;
    pt.check_node(b).map_err(|_| DeriveError::Query(QueryError::UnknownNode {
        node: format!("#{}", b.index()),
    }))?;
    if !pt.has_edge(a, b) {
        return Err(DeriveError::NotAnEdge {
            parent: pt.name(a).to_string(),
            child: pt.name(b).to_string(),
        });
    }
    if z.contains(a) || z.contains(b) {
        let node = pt.name(if z.contains(a) { a } else { b }).to_string();
        return Err(DeriveError::Query(QueryError::Overlap { node }));
    }
    let mut part = ContextPartition {
        upstream_a: VarSet::empty(),
        downstream_a: VarSet::empty(),
        upstream_b: VarSet::empty(),
        downstream_b: VarSet::empty(),
        rest: VarSet::empty(),
    };
    for zn in z.iter() {
        let Some(path) = pt.unique_path(a, zn).expect("distinct known nodes") else {
            part.rest = part.rest.with(zn);
            continue;
        };
        let first = path.nodes()[1];
        if first == b {
            // The path leaves a through b; classify by how it leaves b.
            let second = path.nodes()[2];
            if pt.has_edge(second, b) {
                part.upstream_b = part.upstream_b.with(zn);
            } else {
                part.downstream_b = part.downstream_b.with(zn);
            }
        } else if pt.has_edge(first, a) {
            part.upstream_a = part.upstream_a.with(zn);
        } else {
            part.downstream_a = part.downstream_a.with(zn);
        }
    }
    Ok(part)
}

/// Builds a derivation of `X dep Y | Z` from the dependence base.
///
/// Fails with [`DeriveError::DepAbsent`] when the criterion does not certify
/// the statement; every recursive subquery is re-checked against the
/// criterion and failures surface loudly as [`DeriveError::Internal`].
pub fn derive(pt: &Polytree, x: &VarSet, y: &VarSet, z: &VarSet) -> Result<Trace, DeriveError> {
    let witness = dep(pt, x, y, z)?.ok_or(DeriveError::DepAbsent)?;
    let goal =
        Statement::dependence(x.clone(), y.clone(), z.clone()).expect("validated by dep");

    let mut builder = TraceBuilder::new(pt);
    let mut last = builder.derive_pair(witness.a, witness.b, z)?;

    // Lift the witness pair to the queried sets, one side at a time.
    let y_extra = y.without(witness.b);
    if !y_extra.is_empty() {
        let lifted = Statement::dependence(VarSet::singleton(witness.a), y.clone(), z.clone())
            .expect("witness endpoint is in X");
        last = builder.emit(lifted, RuleId::Decomposition, vec![last], vec![])?;
    }
    let x_extra = x.without(witness.a);
    if !x_extra.is_empty() {
        last = builder.emit(goal.clone(), RuleId::Decomposition, vec![last], vec![])?;
    }

    // The goal may have been reused from an earlier step; the final step must
    // still state it, so restate it explicitly in that case.
    if last != builder.steps.len() {
        let index = builder.steps.len() + 1;
        builder.steps.push(TraceStep {
            index,
            statement: goal.clone(),
            rule: RuleId::Symmetry,
            premises: vec![last],
            sep_conditions: vec![],
        });
    }

    Ok(Trace {
        nodes: pt.names().to_vec(),
        goal,
        steps: builder.steps,
    })
}

struct TraceBuilder<'a> {
    pt: &'a Polytree,
    order: Vec<NodeId>,
    positions: Vec<usize>,
    steps: Vec<TraceStep>,
    memo: BTreeMap<Statement, usize>,
}

impl<'a> TraceBuilder<'a> {
    fn new(pt: &'a Polytree) -> Self {
        let order = pt.topological_order();
        let mut positions = vec![0; pt.n()];
        for (i, &v) in order.iter().enumerate() {
            positions[v.index()] = i;
        }
        TraceBuilder {
            pt,
            order,
            positions,
            steps: Vec::new(),
            memo: BTreeMap::new(),
        }
    }

    /// Appends a step unless the statement was derived before, in which case
    /// the existing index is reused. Side conditions are re-checked.
    fn emit(
        &mut self,
        statement: Statement,
        rule: RuleId,
        premises: Vec<usize>,
        sep_conditions: Vec<SepCondition>,
    ) -> Result<usize, DeriveError> {
        if let Some(&i) = self.memo.get(&statement) {
            return Ok(i);
        }
        for cond in &sep_conditions {
            let holds = sep_dag(self.pt.as_dag(), cond.x(), cond.y(), cond.z())
                .map_err(DeriveError::Query)?;
            if !holds {
                return Err(DeriveError::Internal {
                    detail: format!("side condition does not separate at step `{statement}`"),
                });
            }
        }
        let index = self.steps.len() + 1;
        self.memo.insert(statement.clone(), index);
        self.steps.push(TraceStep {
            index,
            statement,
            rule,
            premises,
            sep_conditions,
        });
        Ok(index)
    }

    fn dependence(x: VarSet, y: VarSet, z: VarSet) -> Statement {
        Statement::dependence(x, y, z).expect("derivation keeps sets disjoint")
    }

    fn pair_statement(a: NodeId, b: NodeId, z: &VarSet) -> Statement {
        Self::dependence(VarSet::singleton(a), VarSet::singleton(b), z.clone())
    }

    /// Derives `a dep b | z`, assuming (and re-checking) that the criterion
    /// certifies it.
    fn derive_pair(&mut self, a: NodeId, b: NodeId, z: &VarSet) -> Result<usize, DeriveError> {
        let goal = Self::pair_statement(a, b, z);
        if let Some(&i) = self.memo.get(&goal) {
            return Ok(i);
        }
        if !dep_pair(self.pt, a, b, z)? {
            return Err(DeriveError::Internal {
                detail: format!(
                    "criterion rejects subquery `{} dep {} | ...`",
                    self.pt.name(a),
                    self.pt.name(b)
                ),
            });
        }
        let path = self
            .pt
            .unique_path(a, b)
            .expect("validated")
            .expect("certified pairs are connected");

        // Unconditioned head-to-head nodes are discharged first, through
        // their unique maximal conditioned descendant.
        let unconditioned = path
            .head_to_head_positions()
            .find(|&i| !z.contains(path.nodes()[i]));
        if let Some(cpos) = unconditioned {
            let c = path.nodes()[cpos];
            let mcd = maximal_conditioned_descendants(self.pt, c, z)
                .expect("path nodes are graph nodes");
            if mcd.len() != 1 {
                return Err(DeriveError::Internal {
                    detail: format!(
                        "head-to-head `{}` lacks a unique maximal conditioned descendant",
                        self.pt.name(c)
                    ),
                });
            }
            let d = mcd.iter().next().unwrap();
            return self.transit_through(a, b, z, d);
        }

        if path.edge_count() == 1 {
            return self.derive_adjacent(a, b, z);
        }

        // All head-to-head nodes are conditioned; recurse on the interior
        // node closest to the path's center.
        let edges = path.edge_count();
        let cpos = (1..edges)
            .min_by_key(|&i| (2 * i).abs_diff(edges))
            .expect("paths of two or more edges have an interior");
        let c = path.nodes()[cpos];
        if path.is_head_to_head(cpos) {
            self.transit_through(a, b, z, c)
        } else {
            let ia = self.derive_pair(a, c, z)?;
            let ib = self.derive_pair(b, c, z)?;
            let cond = SepCondition::new(VarSet::singleton(a), VarSet::singleton(b), z.with(c));
            self.emit(
                Self::pair_statement(a, b, z),
                RuleId::WeakTransitivity2,
                vec![ia, ib],
                vec![cond],
            )
        }
    }

    /// Common tail of the two recursive cases: connect `a` and `b` through a
    /// conditioned node `v` (a conditioned head-to-head node on the path, or
    /// the unique maximal conditioned descendant of an unconditioned one).
    /// Weak transitivity joins the halves with `v`'s downstream context
    /// removed; decomposition and contraction2 then restore it.
    fn transit_through(
        &mut self,
        a: NodeId,
        b: NodeId,
        z: &VarSet,
        v: NodeId,
    ) -> Result<usize, DeriveError> {
        debug_assert!(z.contains(v));
        let downstream = self.downstream_context(v, z);
        let reduced = z.difference(&downstream).without(v);
        let ia = self.derive_pair(a, v, &reduced)?;
        let ib = self.derive_pair(b, v, &reduced)?;
        let restored = z.difference(&downstream);
        let joined = self.emit(
            Self::pair_statement(a, b, &restored),
            RuleId::WeakTransitivity1,
            vec![ia, ib],
            vec![SepCondition::new(
                VarSet::singleton(a),
                VarSet::singleton(b),
                reduced,
            )],
        )?;
        if downstream.is_empty() {
            return Ok(joined);
        }
        let widened = self.emit(
            Self::dependence(
                VarSet::singleton(a),
                VarSet::singleton(b).union(&downstream),
                restored.clone(),
            ),
            RuleId::Decomposition,
            vec![joined],
            vec![],
        )?;
        self.emit(
            Self::pair_statement(a, b, z),
            RuleId::Contraction2,
            vec![widened],
            vec![SepCondition::new(
                VarSet::singleton(a),
                downstream,
                restored,
            )],
        )
    }

    /// Conditioned nodes whose unique path from `v` starts with a child
    /// edge, i.e. the part of `z` hanging below `v`.
    fn downstream_context(&self, v: NodeId, z: &VarSet) -> VarSet {
        z.iter()
            .filter(|&zn| {
                zn != v
                    && self
                        .pt
                        .unique_path(v, zn)
                        .expect("distinct known nodes")
                        .is_some_and(|p| self.pt.has_edge(v, p.nodes()[1]))
            })
            .collect()
    }

    /// Base case: the witness pair is an edge.
    fn derive_adjacent(&mut self, a: NodeId, b: NodeId, z: &VarSet) -> Result<usize, DeriveError> {
        let (pa, ch) = if self.pt.has_edge(a, b) { (a, b) } else { (b, a) };
        debug_assert!(self.pt.has_edge(pa, ch));

        let ch_singleton = VarSet::singleton(ch);
        let pa_singleton = VarSet::singleton(pa);
        let parents: VarSet = self.pt.parents(ch).iter().copied().collect();
        let preceding: VarSet = self
            .order
            .iter()
            .take(self.positions[ch.index()])
            .copied()
            .collect();
        let extra = preceding.difference(&parents);
        let other_parents = parents.without(pa);

        // Base statement for the child node and this parent.
        let mut cur = self.emit(
            Self::dependence(extra.with(pa), ch_singleton.clone(), other_parents.clone()),
            RuleId::Base,
            vec![],
            vec![],
        )?;

        // Shrink the left side to the parent alone.
        if !extra.is_empty() {
            cur = self.emit(
                Self::dependence(pa_singleton.clone(), ch_singleton.clone(), other_parents.clone()),
                RuleId::Contraction1,
                vec![cur],
                vec![SepCondition::new(extra, ch_singleton.clone(), parents.clone())],
            )?;
        }

        // Clear the remaining parents out of the conditioning set.
        if !other_parents.is_empty() {
            cur = self.emit(
                Self::dependence(
                    pa_singleton.clone(),
                    ch_singleton.union(&other_parents),
                    VarSet::empty(),
                ),
                RuleId::WeakUnion,
                vec![cur],
                vec![],
            )?;
            cur = self.emit(
                Self::dependence(pa_singleton.clone(), ch_singleton.clone(), VarSet::empty()),
                RuleId::Composition,
                vec![cur],
                vec![SepCondition::new(
                    pa_singleton.clone(),
                    other_parents,
                    VarSet::empty(),
                )],
            )?;
        }

        // Rebuild the queried conditioning set from its partition around the
        // edge. Each phase introduces one cell and moves it into the
        // conditioning set with a separation side condition.
        let part = partition_context(self.pt, pa, ch, z)?;
        let mut conditioning = VarSet::empty();

        let around_a = part.upstream_a.union(&part.downstream_a);
        if !around_a.is_empty() {
            cur = self.emit(
                Self::dependence(
                    pa_singleton.union(&around_a),
                    ch_singleton.clone(),
                    VarSet::empty(),
                ),
                RuleId::Decomposition,
                vec![cur],
                vec![],
            )?;
            conditioning = around_a.clone();
            cur = self.emit(
                Self::dependence(pa_singleton.clone(), ch_singleton.clone(), conditioning.clone()),
                RuleId::Intersection,
                vec![cur],
                vec![SepCondition::new(
                    around_a,
                    ch_singleton.clone(),
                    pa_singleton.clone(),
                )],
            )?;
        }

        for (cell, through_child) in [
            (part.upstream_b, false),
            (part.downstream_b, true),
            (part.rest, false),
        ] {
            if cell.is_empty() {
                continue;
            }
            cur = self.emit(
                Self::dependence(
                    pa_singleton.clone(),
                    ch_singleton.union(&cell),
                    conditioning.clone(),
                ),
                RuleId::Decomposition,
                vec![cur],
                vec![],
            )?;
            let widened = conditioning.union(&cell);
            if through_child {
                // The cell hangs below the child, so the separation needs
                // the child itself in the conditioning set.
                cur = self.emit(
                    Self::dependence(pa_singleton.clone(), ch_singleton.clone(), widened.clone()),
                    RuleId::Intersection,
                    vec![cur],
                    vec![SepCondition::new(
                        pa_singleton.clone(),
                        cell,
                        conditioning.union(&ch_singleton),
                    )],
                )?;
            } else {
                cur = self.emit(
                    Self::dependence(pa_singleton.clone(), ch_singleton.clone(), widened.clone()),
                    RuleId::Contraction2,
                    vec![cur],
                    vec![SepCondition::new(pa_singleton.clone(), cell, conditioning)],
                )?;
            }
            conditioning = widened;
        }
        debug_assert_eq!(&conditioning, z);
        Ok(cur)
    }
}

/// Why a trace failed verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    GraphMismatch,
    EmptyTrace,
    BadIndexing { step: usize },
    NotDependence { step: usize },
    NotInDependenceBase { step: usize },
    BadRuleInstance { step: usize, rule: RuleId },
    SepConditionFails { step: usize },
    GoalMismatch,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::GraphMismatch => {
                write!(f, "trace was built over a different node universe")
            }
            VerifyFailure::EmptyTrace => write!(f, "trace has no steps"),
            VerifyFailure::BadIndexing { step } => {
                write!(f, "step {step}: bad index or premise reference")
            }
            VerifyFailure::NotDependence { step } => {
                write!(f, "step {step}: trace statements must be dependencies")
            }
            VerifyFailure::NotInDependenceBase { step } => {
                write!(f, "step {step}: statement is not in the dependence base")
            }
            VerifyFailure::BadRuleInstance { step, rule } => {
                write!(f, "step {step}: not a valid `{rule}` instance")
            }
            VerifyFailure::SepConditionFails { step } => {
                write!(f, "step {step}: a separation side condition does not hold")
            }
            VerifyFailure::GoalMismatch => {
                write!(f, "final statement does not match the stated goal")
            }
        }
    }
}

impl core::error::Error for VerifyFailure {}

/// Re-checks a trace from scratch: base steps against the dependence base
/// (under the canonical topological order), every rule step as a syntactic
/// instance of its rule, every separation side condition against the graph,
/// and the final statement against the goal. Nothing from the builder is
/// trusted.
pub fn verify_trace(pt: &Polytree, trace: &Trace) -> Result<(), VerifyFailure> {
    if trace.nodes != pt.names() {
        return Err(VerifyFailure::GraphMismatch);
    }
    if trace.steps.is_empty() {
        return Err(VerifyFailure::EmptyTrace);
    }
    let base = dependence_base(pt, &pt.topological_order())
        .expect("canonical order is topological");

    for (pos, step) in trace.steps.iter().enumerate() {
        let index = pos + 1;
        if step.index != index {
            return Err(VerifyFailure::BadIndexing { step: index });
        }
        if step.statement.polarity() != Polarity::Dependence {
            return Err(VerifyFailure::NotDependence { step: index });
        }
        if step
            .premises
            .iter()
            .any(|&p| p == 0 || p >= index)
        {
            return Err(VerifyFailure::BadIndexing { step: index });
        }
        for cond in &step.sep_conditions {
            let holds = sep_dag(pt.as_dag(), cond.x(), cond.y(), cond.z())
                .map_err(|_| VerifyFailure::SepConditionFails { step: index })?;
            if !holds {
                return Err(VerifyFailure::SepConditionFails { step: index });
            }
        }
        if step.rule == RuleId::Base {
            if !step.premises.is_empty() || !step.sep_conditions.is_empty() {
                return Err(VerifyFailure::BadRuleInstance {
                    step: index,
                    rule: RuleId::Base,
                });
            }
            if !base.contains(&step.statement) {
                return Err(VerifyFailure::NotInDependenceBase { step: index });
            }
            continue;
        }
        let premises: Vec<&Statement> = step
            .premises
            .iter()
            .map(|&p| &trace.steps[p - 1].statement)
            .collect();
        if !rule_instance_ok(step.rule, &premises, &step.sep_conditions, &step.statement) {
            return Err(VerifyFailure::BadRuleInstance {
                step: index,
                rule: step.rule,
            });
        }
    }

    if trace.steps.last().unwrap().statement != trace.goal {
        return Err(VerifyFailure::GoalMismatch);
    }
    Ok(())
}

/// Syntactic instance check for one rule application. Premises and the
/// conclusion are canonical, so side assignments are tried in both
/// orientations. The introduced set of every rule must be non-empty (the
/// builder never emits no-op steps).
fn rule_instance_ok(
    rule: RuleId,
    premises: &[&Statement],
    seps: &[SepCondition],
    conclusion: &Statement,
) -> bool {
    let sides = |s: &Statement| {
        let (x, y) = s.sides();
        [(x.clone(), y.clone()), (y.clone(), x.clone())]
    };
    match rule {
        RuleId::Base => false,
        RuleId::Symmetry => {
            premises.len() == 1 && seps.is_empty() && premises[0] == conclusion
        }
        RuleId::Decomposition => {
            if premises.len() != 1 || !seps.is_empty() {
                return false;
            }
            let p = premises[0];
            if conclusion.z() != p.z() {
                return false;
            }
            sides(p).into_iter().any(|(x, y)| {
                sides(conclusion).into_iter().any(|(cx, cy)| {
                    cx == x && y.is_subset(&cy) && cy.len() > y.len()
                })
            })
        }
        RuleId::WeakUnion => {
            if premises.len() != 1 || !seps.is_empty() {
                return false;
            }
            let p = premises[0];
            if !conclusion.z().is_subset(p.z()) {
                return false;
            }
            let moved = p.z().difference(conclusion.z());
            if moved.is_empty() {
                return false;
            }
            sides(p).into_iter().any(|(x, y)| {
                sides(conclusion)
                    .into_iter()
                    .any(|(cx, cy)| cx == x && cy == y.union(&moved))
            })
        }
        RuleId::Contraction1 => one_sep_split(premises, seps, conclusion, |x, y, w, zp| {
            (
                (x.clone(), w.clone(), zp.clone()),
                SepCondition::new(x.clone(), y.clone(), zp.union(w)),
            )
        }),
        RuleId::Contraction2 => one_sep_split(premises, seps, conclusion, |x, y, w, zp| {
            (
                (x.clone(), y.clone(), zp.union(w)),
                SepCondition::new(x.clone(), w.clone(), zp.clone()),
            )
        }),
        RuleId::Intersection => one_sep_split(premises, seps, conclusion, |x, y, w, zp| {
            (
                (x.clone(), w.clone(), zp.union(y)),
                SepCondition::new(x.clone(), y.clone(), zp.union(w)),
            )
        }),
        RuleId::Composition => one_sep_split(premises, seps, conclusion, |x, y, w, zp| {
            (
                (x.clone(), y.clone(), zp.clone()),
                SepCondition::new(x.clone(), w.clone(), zp.clone()),
            )
        }),
        RuleId::WeakTransitivity1 => weak_transitivity_ok(premises, seps, conclusion, false),
        RuleId::WeakTransitivity2 => weak_transitivity_ok(premises, seps, conclusion, true),
    }
}

/// Shared check for the four rules of shape
/// `X dep YW | Z  and  sep(...)  =>  ...`: every split of the premise's
/// second side into non-empty `Y` and `W` is tried, and `shape` maps the
/// assignment to the expected conclusion and side condition.
fn one_sep_split<F>(
    premises: &[&Statement],
    seps: &[SepCondition],
    conclusion: &Statement,
    shape: F,
) -> bool
where
    F: Fn(&VarSet, &VarSet, &VarSet, &VarSet) -> ((VarSet, VarSet, VarSet), SepCondition),
{
    if premises.len() != 1 || seps.len() != 1 {
        return false;
    }
    let p = premises[0];
    let (s1, s2) = p.sides();
    for (x, yw) in [(s1, s2), (s2, s1)] {
        if yw.len() < 2 {
            continue;
        }
        for w in yw.subsets() {
            let y = yw.difference(&w);
            if w.is_empty() || y.is_empty() {
                continue;
            }
            let ((cx, cy, cz), expected_sep) = shape(x, &y, &w, p.z());
            let expected = Statement::dependence(cx, cy, cz)
                .expect("split preserves disjointness");
            if &expected == conclusion && expected_sep == seps[0] {
                return true;
            }
        }
    }
    false
}

fn weak_transitivity_ok(
    premises: &[&Statement],
    seps: &[SepCondition],
    conclusion: &Statement,
    conditioned_on_v: bool,
) -> bool {
    if premises.len() != 2 || seps.len() != 1 {
        return false;
    }
    let sides = |s: &Statement| {
        let (x, y) = s.sides();
        [(x.clone(), y.clone()), (y.clone(), x.clone())]
    };
    for (p, q) in [(premises[0], premises[1]), (premises[1], premises[0])] {
        if p.z() != q.z() {
            continue;
        }
        let zp = p.z();
        for (x, v_set) in sides(p) {
            if v_set.len() != 1 {
                continue;
            }
            let v = v_set.iter().next().unwrap();
            for (v2_set, y) in sides(q) {
                if v2_set != v_set || !x.is_disjoint(&y) {
                    continue;
                }
                let (conc_z, sep_z) = if conditioned_on_v {
                    (zp.clone(), zp.with(v))
                } else {
                    (zp.with(v), zp.clone())
                };
                let expected = Statement::dependence(x.clone(), y.clone(), conc_z)
                    .expect("premise sets are disjoint");
                let expected_sep = SepCondition::new(x.clone(), y.clone(), sep_z);
                if &expected == conclusion && expected_sep == seps[0] {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, set};

    #[test]
    fn partition_around_chain_edge() {
        let p2 = fixtures::p2();
        let (b, c) = (p2.node("B").unwrap(), p2.node("C").unwrap());
        let part = partition_context(&p2, b, c, &set(&p2, &["A"])).unwrap();
        assert_eq!(part.upstream_a, set(&p2, &["A"]));
        assert!(part.downstream_a.is_empty());
        assert!(part.upstream_b.is_empty());
        assert!(part.downstream_b.is_empty());
        assert!(part.rest.is_empty());
    }

    #[test]
    fn partition_around_collider_edge() {
        let p1 = fixtures::p1();
        let (a, c) = (p1.node("A").unwrap(), p1.node("C").unwrap());
        let part = partition_context(&p1, a, c, &set(&p1, &["B", "D", "E"])).unwrap();
        assert_eq!(part.upstream_b, set(&p1, &["B"]));
        assert_eq!(part.downstream_b, set(&p1, &["D", "E"]));
        assert!(part.upstream_a.is_empty());
        assert!(part.downstream_a.is_empty());
        assert!(part.rest.is_empty());
    }

    #[test]
    fn partition_with_empty_conditioning() {
        let p1 = fixtures::p1();
        let (c, d) = (p1.node("C").unwrap(), p1.node("D").unwrap());
        let part = partition_context(&p1, c, d, &VarSet::empty()).unwrap();
        assert!(part.upstream_a.is_empty());
        assert!(part.downstream_a.is_empty());
        assert!(part.upstream_b.is_empty());
        assert!(part.downstream_b.is_empty());
        assert!(part.rest.is_empty());
    }

    #[test]
    fn partition_requires_edge() {
        let p2 = fixtures::p2();
        let (a, c) = (p2.node("A").unwrap(), p2.node("C").unwrap());
        assert!(matches!(
            partition_context(&p2, a, c, &VarSet::empty()),
            Err(DeriveError::NotAnEdge { .. })
        ));
    }

    #[test]
    fn adjacent_pair_collapses_to_base_fact() {
        let p2 = fixtures::p2();
        let trace = derive(&p2, &set(&p2, &["A"]), &set(&p2, &["B"]), &VarSet::empty()).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].rule, RuleId::Base);
        assert_eq!(trace.steps[0].statement, trace.goal);
        verify_trace(&p2, &trace).unwrap();
    }

    #[test]
    fn chain_endpoints_use_weak_transitivity2() {
        let p2 = fixtures::p2();
        let trace = derive(&p2, &set(&p2, &["A"]), &set(&p2, &["C"]), &VarSet::empty()).unwrap();
        let last = trace.steps.last().unwrap();
        assert_eq!(last.rule, RuleId::WeakTransitivity2);
        assert_eq!(last.premises.len(), 2);
        assert_eq!(
            last.sep_conditions,
            vec![SepCondition::new(
                set(&p2, &["A"]),
                set(&p2, &["C"]),
                set(&p2, &["B"])
            )]
        );
        verify_trace(&p2, &trace).unwrap();
    }

    #[test]
    fn descendant_witness_uses_weak_transitivity1() {
        let p1 = fixtures::p1();
        let trace = derive(&p1, &set(&p1, &["A"]), &set(&p1, &["B"]), &set(&p1, &["D"])).unwrap();
        assert!(trace
            .steps
            .iter()
            .any(|s| s.rule == RuleId::WeakTransitivity1));
        assert_eq!(trace.steps.last().unwrap().statement, trace.goal);
        verify_trace(&p1, &trace).unwrap();
    }

    #[test]
    fn masked_descendant_restores_context() {
        let p1x = fixtures::p1_extended();
        let trace = derive(
            &p1x,
            &set(&p1x, &["A"]),
            &set(&p1x, &["B"]),
            &set(&p1x, &["D", "F"]),
        )
        .unwrap();
        assert!(trace.steps.iter().any(|s| s.rule == RuleId::Contraction2));
        verify_trace(&p1x, &trace).unwrap();
    }

    #[test]
    fn derive_rejects_separated_query() {
        let p2 = fixtures::p2();
        assert!(matches!(
            derive(&p2, &set(&p2, &["A"]), &set(&p2, &["C"]), &set(&p2, &["B"])),
            Err(DeriveError::DepAbsent)
        ));
    }

    #[test]
    fn tampered_sep_condition_is_caught() {
        let p2 = fixtures::p2();
        let mut trace =
            derive(&p2, &set(&p2, &["A"]), &set(&p2, &["C"]), &VarSet::empty()).unwrap();
        let last = trace.steps.last_mut().unwrap();
        // Swap the separating middle node for a non-blocking set.
        last.sep_conditions = vec![SepCondition::new(
            set(&p2, &["A"]),
            set(&p2, &["C"]),
            VarSet::empty(),
        )];
        assert!(matches!(
            verify_trace(&p2, &trace),
            Err(VerifyFailure::SepConditionFails { .. })
        ));
    }

    #[test]
    fn relabeled_rule_is_caught() {
        let p2 = fixtures::p2();
        let mut trace =
            derive(&p2, &set(&p2, &["A"]), &set(&p2, &["C"]), &VarSet::empty()).unwrap();
        let contraction = trace
            .steps
            .iter_mut()
            .find(|s| s.rule == RuleId::Contraction1)
            .unwrap();
        contraction.rule = RuleId::Composition;
        assert!(matches!(
            verify_trace(&p2, &trace),
            Err(VerifyFailure::BadRuleInstance { .. })
        ));
    }

    #[test]
    fn tampered_base_step_is_caught() {
        let p2 = fixtures::p2();
        let mut trace =
            derive(&p2, &set(&p2, &["A"]), &set(&p2, &["B"]), &VarSet::empty()).unwrap();
        trace.steps[0].statement =
            Statement::dependence(set(&p2, &["A"]), set(&p2, &["C"]), VarSet::empty()).unwrap();
        let failure = verify_trace(&p2, &trace).unwrap_err();
        assert_eq!(failure, VerifyFailure::NotInDependenceBase { step: 1 });
    }

    #[test]
    fn graph_mismatch_is_caught() {
        let p2 = fixtures::p2();
        let trace = derive(&p2, &set(&p2, &["A"]), &set(&p2, &["B"]), &VarSet::empty()).unwrap();
        let p1 = fixtures::p1();
        assert_eq!(verify_trace(&p1, &trace), Err(VerifyFailure::GraphMismatch));
    }
}
