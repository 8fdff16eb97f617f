//! Reading dependencies, not just independencies, from polytree-shaped
//! Bayesian networks.
//!
//! d-separation certifies which conditional independencies a DAG encodes. On
//! polytrees, a complementary graphical test certifies *dependencies*: a pair
//! is dependent given a conditioning set when its unique connecting path is
//! open and every collider on the path is either conditioned on or has
//! exactly one maximal conditioned descendant. This crate implements:
//!
//! - immutable DAG/polytree graphs with path and ordering utilities
//!   ([`graph`]),
//! - d-separation for DAGs and the single-path variant for polytrees
//!   ([`sep`]),
//! - the dependence criterion with witness extraction ([`dep`]),
//! - the dependence base and a forward-chaining closure engine over the
//!   graphoid rules extended with composition and weak transitivity
//!   ([`engine`]),
//! - checkable derivation traces from the dependence base, with an
//!   independent verifier ([`derivation`]),
//! - an exact linear-Gaussian oracle (covariances and partial correlations)
//!   for empirical validation ([`gaussian`]).
//!
//! The crate is `no_std`-compatible (`alloc` required); enable the `libm`
//! feature for float math without `std`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod dep;
pub mod derivation;
pub mod engine;
pub mod gaussian;
pub mod graph;
pub mod sep;
pub mod statement;

#[cfg(test)]
pub(crate) mod fixtures;

pub use dep::{dep, dep_pair, maximal_conditioned_descendants, ColliderSupport, DepWitness};
pub use derivation::{
    derive, partition_context, verify_trace, ContextPartition, DeriveError, SepCondition, Trace,
    TraceStep, VerifyFailure,
};
pub use engine::{
    apply_rule, canonical_triples, cwt_closure, dependence_base, EngineError, GraphSepOracle,
    RuleId, SepOracle, MAX_CLOSURE_NODES,
};
pub use gaussian::{
    covariance, faithfulness_report, partial_correlation, random_model, random_model_with,
    CovarianceMatrix, FaithfulnessReport, FaithfulnessViolation, GaussianError,
    GaussianPolytreeModel, TripleClass,
};
pub use graph::{
    random_directed_tree, random_polytree, Dag, GraphError, NodeId, Path, Polytree, VarSet,
};
pub use sep::{path_blocked, sep_dag, sep_polytree, QueryError};
pub use statement::{Polarity, Statement};
