//! Exact linear-Gaussian instantiation of a polytree: random structural
//! models, their implied covariance matrices, partial correlations, and a
//! faithfulness report comparing graphical verdicts with the numbers.
//!
//! Every node is a weighted sum of its parents plus independent zero-mean
//! noise. The covariance is computed by exact recursion rather than
//! sampling, so "zero partial correlation" is a tolerance check, not a
//! statistical test: separation forces the partial correlation to vanish in
//! any such model, while certified dependencies stay bounded away from zero
//! for all but a measure-zero set of parameter choices (kept at arm's length
//! by the weight floor).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dep::dep_pair;
use crate::graph::{NodeId, Polytree, VarSet};
use crate::sep::{sep_polytree, QueryError};

/// Default magnitude floor for edge weights; keeps random models numerically
/// far from the unfaithful parameter set.
pub const DEFAULT_WEIGHT_FLOOR: f64 = 0.3;
pub const DEFAULT_WEIGHT_CEIL: f64 = 1.0;

/// Cap for the exhaustive triple enumeration in [`faithfulness_report`].
pub const MAX_REPORT_NODES: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum GaussianError {
    InvalidWeightRange { floor: f64, ceil: f64 },
    Query(QueryError),
    /// The covariance submatrix failed to factor; cannot happen for a
    /// positive-definite covariance and indicates an internal error.
    NotPositiveDefinite,
    TooManyNodes { nodes: usize, cap: usize },
}

impl fmt::Display for GaussianError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaussianError::InvalidWeightRange { floor, ceil } => {
                write!(f, "invalid weight range [{floor}, {ceil}]; need 0 < floor <= ceil")
            }
            GaussianError::Query(e) => write!(f, "{e}"),
            GaussianError::NotPositiveDefinite => {
                write!(f, "covariance submatrix is not positive definite")
            }
            GaussianError::TooManyNodes { nodes, cap } => {
                write!(f, "report over {nodes} nodes exceeds the cap of {cap}")
            }
        }
    }
}

impl core::error::Error for GaussianError {}

impl From<QueryError> for GaussianError {
    fn from(e: QueryError) -> Self {
        GaussianError::Query(e)
    }
}

/// A linear structural model on a polytree: one coefficient per edge, one
/// noise variance per node.
#[derive(Clone, Debug)]
pub struct GaussianPolytreeModel {
    graph: Polytree,
    edge_weight: BTreeMap<(NodeId, NodeId), f64>,
    noise_variance: Vec<f64>,
}

impl GaussianPolytreeModel {
    pub fn graph(&self) -> &Polytree {
        &self.graph
    }

    pub fn weight(&self, parent: NodeId, child: NodeId) -> Option<f64> {
        self.edge_weight.get(&(parent, child)).copied()
    }

    pub fn noise_variance(&self, v: NodeId) -> f64 {
        self.noise_variance[v.index()]
    }
}

/// Random model with the default weight range (magnitudes in `[0.3, 1.0]`,
/// random sign) and noise variances in `[0.5, 1.5]`. Deterministic per seed.
pub fn random_model(pt: &Polytree, seed: u64) -> GaussianPolytreeModel {
    random_model_with(pt, seed, DEFAULT_WEIGHT_FLOOR, DEFAULT_WEIGHT_CEIL)
        .expect("default range is valid")
}

/// Random model with weight magnitudes drawn uniformly from
/// `[floor, ceil]` and a fair random sign.
pub fn random_model_with(
    pt: &Polytree,
    seed: u64,
    floor: f64,
    ceil: f64,
) -> Result<GaussianPolytreeModel, GaussianError> {
    if !(floor > 0.0 && ceil >= floor) {
        return Err(GaussianError::InvalidWeightRange { floor, ceil });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edge_weight = BTreeMap::new();
    for &(p, c) in pt.edges() {
        let magnitude = rng.random_range(floor..=ceil);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        edge_weight.insert((p, c), sign * magnitude);
    }
    let noise_variance = (0..pt.n()).map(|_| rng.random_range(0.5..=1.5)).collect();
    Ok(GaussianPolytreeModel {
        graph: pt.clone(),
        edge_weight,
        noise_variance,
    })
}

/// Symmetric covariance matrix indexed by node id.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl CovarianceMatrix {
    fn zeros(n: usize) -> Self {
        CovarianceMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: NodeId, j: NodeId) -> f64 {
        self.data[i.index() * self.n + j.index()]
    }

    fn set(&mut self, i: NodeId, j: NodeId, value: f64) {
        self.data[i.index() * self.n + j.index()] = value;
        self.data[j.index() * self.n + i.index()] = value;
    }

    /// Positive definiteness via Cholesky factorization of the full matrix.
    pub fn is_positive_definite(&self) -> bool {
        cholesky(&self.data, self.n).is_some()
    }
}

/// Exact covariance of the structural system, built in topological order:
/// the covariance of a node with any earlier node distributes over its
/// parents, and its variance adds the noise term.
pub fn covariance(model: &GaussianPolytreeModel) -> CovarianceMatrix {
    let g = model.graph.as_dag();
    let mut cov = CovarianceMatrix::zeros(g.n());
    let mut placed: Vec<NodeId> = Vec::with_capacity(g.n());
    for v in g.topological_order() {
        let parents = g.parents(v);
        for &p in &placed {
            let value: f64 = parents
                .iter()
                .map(|&u| model.edge_weight[&(u, v)] * cov.get(u, p))
                .sum();
            cov.set(v, p, value);
        }
        let mut variance = model.noise_variance(v);
        for &u1 in parents {
            for &u2 in parents {
                variance +=
                    model.edge_weight[&(u1, v)] * model.edge_weight[&(u2, v)] * cov.get(u1, u2);
            }
        }
        cov.set(v, v, variance);
        placed.push(v);
    }
    cov
}

/// Partial correlation of `a` and `b` given `z`: the negated, normalized
/// off-diagonal entry of the inverted covariance submatrix over `{a, b} u z`.
pub fn partial_correlation(
    cov: &CovarianceMatrix,
    a: NodeId,
    b: NodeId,
    z: &VarSet,
) -> Result<f64, GaussianError> {
    if a == b || z.contains(a) || z.contains(b) {
        return Err(GaussianError::Query(QueryError::Overlap {
            node: alloc::format!("#{}", if z.contains(b) { b } else { a }.index()),
        }));
    }
    if a.index() >= cov.n() || b.index() >= cov.n() || z.iter().any(|v| v.index() >= cov.n()) {
        return Err(GaussianError::Query(QueryError::UnknownNode {
            node: String::from("out of range"),
        }));
    }
    // The value is symmetric in (a, b); fix the submatrix layout so the
    // computed float is too.
    let (a, b) = if b < a { (b, a) } else { (a, b) };
    let mut indices = vec![a, b];
    indices.extend(z.iter());
    let k = indices.len();
    let mut sub = vec![0.0; k * k];
    for (i, &vi) in indices.iter().enumerate() {
        for (j, &vj) in indices.iter().enumerate() {
            sub[i * k + j] = cov.get(vi, vj);
        }
    }
    let chol = cholesky(&sub, k).ok_or(GaussianError::NotPositiveDefinite)?;
    // Columns a and b of the inverse, via two triangular solve pairs.
    let col_a = solve_with_cholesky(&chol, k, 0);
    let col_b = solve_with_cholesky(&chol, k, 1);
    let (omega_aa, omega_ab, omega_bb) = (col_a[0], col_a[1], col_b[1]);
    Ok(-omega_ab / sqrt(omega_aa * omega_bb))
}

/// Lower-triangular Cholesky factor, or `None` when the matrix is not
/// positive definite.
fn cholesky(matrix: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = matrix[i * n + j];
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[i * n + i] = sqrt(sum);
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    Some(l)
}

/// Solves `L L^T x = e_col` by forward and back substitution.
fn solve_with_cholesky(l: &[f64], n: usize, col: usize) -> Vec<f64> {
    let mut y = vec![0.0; n];
    for i in 0..n {
        let rhs = if i == col { 1.0 } else { 0.0 };
        let mut sum = rhs;
        for k in 0..i {
            sum -= l[i * n + k] * y[k];
        }
        y[i] = sum / l[i * n + i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in (i + 1)..n {
            sum -= l[k * n + i] * x[k];
        }
        x[i] = sum / l[i * n + i];
    }
    x
}

#[cfg(feature = "std")]
#[inline]
fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
#[inline]
fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("polydep-core needs the `std` or `libm` feature for float math");

#[cfg(feature = "std")]
#[inline]
fn abs(x: f64) -> f64 {
    x.abs()
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
#[inline]
fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// How the graphical side classified a triple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TripleClass {
    Separated,
    Dependent,
    Neither,
}

/// A triple whose partial correlation contradicts its graphical class at the
/// report's tolerances.
#[derive(Clone, Debug, PartialEq)]
pub struct FaithfulnessViolation {
    pub class: TripleClass,
    pub a: NodeId,
    pub b: NodeId,
    pub z: VarSet,
    pub correlation: f64,
}

/// Summary of one model checked against the graph over every pair and
/// conditioning set: separated triples must have (numerically) zero partial
/// correlation, certified-dependent triples must stay above the dependence
/// tolerance, and unclassified triples are only counted.
#[derive(Clone, Debug, PartialEq)]
pub struct FaithfulnessReport {
    pub zero_tolerance: f64,
    pub dep_tolerance: f64,
    pub sep_triples: usize,
    pub dep_triples: usize,
    pub neither_triples: usize,
    pub max_abs_corr_sep: Option<f64>,
    pub min_abs_corr_dep: Option<f64>,
    pub violations: Vec<FaithfulnessViolation>,
}

/// Classifies every `(a, b, Z)` triple of the model's graph and compares the
/// exact partial correlations against the graphical verdicts.
pub fn faithfulness_report(
    model: &GaussianPolytreeModel,
    zero_tolerance: f64,
    dep_tolerance: f64,
) -> Result<FaithfulnessReport, GaussianError> {
    let pt = &model.graph;
    let n = pt.n();
    if n > MAX_REPORT_NODES {
        return Err(GaussianError::TooManyNodes {
            nodes: n,
            cap: MAX_REPORT_NODES,
        });
    }
    let cov = covariance(model);
    let mut report = FaithfulnessReport {
        zero_tolerance,
        dep_tolerance,
        sep_triples: 0,
        dep_triples: 0,
        neither_triples: 0,
        max_abs_corr_sep: None,
        min_abs_corr_dep: None,
        violations: Vec::new(),
    };
    let ids: Vec<NodeId> = pt.node_ids().collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            let rest: VarSet = ids
                .iter()
                .copied()
                .filter(|&v| v != a && v != b)
                .collect();
            for z in rest.subsets() {
                let rho = partial_correlation(&cov, a, b, &z)?;
                let magnitude = abs(rho);
                let class = if sep_polytree(pt, a, b, &z)? {
                    TripleClass::Separated
                } else if dep_pair(pt, a, b, &z)? {
                    TripleClass::Dependent
                } else {
                    TripleClass::Neither
                };
                match class {
                    TripleClass::Separated => {
                        report.sep_triples += 1;
                        report.max_abs_corr_sep = Some(
                            report
                                .max_abs_corr_sep
                                .map_or(magnitude, |m| if magnitude > m { magnitude } else { m }),
                        );
                        if magnitude >= zero_tolerance {
                            report.violations.push(FaithfulnessViolation {
                                class,
                                a,
                                b,
                                z,
                                correlation: rho,
                            });
                        }
                    }
                    TripleClass::Dependent => {
                        report.dep_triples += 1;
                        report.min_abs_corr_dep = Some(
                            report
                                .min_abs_corr_dep
                                .map_or(magnitude, |m| if magnitude < m { magnitude } else { m }),
                        );
                        if magnitude <= dep_tolerance {
                            report.violations.push(FaithfulnessViolation {
                                class,
                                a,
                                b,
                                z,
                                correlation: rho,
                            });
                        }
                    }
                    TripleClass::Neither => report.neither_triples += 1,
                }
            }
        }
    }
    Ok(report)
}
