//! Command implementations. Each runner returns the stdout payload and the
//! process exit code: 0 = holds/success, 1 = does-not-hold, 2 = error
//! (errors travel as `CliError` and are mapped to stderr + 2 by `main`).

use std::collections::BTreeSet;

use polydep_core::{
    cwt_closure, dep, dependence_base, derive, faithfulness_report, random_model,
    random_polytree, sep_dag, verify_trace, Dag, DeriveError, EngineError, GaussianError,
    GraphError, Polytree, QueryError, Statement, VarSet,
};
use thiserror::Error;

use crate::format::{closure_text, parse_trace, trace_text};
use crate::graph_file::{graph_to_text, parse_graph};
use crate::json::{
    self, CheckJson, GaussianValidateJson, GaussianViolationJson, SelftestJson, VerifyJson,
};
use crate::query::{parse_query, Query, QueryKind};
use crate::selftest::closure_equivalence;
use crate::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    GraphFile {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error("query: {0}")]
    Query(#[source] ParseError),
    #[error("trace: {0}")]
    Trace(String),
    #[error("unknown node `{0}`")]
    UnknownName(String),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Statement(#[from] QueryError),
    #[error("{0}")]
    Engine(#[from] EngineError),
    #[error("{0}")]
    Gaussian(#[from] GaussianError),
    #[error("{0}")]
    Derive(String),
}

pub struct CommandOutput {
    pub stdout: String,
    pub code: u8,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput { stdout, code: 0 }
    }

    fn does_not_hold(stdout: String) -> Self {
        CommandOutput { stdout, code: 1 }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable documents");
    text.push('\n');
    text
}

pub fn load_graph(path: &str, text: &str) -> Result<Dag, CliError> {
    parse_graph(text).map_err(|source| CliError::GraphFile {
        path: path.to_string(),
        source,
    })
}

fn require_polytree(dag: Dag) -> Result<Polytree, CliError> {
    Polytree::new(dag).map_err(CliError::Graph)
}

fn resolve_set(dag: &Dag, names: &[String]) -> Result<VarSet, CliError> {
    names
        .iter()
        .map(|name| {
            dag.node(name)
                .ok_or_else(|| CliError::UnknownName(name.clone()))
        })
        .collect()
}

fn resolve_query(dag: &Dag, query: &Query) -> Result<(VarSet, VarSet, VarSet), CliError> {
    Ok((
        resolve_set(dag, &query.x)?,
        resolve_set(dag, &query.y)?,
        resolve_set(dag, &query.z)?,
    ))
}

pub fn check(
    graph_path: &str,
    graph_text: &str,
    query_text: &str,
    force_polytree: bool,
    json: bool,
) -> Result<CommandOutput, CliError> {
    let dag = load_graph(graph_path, graph_text)?;
    let query = parse_query(query_text).map_err(CliError::Query)?;
    let (x, y, z) = resolve_query(&dag, &query)?;

    let needs_polytree = force_polytree || !matches!(query.kind, QueryKind::Sep);
    let mut witness = None;
    let holds = match query.kind {
        QueryKind::Sep => {
            if needs_polytree {
                require_polytree(dag.clone())?;
            }
            sep_dag(&dag, &x, &y, &z)?
        }
        QueryKind::Dep => {
            let pt = require_polytree(dag.clone())?;
            let found = dep(&pt, &x, &y, &z)?;
            let holds = found.is_some();
            witness = found.map(|w| json::witness_json(&dag, &w));
            holds
        }
        QueryKind::Closure => {
            let pt = require_polytree(dag.clone())?;
            let base = dependence_base(&pt, &pt.topological_order())?;
            let closure = cwt_closure(&pt, &base)?;
            let statement = Statement::dependence(x.clone(), y.clone(), z.clone())?;
            closure.contains(&statement)
        }
        QueryKind::Derive => {
            return Err(CliError::Query(ParseError::new(
                1,
                1,
                "`derive` queries belong to the derive subcommand",
            )));
        }
    };

    let stdout = if json {
        to_json(&CheckJson {
            query: json::query_json(query.kind.name(), &query.x, &query.y, &query.z),
            holds,
            witness,
        })
    } else if holds {
        "HOLDS\n".to_string()
    } else {
        "DOES-NOT-HOLD\n".to_string()
    };
    Ok(if holds {
        CommandOutput::ok(stdout)
    } else {
        CommandOutput::does_not_hold(stdout)
    })
}

pub fn closure(graph_path: &str, graph_text: &str, json: bool) -> Result<CommandOutput, CliError> {
    let dag = load_graph(graph_path, graph_text)?;
    let pt = require_polytree(dag)?;
    let base = dependence_base(&pt, &pt.topological_order())?;
    let closure: BTreeSet<Statement> = cwt_closure(&pt, &base)?;
    let stdout = if json {
        to_json(&json::closure_json(pt.as_dag(), &closure))
    } else {
        closure_text(pt.as_dag(), &closure)
    };
    Ok(CommandOutput::ok(stdout))
}

pub fn derive_cmd(
    graph_path: &str,
    graph_text: &str,
    query_text: &str,
    json: bool,
) -> Result<CommandOutput, CliError> {
    let dag = load_graph(graph_path, graph_text)?;
    let query = parse_query(query_text).map_err(CliError::Query)?;
    if !matches!(query.kind, QueryKind::Dep | QueryKind::Derive) {
        return Err(CliError::Query(ParseError::new(
            1,
            1,
            "derive expects a `dep` or `derive` query",
        )));
    }
    let (x, y, z) = resolve_query(&dag, &query)?;
    let pt = require_polytree(dag)?;
    match derive(&pt, &x, &y, &z) {
        Ok(trace) => {
            let stdout = if json {
                to_json(&json::trace_json(pt.as_dag(), &trace))
            } else {
                trace_text(pt.as_dag(), &trace)
            };
            Ok(CommandOutput::ok(stdout))
        }
        Err(DeriveError::DepAbsent) => {
            let stdout = if json {
                "{\n  \"holds\": false\n}\n".to_string()
            } else {
                "DOES-NOT-HOLD\n".to_string()
            };
            Ok(CommandOutput::does_not_hold(stdout))
        }
        Err(e) => Err(CliError::Derive(e.to_string())),
    }
}

pub fn verify_cmd(
    graph_path: &str,
    graph_text: &str,
    trace_text_input: &str,
    json: bool,
) -> Result<CommandOutput, CliError> {
    let dag = load_graph(graph_path, graph_text)?;
    let pt = require_polytree(dag)?;

    let trace = if trace_text_input.trim_start().starts_with('{') {
        let parsed: json::TraceJson = serde_json::from_str(trace_text_input)
            .map_err(|e| CliError::Trace(e.to_string()))?;
        json::trace_from_json(pt.as_dag(), &parsed).map_err(CliError::Trace)?
    } else {
        parse_trace(pt.as_dag(), trace_text_input)
            .map_err(|e| CliError::Trace(e.to_string()))?
    };

    match verify_trace(&pt, &trace) {
        Ok(()) => {
            let stdout = if json {
                to_json(&VerifyJson {
                    valid: true,
                    diagnostic: None,
                })
            } else {
                "VERIFIED\n".to_string()
            };
            Ok(CommandOutput::ok(stdout))
        }
        Err(failure) => {
            let stdout = if json {
                to_json(&VerifyJson {
                    valid: false,
                    diagnostic: Some(failure.to_string()),
                })
            } else {
                format!("INVALID: {failure}\n")
            };
            Ok(CommandOutput::does_not_hold(stdout))
        }
    }
}

pub fn gen(nodes: usize, seed: u64, json: bool) -> Result<CommandOutput, CliError> {
    let pt = random_polytree(nodes, seed)?;
    let stdout = if json {
        to_json(&json::graph_json(pt.as_dag()))
    } else {
        graph_to_text(pt.as_dag())
    };
    Ok(CommandOutput::ok(stdout))
}

#[allow(clippy::too_many_arguments)]
pub fn gaussian_validate(
    graph_path: &str,
    graph_text: &str,
    models: usize,
    seed: u64,
    zero_tolerance: f64,
    dep_tolerance: f64,
    json: bool,
) -> Result<CommandOutput, CliError> {
    let dag = load_graph(graph_path, graph_text)?;
    let pt = require_polytree(dag)?;

    let mut doc = GaussianValidateJson {
        nodes: pt.n(),
        edges: pt.edge_count(),
        models,
        seed,
        zero_tolerance,
        dep_tolerance,
        sep_triples: 0,
        dep_triples: 0,
        neither_triples: 0,
        max_abs_corr_sep: None,
        min_abs_corr_dep: None,
        violations: Vec::new(),
    };
    for i in 0..models {
        let model_seed = seed.wrapping_add(i as u64);
        let model = random_model(&pt, model_seed);
        let report = faithfulness_report(&model, zero_tolerance, dep_tolerance)?;
        doc.sep_triples += report.sep_triples;
        doc.dep_triples += report.dep_triples;
        doc.neither_triples += report.neither_triples;
        doc.max_abs_corr_sep = max_opt(doc.max_abs_corr_sep, report.max_abs_corr_sep);
        doc.min_abs_corr_dep = min_opt(doc.min_abs_corr_dep, report.min_abs_corr_dep);
        for v in report.violations {
            doc.violations.push(GaussianViolationJson {
                model_seed,
                class: match v.class {
                    polydep_core::TripleClass::Separated => "separated".into(),
                    polydep_core::TripleClass::Dependent => "dependent".into(),
                    polydep_core::TripleClass::Neither => "neither".into(),
                },
                a: pt.name(v.a).to_string(),
                b: pt.name(v.b).to_string(),
                z: v.z.iter().map(|n| pt.name(n).to_string()).collect(),
                correlation: v.correlation,
            });
        }
    }

    let clean = doc.violations.is_empty();
    let stdout = if json {
        to_json(&doc)
    } else {
        let fmt_opt = |v: Option<f64>| match v {
            Some(x) => format!("{x:.3e}"),
            None => "n/a".to_string(),
        };
        let mut out = format!(
            "graph: {} nodes, {} edges\nmodels: {} (seed {})\n",
            doc.nodes, doc.edges, doc.models, doc.seed
        );
        out.push_str(&format!(
            "sep triples: {}, max |corr| = {}\n",
            doc.sep_triples,
            fmt_opt(doc.max_abs_corr_sep)
        ));
        out.push_str(&format!(
            "dep triples: {}, min |corr| = {}\n",
            doc.dep_triples,
            fmt_opt(doc.min_abs_corr_dep)
        ));
        out.push_str(&format!("neither triples: {}\n", doc.neither_triples));
        out.push_str(&format!("violations: {}\n", doc.violations.len()));
        for v in doc.violations.iter().take(10) {
            out.push_str(&format!(
                "  {} {} ; {} | {:?} corr = {:.3e}\n",
                v.class, v.a, v.b, v.z, v.correlation
            ));
        }
        out
    };
    Ok(if clean {
        CommandOutput::ok(stdout)
    } else {
        CommandOutput::does_not_hold(stdout)
    })
}

pub fn selftest(graphs: usize, seed: u64, json: bool) -> Result<CommandOutput, CliError> {
    let summary = closure_equivalence(graphs, seed);
    let clean = summary.mismatches == 0;
    let stdout = if json {
        to_json(&SelftestJson {
            graphs: summary.graphs,
            triples: summary.triples,
            mismatches: summary.mismatches,
            examples: summary.examples.clone(),
        })
    } else {
        let mut out = format!(
            "selftest: {} graphs, {} triples, {} mismatches\n",
            summary.graphs, summary.triples, summary.mismatches
        );
        for e in &summary.examples {
            out.push_str(&format!("  {e}\n"));
        }
        out
    };
    Ok(if clean {
        CommandOutput::ok(stdout)
    } else {
        CommandOutput::does_not_hold(stdout)
    })
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (x, None) | (None, x) => x,
    }
}

fn min_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (x, None) | (None, x) => x,
    }
}
