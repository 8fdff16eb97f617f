//! JSON document types emitted under `--json`, and conversions to and from
//! the core types. The shapes are documented in the repository README and
//! pinned by tests.

use polydep_core::{
    ColliderSupport, Dag, DepWitness, Polarity, RuleId, SepCondition, Statement, Trace,
    TraceStep, VarSet,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct StatementJson {
    pub polarity: String,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SepConditionJson {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TraceStepJson {
    pub index: usize,
    pub statement: StatementJson,
    pub rule: String,
    pub premises: Vec<usize>,
    pub sep_conditions: Vec<SepConditionJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TraceJson {
    pub nodes: Vec<String>,
    pub goal: StatementJson,
    pub steps: Vec<TraceStepJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ColliderJson {
    pub node: String,
    pub support: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descendant: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct WitnessJson {
    pub a: String,
    pub b: String,
    pub path: Vec<String>,
    pub colliders: Vec<ColliderJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct QueryJson {
    pub kind: String,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CheckJson {
    pub query: QueryJson,
    pub holds: bool,
    pub witness: Option<WitnessJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ClosureJson {
    pub nodes: Vec<String>,
    pub statements: Vec<StatementJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphJson {
    pub nodes: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct VerifyJson {
    pub valid: bool,
    pub diagnostic: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct GaussianViolationJson {
    pub model_seed: u64,
    pub class: String,
    pub a: String,
    pub b: String,
    pub z: Vec<String>,
    pub correlation: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct GaussianValidateJson {
    pub nodes: usize,
    pub edges: usize,
    pub models: usize,
    pub seed: u64,
    pub zero_tolerance: f64,
    pub dep_tolerance: f64,
    pub sep_triples: usize,
    pub dep_triples: usize,
    pub neither_triples: usize,
    pub max_abs_corr_sep: Option<f64>,
    pub min_abs_corr_dep: Option<f64>,
    pub violations: Vec<GaussianViolationJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SelftestJson {
    pub graphs: usize,
    pub triples: usize,
    pub mismatches: usize,
    pub examples: Vec<String>,
}

fn names(dag: &Dag, set: &VarSet) -> Vec<String> {
    set.iter().map(|v| dag.name(v).to_string()).collect()
}

pub fn statement_json(dag: &Dag, s: &Statement) -> StatementJson {
    StatementJson {
        polarity: match s.polarity() {
            Polarity::Dependence => "dependence".into(),
            Polarity::Independence => "independence".into(),
        },
        x: names(dag, s.x()),
        y: names(dag, s.y()),
        z: names(dag, s.z()),
    }
}

pub fn sep_condition_json(dag: &Dag, c: &SepCondition) -> SepConditionJson {
    SepConditionJson {
        x: names(dag, c.x()),
        y: names(dag, c.y()),
        z: names(dag, c.z()),
    }
}

pub fn trace_json(dag: &Dag, trace: &Trace) -> TraceJson {
    TraceJson {
        nodes: trace.nodes.clone(),
        goal: statement_json(dag, &trace.goal),
        steps: trace
            .steps
            .iter()
            .map(|step| TraceStepJson {
                index: step.index,
                statement: statement_json(dag, &step.statement),
                rule: step.rule.name().to_string(),
                premises: step.premises.clone(),
                sep_conditions: step
                    .sep_conditions
                    .iter()
                    .map(|c| sep_condition_json(dag, c))
                    .collect(),
            })
            .collect(),
    }
}

pub fn witness_json(dag: &Dag, w: &DepWitness) -> WitnessJson {
    WitnessJson {
        a: dag.name(w.a).to_string(),
        b: dag.name(w.b).to_string(),
        path: w
            .path
            .nodes()
            .iter()
            .map(|&v| dag.name(v).to_string())
            .collect(),
        colliders: w
            .support
            .iter()
            .map(|&(node, support)| match support {
                ColliderSupport::Conditioned => ColliderJson {
                    node: dag.name(node).to_string(),
                    support: "conditioned".into(),
                    descendant: None,
                },
                ColliderSupport::UniqueMaximalDescendant(d) => ColliderJson {
                    node: dag.name(node).to_string(),
                    support: "unique_maximal_descendant".into(),
                    descendant: Some(dag.name(d).to_string()),
                },
            })
            .collect(),
    }
}

pub fn closure_json(dag: &Dag, statements: &BTreeSet<Statement>) -> ClosureJson {
    ClosureJson {
        nodes: dag.names().to_vec(),
        statements: statements.iter().map(|s| statement_json(dag, s)).collect(),
    }
}

pub fn graph_json(dag: &Dag) -> GraphJson {
    GraphJson {
        nodes: dag.names().to_vec(),
        edges: dag
            .edges()
            .iter()
            .map(|&(p, c)| [dag.name(p).to_string(), dag.name(c).to_string()])
            .collect(),
    }
}

fn set_from_names(dag: &Dag, list: &[String]) -> Result<VarSet, String> {
    list.iter()
        .map(|name| {
            dag.node(name)
                .ok_or_else(|| format!("unknown node `{name}`"))
        })
        .collect()
}

pub fn statement_from_json(dag: &Dag, json: &StatementJson) -> Result<Statement, String> {
    let polarity = match json.polarity.as_str() {
        "dependence" => Polarity::Dependence,
        "independence" => Polarity::Independence,
        other => return Err(format!("unknown polarity `{other}`")),
    };
    Statement::new(
        polarity,
        set_from_names(dag, &json.x)?,
        set_from_names(dag, &json.y)?,
        set_from_names(dag, &json.z)?,
    )
    .map_err(|e| e.to_string())
}

pub fn trace_from_json(dag: &Dag, json: &TraceJson) -> Result<Trace, String> {
    let goal = statement_from_json(dag, &json.goal)?;
    let mut steps = Vec::with_capacity(json.steps.len());
    for step in &json.steps {
        let rule = RuleId::from_name(&step.rule)
            .ok_or_else(|| format!("unknown rule `{}`", step.rule))?;
        let mut sep_conditions = Vec::with_capacity(step.sep_conditions.len());
        for c in &step.sep_conditions {
            sep_conditions.push(SepCondition::new(
                set_from_names(dag, &c.x)?,
                set_from_names(dag, &c.y)?,
                set_from_names(dag, &c.z)?,
            ));
        }
        steps.push(TraceStep {
            index: step.index,
            statement: statement_from_json(dag, &step.statement)?,
            rule,
            premises: step.premises.clone(),
            sep_conditions,
        });
    }
    Ok(Trace {
        nodes: json.nodes.clone(),
        goal,
        steps,
    })
}

pub fn query_json(kind: &str, x: &[String], y: &[String], z: &[String]) -> QueryJson {
    QueryJson {
        kind: kind.to_string(),
        x: x.to_vec(),
        y: y.to_vec(),
        z: z.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polydep_core::{derive, Polytree};

    #[test]
    fn trace_json_round_trip() {
        let dag = Dag::new(&["A", "B", "C"], &[("A", "B"), ("B", "C")]).unwrap();
        let pt = Polytree::new(dag).unwrap();
        let x: VarSet = [pt.node("A").unwrap()].into_iter().collect();
        let y: VarSet = [pt.node("C").unwrap()].into_iter().collect();
        let trace = derive(&pt, &x, &y, &VarSet::empty()).unwrap();
        let json = trace_json(pt.as_dag(), &trace);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: TraceJson = serde_json::from_str(&text).unwrap();
        let back = trace_from_json(pt.as_dag(), &parsed).unwrap();
        assert_eq!(back, trace);
    }
}
