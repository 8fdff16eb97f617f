//! Plain-text rendering and parsing of statements and traces.
//!
//! Statements print as `A,B !_||_ C | D` (`_||_` for independencies) with
//! names in graph order and the conditioning set omitted when empty. Traces
//! print one numbered step per line after two header lines:
//!
//! ```text
//! graph: A B C
//! goal: A !_||_ C
//! (1) A !_||_ B by base
//! (2) A,B !_||_ C by base
//! (3) B !_||_ C by contraction1 on (2) [sep: A _||_ C | B]
//! (4) A !_||_ C by weak_transitivity2 on (1,3) [sep: A _||_ C | B]
//! ```

use polydep_core::{
    Dag, NodeId, Polarity, RuleId, SepCondition, Statement, Trace, TraceStep, VarSet,
};
use std::collections::BTreeSet;

use crate::ParseError;

pub const DEPENDENCE_OP: &str = "!_||_";
pub const INDEPENDENCE_OP: &str = "_||_";

pub fn set_text(dag: &Dag, set: &VarSet) -> String {
    set.iter()
        .map(|v| dag.name(v))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn statement_text(dag: &Dag, statement: &Statement) -> String {
    let op = match statement.polarity() {
        Polarity::Dependence => DEPENDENCE_OP,
        Polarity::Independence => INDEPENDENCE_OP,
    };
    let mut out = format!(
        "{} {} {}",
        set_text(dag, statement.x()),
        op,
        set_text(dag, statement.y())
    );
    if !statement.z().is_empty() {
        out.push_str(" | ");
        out.push_str(&set_text(dag, statement.z()));
    }
    out
}

pub fn sep_condition_text(dag: &Dag, cond: &SepCondition) -> String {
    let mut out = format!(
        "{} {} {}",
        set_text(dag, cond.x()),
        INDEPENDENCE_OP,
        set_text(dag, cond.y())
    );
    if !cond.z().is_empty() {
        out.push_str(" | ");
        out.push_str(&set_text(dag, cond.z()));
    }
    out
}

/// One statement per line, in the set's canonical order.
pub fn closure_text(dag: &Dag, statements: &BTreeSet<Statement>) -> String {
    let mut out = String::new();
    for s in statements {
        out.push_str(&statement_text(dag, s));
        out.push('\n');
    }
    out
}

pub fn trace_text(dag: &Dag, trace: &Trace) -> String {
    let mut out = format!("graph: {}\n", trace.nodes.join(" "));
    out.push_str(&format!("goal: {}\n", statement_text(dag, &trace.goal)));
    for step in &trace.steps {
        out.push_str(&format!(
            "({}) {} by {}",
            step.index,
            statement_text(dag, &step.statement),
            step.rule
        ));
        if !step.premises.is_empty() {
            let list = step
                .premises
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(" on ({list})"));
        }
        if !step.sep_conditions.is_empty() {
            let list = step
                .sep_conditions
                .iter()
                .map(|c| sep_condition_text(dag, c))
                .collect::<Vec<_>>()
                .join("; ");
            out.push_str(&format!(" [sep: {list}]"));
        }
        out.push('\n');
    }
    out
}

fn resolve(dag: &Dag, name: &str, line: usize) -> Result<NodeId, ParseError> {
    dag.node(name)
        .ok_or_else(|| ParseError::new(line, 1, format!("unknown node `{name}`")))
}

fn parse_set(dag: &Dag, text: &str, line: usize) -> Result<VarSet, ParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(VarSet::empty());
    }
    text.split(',')
        .map(|name| resolve(dag, name.trim(), line))
        .collect()
}

/// Parses `X <op> Y [| Z]` with node names resolved against `dag`.
pub fn parse_statement(dag: &Dag, text: &str, line: usize) -> Result<Statement, ParseError> {
    let (polarity, x_part, rest) = split_on_operator(text, line)?;
    let (y_part, z_part) = match rest.split_once('|') {
        Some((y, z)) => (y, z),
        None => (rest, ""),
    };
    let x = parse_set(dag, x_part, line)?;
    let y = parse_set(dag, y_part, line)?;
    let z = parse_set(dag, z_part, line)?;
    Statement::new(polarity, x, y, z)
        .map_err(|e| ParseError::new(line, 1, e.to_string()))
}

fn split_on_operator(text: &str, line: usize) -> Result<(Polarity, &str, &str), ParseError> {
    if let Some((x, rest)) = text.split_once(DEPENDENCE_OP) {
        return Ok((Polarity::Dependence, x, rest));
    }
    if let Some((x, rest)) = text.split_once(INDEPENDENCE_OP) {
        return Ok((Polarity::Independence, x, rest));
    }
    Err(ParseError::new(
        line,
        1,
        format!("expected `{DEPENDENCE_OP}` or `{INDEPENDENCE_OP}`"),
    ))
}

/// Parses the trace text format back into a [`Trace`].
pub fn parse_trace(dag: &Dag, text: &str) -> Result<Trace, ParseError> {
    let mut lines = text.lines().enumerate();

    let (_, graph_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty trace"))?;
    let nodes: Vec<String> = graph_line
        .strip_prefix("graph:")
        .ok_or_else(|| ParseError::new(1, 1, "expected `graph:` header"))?
        .split_whitespace()
        .map(String::from)
        .collect();

    let (_, goal_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(2, 1, "missing `goal:` header"))?;
    let goal_text = goal_line
        .strip_prefix("goal:")
        .ok_or_else(|| ParseError::new(2, 1, "expected `goal:` header"))?;
    let goal = parse_statement(dag, goal_text.trim(), 2)?;

    let mut steps = Vec::new();
    for (line_no, raw) in lines {
        let line = line_no + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        steps.push(parse_step(dag, raw, line)?);
    }
    Ok(Trace { nodes, goal, steps })
}

fn parse_step(dag: &Dag, raw: &str, line: usize) -> Result<TraceStep, ParseError> {
    let rest = raw
        .strip_prefix('(')
        .ok_or_else(|| ParseError::new(line, 1, "step must start with `(<index>)`"))?;
    let (index_text, rest) = rest
        .split_once(')')
        .ok_or_else(|| ParseError::new(line, 1, "unclosed step index"))?;
    let index: usize = index_text
        .trim()
        .parse()
        .map_err(|_| ParseError::new(line, 2, "step index must be a number"))?;

    let (statement_text, rest) = rest
        .split_once(" by ")
        .ok_or_else(|| ParseError::new(line, 1, "missing ` by <rule>`"))?;
    let statement = parse_statement(dag, statement_text.trim(), line)?;

    // Remainder: `<rule>[ on (i,j)][ [sep: ...]]`
    let (head, sep_block) = match rest.split_once("[sep:") {
        Some((head, block)) => {
            let inner = block
                .trim_end()
                .strip_suffix(']')
                .ok_or_else(|| ParseError::new(line, 1, "unclosed `[sep: ...]`"))?;
            (head, Some(inner))
        }
        None => (rest, None),
    };
    let (rule_text, premise_block) = match head.split_once(" on ") {
        Some((rule, block)) => (rule, Some(block)),
        None => (head, None),
    };
    let rule = RuleId::from_name(rule_text.trim())
        .ok_or_else(|| ParseError::new(line, 1, format!("unknown rule `{}`", rule_text.trim())))?;

    let mut premises = Vec::new();
    if let Some(block) = premise_block {
        let inner = block
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(line, 1, "premises must look like `(1,2)`"))?;
        for piece in inner.split(',') {
            premises.push(
                piece
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::new(line, 1, "premise indices must be numbers"))?,
            );
        }
    }

    let mut sep_conditions = Vec::new();
    if let Some(block) = sep_block {
        for piece in block.split(';') {
            let parsed = parse_statement(dag, piece.trim(), line)?;
            if parsed.polarity() != Polarity::Independence {
                return Err(ParseError::new(
                    line,
                    1,
                    "separation conditions must be independencies",
                ));
            }
            sep_conditions.push(SepCondition::new(
                parsed.x().clone(),
                parsed.y().clone(),
                parsed.z().clone(),
            ));
        }
    }

    Ok(TraceStep {
        index,
        statement,
        rule,
        premises,
        sep_conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use polydep_core::{derive, Polytree};

    fn p1() -> Polytree {
        Polytree::new(
            Dag::new(
                &["A", "B", "C", "D", "E"],
                &[("A", "C"), ("B", "C"), ("C", "D"), ("C", "E")],
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn varset(dag: &Dag, names: &[&str]) -> VarSet {
        names.iter().map(|n| dag.node(n).unwrap()).collect()
    }

    #[test]
    fn statement_rendering() {
        let pt = p1();
        let s = Statement::dependence(
            varset(&pt, &["B", "A"]),
            varset(&pt, &["C"]),
            varset(&pt, &["D"]),
        )
        .unwrap();
        assert_eq!(statement_text(pt.as_dag(), &s), "A,B !_||_ C | D");
        let back = parse_statement(pt.as_dag(), "A,B !_||_ C | D", 1).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn empty_conditioning_omitted() {
        let pt = p1();
        let s = Statement::independence(
            varset(&pt, &["A"]),
            varset(&pt, &["B"]),
            VarSet::empty(),
        )
        .unwrap();
        assert_eq!(statement_text(pt.as_dag(), &s), "A _||_ B");
    }

    #[test]
    fn trace_round_trips_through_text() {
        let pt = p1();
        let trace = derive(
            &pt,
            &varset(&pt, &["A"]),
            &varset(&pt, &["B"]),
            &varset(&pt, &["D"]),
        )
        .unwrap();
        let text = trace_text(pt.as_dag(), &trace);
        let back = parse_trace(pt.as_dag(), &text).unwrap();
        assert_eq!(back, trace);
    }
}
