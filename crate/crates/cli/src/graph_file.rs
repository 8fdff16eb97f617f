//! The graph-file grammar: one directive per line.
//!
//! ```text
//! # comment
//! node A
//! edge A -> B
//! ```
//!
//! `node` lines are optional for names that appear in edges; indices follow
//! first mention. Blank lines and `#` comments are ignored. Names are
//! alphanumeric-plus-underscore so they stay unambiguous in the query and
//! statement grammars.

use polydep_core::{Dag, GraphError};

use crate::ParseError;

pub fn parse_graph(text: &str) -> Result<Dag, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut declared: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mention = |name: &str, names: &mut Vec<String>| {
        if !names.iter().any(|n| n == name) {
            names.push(name.to_string());
        }
    };

    for (line_no, raw) in text.lines().enumerate() {
        let line = line_no + 1;
        let mut tokens = tokenize(raw);
        let Some((keyword, col)) = tokens.next() else {
            continue;
        };
        if keyword.starts_with('#') {
            continue;
        }
        match keyword {
            "node" => {
                let (name, name_col) = tokens
                    .next()
                    .ok_or_else(|| ParseError::new(line, col, "`node` needs a name"))?;
                check_name(name, line, name_col)?;
                expect_end(tokens.next(), line)?;
                if declared.iter().any(|n| n == name) {
                    return Err(ParseError::new(
                        line,
                        name_col,
                        format!("duplicate node line for `{name}`"),
                    ));
                }
                declared.push(name.to_string());
                mention(name, &mut names);
            }
            "edge" => {
                let (parent, parent_col) = tokens
                    .next()
                    .ok_or_else(|| ParseError::new(line, col, "`edge` needs `<parent> -> <child>`"))?;
                check_name(parent, line, parent_col)?;
                let (arrow, arrow_col) = tokens
                    .next()
                    .ok_or_else(|| ParseError::new(line, col, "missing `->`"))?;
                if arrow != "->" {
                    return Err(ParseError::new(line, arrow_col, "expected `->`"));
                }
                let (child, child_col) = tokens
                    .next()
                    .ok_or_else(|| ParseError::new(line, arrow_col, "missing child name"))?;
                check_name(child, line, child_col)?;
                expect_end(tokens.next(), line)?;
                if edges.iter().any(|(p, c)| p == parent && c == child) {
                    return Err(ParseError::new(
                        line,
                        col,
                        format!("duplicate edge `{parent} -> {child}`"),
                    ));
                }
                mention(parent, &mut names);
                mention(child, &mut names);
                edges.push((parent.to_string(), child.to_string()));
            }
            other => {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("unknown directive `{other}` (expected `node` or `edge`)"),
                ));
            }
        }
    }

    Dag::new(&names, &edges).map_err(|e| graph_error_location(e, text))
}

/// Renders a graph back to the file grammar; parsing the result reproduces
/// the graph, node indices included.
pub fn graph_to_text(dag: &Dag) -> String {
    let mut out = String::new();
    for name in dag.names() {
        out.push_str("node ");
        out.push_str(name);
        out.push('\n');
    }
    for &(p, c) in dag.edges() {
        out.push_str("edge ");
        out.push_str(dag.name(p));
        out.push_str(" -> ");
        out.push_str(dag.name(c));
        out.push('\n');
    }
    out
}

fn tokenize(line: &str) -> impl Iterator<Item = (&str, usize)> {
    line.split_whitespace().map(move |tok| {
        let col = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
        (tok, col)
    })
}

fn check_name(name: &str, line: usize, col: usize) -> Result<(), ParseError> {
    if name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(())
    } else {
        Err(ParseError::new(
            line,
            col,
            format!("invalid name `{name}` (letters, digits and `_` only)"),
        ))
    }
}

fn expect_end(next: Option<(&str, usize)>, line: usize) -> Result<(), ParseError> {
    match next {
        None => Ok(()),
        Some((tok, col)) if tok.starts_with('#') => {
            let _ = (tok, col);
            Ok(())
        }
        Some((tok, col)) => Err(ParseError::new(
            line,
            col,
            format!("unexpected trailing `{tok}`"),
        )),
    }
}

// Construction errors detected by the graph itself (e.g. a directed cycle)
// have no single line; report them at the file head.
fn graph_error_location(e: GraphError, _text: &str) -> ParseError {
    ParseError::new(1, 1, e.to_string())
}
