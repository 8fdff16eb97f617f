//! The query grammar: `<kind> <names> ; <names> [| <names>]` with
//! comma-separated names, e.g. `dep A ; B | C,D`. An omitted `|` section
//! means an empty conditioning set.

use crate::ParseError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QueryKind {
    Sep,
    Dep,
    Derive,
    Closure,
}

impl QueryKind {
    pub fn name(self) -> &'static str {
        match self {
            QueryKind::Sep => "sep",
            QueryKind::Dep => "dep",
            QueryKind::Derive => "derive",
            QueryKind::Closure => "closure",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Query {
    pub kind: QueryKind,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
}

pub fn parse_query(text: &str) -> Result<Query, ParseError> {
    let at = |slice: &str| slice.as_ptr() as usize - text.as_ptr() as usize + 1;
    let trimmed = text.trim_start();
    let kind_end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
    let (kind_tok, rest) = trimmed.split_at(kind_end);
    let kind = match kind_tok {
        "sep" => QueryKind::Sep,
        "dep" => QueryKind::Dep,
        "derive" => QueryKind::Derive,
        "closure" => QueryKind::Closure,
        other => {
            return Err(ParseError::new(
                1,
                at(trimmed),
                format!("unknown query kind `{other}` (expected sep, dep, derive or closure)"),
            ));
        }
    };

    let Some((x_part, tail)) = rest.split_once(';') else {
        return Err(ParseError::new(
            1,
            at(rest) + rest.len().saturating_sub(1),
            "expected `;` between the X and Y name lists",
        ));
    };
    let (y_part, z_part) = match tail.split_once('|') {
        Some((y, z)) => (y, Some(z)),
        None => (tail, None),
    };
    if tail.matches(';').count() > 0 {
        return Err(ParseError::new(1, at(tail), "more than one `;`"));
    }
    if let Some(z) = z_part {
        if z.contains('|') {
            return Err(ParseError::new(1, at(z), "more than one `|`"));
        }
    }

    let x = parse_names(text, x_part, "X")?;
    let y = parse_names(text, y_part, "Y")?;
    let z = match z_part {
        Some(z) if z.trim().is_empty() => {
            return Err(ParseError::new(
                1,
                at(z),
                "`|` must be followed by names; omit it for an empty conditioning set",
            ));
        }
        Some(z) => parse_names(text, z, "Z")?,
        None => Vec::new(),
    };
    Ok(Query { kind, x, y, z })
}

fn parse_names(full: &str, part: &str, side: &str) -> Result<Vec<String>, ParseError> {
    let at = |slice: &str| slice.as_ptr() as usize - full.as_ptr() as usize + 1;
    let mut names = Vec::new();
    for piece in part.split(',') {
        let name = piece.trim();
        if name.is_empty() {
            if part.trim().is_empty() && names.is_empty() {
                break;
            }
            return Err(ParseError::new(1, at(piece), "empty name"));
        }
        if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(ParseError::new(
                1,
                at(piece),
                format!("invalid name `{name}`"),
            ));
        }
        names.push(name.to_string());
    }
    if names.is_empty() && (side == "X" || side == "Y") {
        return Err(ParseError::new(
            1,
            at(part),
            format!("{side} must list at least one name"),
        ));
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_query() {
        let q = parse_query("dep A ; B | C,D").unwrap();
        assert_eq!(q.kind, QueryKind::Dep);
        assert_eq!(q.x, ["A"]);
        assert_eq!(q.y, ["B"]);
        assert_eq!(q.z, ["C", "D"]);
    }

    #[test]
    fn omitted_conditioning_set() {
        let q = parse_query("sep A,B ; C").unwrap();
        assert_eq!(q.kind, QueryKind::Sep);
        assert_eq!(q.x, ["A", "B"]);
        assert_eq!(q.y, ["C"]);
        assert!(q.z.is_empty());
    }

    #[test]
    fn empty_x_rejected() {
        let err = parse_query("dep ; B").unwrap_err();
        assert!(err.message.contains("X must list"));
    }

    #[test]
    fn unknown_kind_rejected() {
        assert!(parse_query("foo A ; B").is_err());
    }

    #[test]
    fn missing_semicolon_rejected() {
        assert!(parse_query("dep A B").is_err());
    }

    #[test]
    fn empty_conditioning_after_pipe_rejected() {
        assert!(parse_query("dep A ; B |").is_err());
    }
}
