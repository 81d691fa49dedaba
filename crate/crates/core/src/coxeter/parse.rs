//! Input formats for Coxeter matrices.
//!
//! Text grammar (blank lines and `#` comments ignored):
//!
//! ```text
//! document := rank NEWLINE row{rank}
//! row      := entry{rank}
//! entry    := positive integer | "inf"
//! ```
//!
//! JSON: `{"generators": ["a", ...], "matrix": [[1, 3, "inf"], ...]}`; the
//! `generators` key is optional.

use serde_json::Value;

use super::{CoxeterSystem, Order};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: malformed token {token:?}")]
    Token { line: usize, token: String },
    #[error("missing rank line")]
    MissingRank,
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("{0}")]
    Shape(String),
    #[error("trailing content at line {line}")]
    Trailing { line: usize },
    #[error("matrix is asymmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("diagonal entry {index} must be 1")]
    Diagonal { index: usize },
    #[error("off-diagonal entry ({row}, {col}) must be at least 2 or inf")]
    OffDiagonal { row: usize, col: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

fn parse_token(tok: &str, line: usize) -> Result<Order, ParseError> {
    if tok.eq_ignore_ascii_case("inf") {
        return Ok(Order::Infinite);
    }
    match tok.parse::<u32>() {
        Ok(m) => Ok(Order::Finite(m)),
        Err(_) => Err(ParseError::Token {
            line,
            token: tok.to_string(),
        }),
    }
}

pub(super) fn parse_text(text: &str) -> Result<CoxeterSystem, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (rank_line, rank_text) = lines.next().ok_or(ParseError::MissingRank)?;
    let n: usize = rank_text.parse().map_err(|_| ParseError::Token {
        line: rank_line,
        token: rank_text.to_string(),
    })?;
    if n == 0 {
        return Err(ParseError::ZeroRank);
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let (line, row_text) = lines
            .next()
            .ok_or_else(|| ParseError::Shape(format!("expected {n} rows, found {i}")))?;
        let row = row_text
            .split_whitespace()
            .map(|t| parse_token(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(ParseError::Shape(format!(
                "line {line}: expected {n} entries, found {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::Trailing { line });
    }
    CoxeterSystem::from_orders(rows)
}

fn json_entry(v: &Value) -> Result<Order, ParseError> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .and_then(|m| u32::try_from(m).ok())
            .map(Order::Finite)
            .ok_or_else(|| ParseError::Json(format!("bad entry {n}"))),
        Value::String(s) if s.eq_ignore_ascii_case("inf") => Ok(Order::Infinite),
        other => Err(ParseError::Json(format!("bad entry {other}"))),
    }
}

pub(super) fn parse_json(text: &str) -> Result<CoxeterSystem, ParseError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| ParseError::Json("expected an object".into()))?;
    if let Some(extra) = obj.keys().find(|k| *k != "generators" && *k != "matrix") {
        return Err(ParseError::Json(format!("unknown key {extra:?}")));
    }
    let rows = obj
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::Json("missing \"matrix\" array".into()))?;
    if rows.is_empty() {
        return Err(ParseError::ZeroRank);
    }
    let matrix = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| ParseError::Json("matrix rows must be arrays".into()))?
                .iter()
                .map(json_entry)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    match obj.get("generators") {
        None => CoxeterSystem::from_orders(matrix),
        Some(g) => {
            let labels = g
                .as_array()
                .ok_or_else(|| ParseError::Json("generators must be an array".into()))?
                .iter()
                .map(|v| v.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| ParseError::Json("generator labels must be strings".into()))?;
            CoxeterSystem::new(labels, matrix)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::CoxeterSystem;
    use super::*;

    #[test]
    fn text_examples() {
        let sys = CoxeterSystem::parse("2\n1 3\n3 1\n").unwrap();
        assert_eq!(sys.gram()[(0, 1)].to_string(), "-1/2");
        assert_eq!(
            CoxeterSystem::parse("2\n1 2\n3 1\n").unwrap_err(),
            ParseError::Asymmetric { row: 0, col: 1 }
        );
        assert_eq!(
            CoxeterSystem::parse("2\n2 3\n3 1\n").unwrap_err(),
            ParseError::Diagonal { index: 0 }
        );
        assert!(matches!(
            CoxeterSystem::parse("2\n1 x\nx 1\n"),
            Err(ParseError::Token { line: 2, .. })
        ));
        assert_eq!(
            CoxeterSystem::parse("2\n1 3\n3 1\n5\n").unwrap_err(),
            ParseError::Trailing { line: 4 }
        );
        assert!(matches!(
            CoxeterSystem::parse("2\n1 3 3\n3 1\n"),
            Err(ParseError::Shape(_))
        ));
        assert_eq!(
            CoxeterSystem::parse("2\n1 1\n1 1\n").unwrap_err(),
            ParseError::OffDiagonal { row: 0, col: 1 }
        );
        assert_eq!(
            CoxeterSystem::parse("").unwrap_err(),
            ParseError::MissingRank
        );
        assert_eq!(
            CoxeterSystem::parse("0\n").unwrap_err(),
            ParseError::ZeroRank
        );
    }

    #[test]
    fn comments_and_inf() {
        let sys = CoxeterSystem::parse("# dihedral\n2\n1 inf  # free\n\ninf 1\n").unwrap();
        assert_eq!(sys.order(0, 1), Order::Infinite);
    }

    #[test]
    fn json_roundtrip() {
        let sys = CoxeterSystem::parse_json(
            r#"{"generators":["a","b","c"],"matrix":[[1,3,2],[3,1,"inf"],[2,"inf",1]]}"#,
        )
        .unwrap();
        assert_eq!(sys.labels(), ["a", "b", "c"]);
        assert_eq!(sys.order(1, 2), Order::Infinite);
        let again = CoxeterSystem::parse(&sys.to_text()).unwrap();
        assert_eq!(again.matrix(), sys.matrix());
        assert!(CoxeterSystem::parse_json(r#"{"matrix":[[1,3],[3,1]],"extra":1}"#).is_err());
        assert!(CoxeterSystem::parse_json(r#"{"matrix":[[1,-3],[-3,1]]}"#).is_err());
        assert!(CoxeterSystem::parse_any(r#"{"matrix":[[1,4],[4,1]]}"#).is_ok());
    }
}
