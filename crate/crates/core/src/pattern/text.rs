//! The line-oriented pattern file format and its JSON mirror.
//!
//! ```text
//! # A single crimp
//! positions: 0 3 4 7
//! mv: MV
//! ```
//!
//! JSON: `{"positions":[0,3,4,7],"mv":"MV"}`. A `?` label marks an unknown
//! crease and turns the result into a [`PartialMvPattern`].

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{CreasePattern, MvPattern, PartialMvAssignment, PartialMvPattern, PatternError};

/// A parsed document: fully labeled, or with at least one `?`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedPattern {
    Full(MvPattern),
    Partial(PartialMvPattern),
}

impl ParsedPattern {
    pub fn pattern(&self) -> &CreasePattern {
        match self {
            ParsedPattern::Full(p) => &p.pattern,
            ParsedPattern::Partial(p) => &p.pattern,
        }
    }

    pub fn into_full(self) -> Option<MvPattern> {
        match self {
            ParsedPattern::Full(p) => Some(p),
            ParsedPattern::Partial(_) => None,
        }
    }

    /// Labels as a partial assignment (fully known for [`ParsedPattern::Full`]).
    pub fn partial(&self) -> PartialMvAssignment {
        match self {
            ParsedPattern::Full(p) => p.mv.restrict_to(p.pattern.crease_ids()),
            ParsedPattern::Partial(p) => p.partial.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonDoc<P> {
    positions: Vec<P>,
    mv: String,
}

/// Parses either the text format or, when the document starts with `{`, its JSON mirror.
pub fn parse_pattern(text: &str) -> Result<ParsedPattern, PatternError> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut positions: Option<Vec<i64>> = None;
    let mut mv: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| PatternError::Syntax {
            line: line_no,
            message: format!("expected `positions:` or `mv:`, found `{line}`"),
        })?;
        match key.trim() {
            "positions" => {
                if positions.is_some() {
                    return Err(dup(line_no, "positions"));
                }
                positions = Some(
                    rest.split_whitespace()
                        .map(|tok| parse_position(tok, line_no))
                        .collect::<Result<_, _>>()?,
                );
            }
            "mv" => {
                if mv.is_some() {
                    return Err(dup(line_no, "mv"));
                }
                mv = Some(rest.split_whitespace().collect());
            }
            other => {
                return Err(PatternError::Syntax { line: line_no, message: format!("unknown key `{other}`") })
            }
        }
    }
    let positions = positions.ok_or(PatternError::Missing("positions"))?;
    let mv = mv.ok_or(PatternError::Missing("mv"))?;
    build(positions, &mv)
}

fn dup(line: usize, key: &str) -> PatternError {
    PatternError::Syntax { line, message: format!("duplicate `{key}:` line") }
}

fn parse_position(token: &str, line: usize) -> Result<i64, PatternError> {
    if let Ok(v) = token.parse::<i64>() {
        return Ok(v);
    }
    let digits = token.strip_prefix(['-', '+']).unwrap_or(token);
    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        Err(PatternError::Overflow(format!("line {line}: position `{token}` does not fit in 64 bits")))
    } else {
        Err(PatternError::NonInteger { line, token: token.to_string() })
    }
}

fn parse_json(text: &str) -> Result<ParsedPattern, PatternError> {
    let doc: JsonDoc<Value> = serde_json::from_str(text).map_err(|e| PatternError::Json(e.to_string()))?;
    let positions = doc
        .positions
        .iter()
        .map(|v| match v {
            Value::Number(n) if n.is_i64() => Ok(n.as_i64().unwrap()),
            Value::Number(n) if n.is_u64() => {
                Err(PatternError::Overflow(format!("position {n} does not fit in 64 bits")))
            }
            other => Err(PatternError::NonInteger { line: 1, token: other.to_string() }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    build(positions, &doc.mv)
}

fn build(positions: Vec<i64>, mv: &str) -> Result<ParsedPattern, PatternError> {
    let pattern = CreasePattern::new(positions)?;
    let partial = PartialMvAssignment::parse(mv)?;
    let partial = PartialMvPattern::new(pattern, partial)?;
    Ok(match partial.partial.complete() {
        Some(mv) => ParsedPattern::Full(MvPattern { pattern: partial.pattern, mv }),
        None => ParsedPattern::Partial(partial),
    })
}

fn write_doc(pattern: &CreasePattern, labels: &str) -> String {
    let positions: Vec<String> = pattern.positions().iter().map(i64::to_string).collect();
    let mut out = format!("positions: {}\nmv:", positions.join(" "));
    if !labels.is_empty() {
        out.push(' ');
        out.push_str(labels);
    }
    out.push('\n');
    out
}

pub fn serialize_pattern(p: &MvPattern) -> String {
    write_doc(&p.pattern, &p.mv.to_string())
}

pub fn serialize_partial(p: &PartialMvPattern) -> String {
    write_doc(&p.pattern, &p.partial.to_string())
}

impl MvPattern {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&JsonDoc { positions: self.pattern.positions().to_vec(), mv: self.mv.to_string() })
            .expect("plain data serializes")
    }
}

impl PartialMvPattern {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&JsonDoc {
            positions: self.pattern.positions().to_vec(),
            mv: self.partial.to_string(),
        })
        .expect("plain data serializes")
    }
}

impl Serialize for MvPattern {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        JsonDoc { positions: self.pattern.positions().to_vec(), mv: self.mv.to_string() }.serialize(s)
    }
}
