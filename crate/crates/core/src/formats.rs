//! Readers for framework, labelling and weight-table files.

use std::str::FromStr;

use serde::Deserialize;

use crate::af::{ArgumentationFramework, FrameworkBuilder, Label, Labelling};
use crate::distance::{DistanceMeasure, WeightTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Tgf,
    Apx,
}

impl InputFormat {
    /// Guesses the format from a file name; `.apx` and `.lp` are APX,
    /// anything else TGF.
    pub fn from_path(path: &str) -> Self {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".apx") || lower.ends_with(".lp") {
            InputFormat::Apx
        } else {
            InputFormat::Tgf
        }
    }
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tgf" => Ok(InputFormat::Tgf),
            "apx" => Ok(InputFormat::Apx),
            other => Err(Error::InvalidArgument(format!("unknown format `{other}`"))),
        }
    }
}

pub fn parse_framework(text: &str, format: InputFormat) -> Result<ArgumentationFramework> {
    match format {
        InputFormat::Tgf => parse_tgf(text),
        InputFormat::Apx => parse_apx(text),
    }
}

fn reword(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}

/// Trivial Graph Format: one node per line, a `#` line, then `src dst`
/// edges. Anything after the first token of a node line or the second token
/// of an edge line is a label and ignored.
pub fn parse_tgf(text: &str) -> Result<ArgumentationFramework> {
    let mut builder = FrameworkBuilder::new();
    let mut in_edges = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        if line == "#" {
            if in_edges {
                return Err(Error::parse(lineno, "second `#` separator"));
            }
            in_edges = true;
            continue;
        }
        let mut tokens = line.split_whitespace();
        if in_edges {
            let (Some(src), Some(dst)) = (tokens.next(), tokens.next()) else {
                return Err(Error::parse(lineno, "edge line needs a source and a target"));
            };
            builder.add_attack(src, dst).map_err(|e| reword(lineno, e))?;
        } else {
            let id = tokens.next().expect("non-empty line");
            builder.add_argument(id).map_err(|e| reword(lineno, e))?;
        }
    }
    if !in_edges {
        return Err(Error::parse(text.lines().count().max(1), "missing `#` separator"));
    }
    Ok(builder.build())
}

fn strip_call<'a>(stmt: &'a str, head: &str) -> Option<&'a str> {
    stmt.strip_prefix(head)?
        .trim_start()
        .strip_prefix('(')?
        .trim_end()
        .strip_suffix(')')
}

/// ASPARTIX format: `arg(a).` and `att(a,b).` statements, `%` comments.
/// Attacks must follow the declarations of both endpoints.
pub fn parse_apx(text: &str) -> Result<ArgumentationFramework> {
    let mut builder = FrameworkBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('%').next().unwrap_or("").trim();
        for stmt in line.split_terminator('.') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            if let Some(body) = strip_call(stmt, "arg") {
                builder.add_argument(body.trim()).map_err(|e| reword(lineno, e))?;
            } else if let Some(body) = strip_call(stmt, "att") {
                let mut parts = body.split(',');
                let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(Error::parse(lineno, format!("malformed attack `{stmt}`")));
                };
                builder.add_attack(a.trim(), b.trim()).map_err(|e| reword(lineno, e))?;
            } else {
                return Err(Error::parse(lineno, format!("unrecognized statement `{stmt}`")));
            }
        }
        if !line.is_empty() && !line.ends_with('.') {
            return Err(Error::parse(lineno, "statement must end with `.`"));
        }
    }
    Ok(builder.build())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LabellingJson {
    #[serde(default, rename = "in")]
    ins: Vec<String>,
    #[serde(default)]
    out: Vec<String>,
    #[serde(default)]
    und: Vec<String>,
}

/// Reads a labelling given either as `{"in":[..],"out":[..],"und":[..]}` or
/// as a token list `in(a) out(b) und(c)`. Every argument must be labelled
/// exactly once.
pub fn parse_labelling(text: &str, af: &ArgumentationFramework) -> Result<Labelling> {
    let trimmed = text.trim();
    let entries: Vec<(String, Label)> = if trimmed.starts_with('{') {
        let json: LabellingJson = serde_json::from_str(trimmed)
            .map_err(|e| Error::parse(e.line(), format!("labelling object: {e}")))?;
        json.ins
            .into_iter()
            .map(|a| (a, Label::In))
            .chain(json.out.into_iter().map(|a| (a, Label::Out)))
            .chain(json.und.into_iter().map(|a| (a, Label::Und)))
            .collect()
    } else {
        trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|tok| {
                let (label, rest) = tok
                    .split_once('(')
                    .ok_or_else(|| Error::parse(1, format!("malformed labelling token `{tok}`")))?;
                let name = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::parse(1, format!("malformed labelling token `{tok}`")))?;
                let label = label.parse::<Label>().map_err(|e| reword(1, e))?;
                Ok((name.to_string(), label))
            })
            .collect::<Result<_>>()?
    };
    let mut labels: Vec<Option<Label>> = vec![None; af.len()];
    for (name, label) in entries {
        let pos = af.position(&name)?;
        if let Some(prev) = labels[pos] {
            return Err(Error::InvalidArgument(format!(
                "argument `{name}` is labelled both {prev} and {label}"
            )));
        }
        labels[pos] = Some(label);
    }
    let missing: Vec<&str> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_none())
        .map(|(i, _)| af.name(i))
        .collect();
    if !missing.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "labelling is not total, missing: {}",
            missing.join(", ")
        )));
    }
    Ok(Labelling::from_labels(labels.into_iter().map(Option::unwrap).collect()))
}

/// Reads `argument from to weight` lines. Omitted entries keep Hamming
/// costs. Zero off-diagonal weights are accepted with a warning.
pub fn parse_weight_table(text: &str, af: &ArgumentationFramework) -> Result<DistanceMeasure> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [arg, from, to, weight] = fields[..] else {
            return Err(Error::parse(lineno, "expected `argument from_label to_label weight`"));
        };
        let arg = af.position(arg).map_err(|e| reword(lineno, e))?;
        let from: Label = from.parse().map_err(|e| reword(lineno, e))?;
        let to: Label = to.parse().map_err(|e| reword(lineno, e))?;
        let weight: u64 = weight
            .parse()
            .map_err(|_| Error::parse(lineno, format!("weight `{weight}` is not a non-negative integer")))?;
        if from == to && weight != 0 {
            return Err(Error::parse(lineno, "keeping a label must cost 0"));
        }
        entries.push((arg, from, to, weight));
    }
    let table = WeightTable::from_entries(af.len(), entries)?;
    for (arg, from, to) in table.zero_changes() {
        log::warn!(
            "weight table: changing `{}` from {from} to {to} costs 0; distinct labellings may be at distance 0",
            af.name(arg)
        );
    }
    Ok(DistanceMeasure::Weighted(table))
}
