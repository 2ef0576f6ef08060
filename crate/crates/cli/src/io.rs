//! File formats.
//!
//! A Cayley file has the order `n` on its first line, then `n` lines of `n`
//! whitespace-separated entries in `0..n`. If the identity is some element
//! `e ≠ 0`, labels `0` and `e` are swapped on load so that `0` is the
//! identity; a Latin square without identity is rejected.
//!
//! A group specification is TOML naming a catalog group, the elements
//! generating `H`, and the transversal:
//!
//! ```toml
//! group = "F5^2:Z3"
//! subgroup = [1]
//! transversal = "canonical"   # or a list of element indices
//! ```
//!
//! Element indices refer to the breadth-first enumeration order that
//! `bolkit catalog group <id>` prints.

use std::fs;

use serde::Deserialize;

use bolkit_core::transversal::TransversalSystem;
use bolkit_core::{FiniteLoop, Limits};

use crate::catalog;
use crate::error::CliError;

fn io_error(path: &str, source: std::io::Error) -> CliError {
    CliError::Io { path: path.to_string(), source }
}

fn parse_error(path: &str, line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.to_string(), line, column, message: message.into() }
}

/// Parses Cayley-file text; `path` only labels errors. Lines and columns
/// are 1-based.
pub fn parse_cayley(text: &str, path: &str) -> Result<FiniteLoop, CliError> {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.first().ok_or_else(|| parse_error(path, 1, 1, "empty file"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| parse_error(path, 1, 1, format!("expected the order, found `{}`", header.trim())))?;
    if n == 0 {
        return Err(parse_error(path, 1, 1, "order must be positive"));
    }
    if let Some((i, _)) = lines.iter().enumerate().skip(n + 1).find(|(_, l)| !l.trim().is_empty()) {
        return Err(parse_error(path, i + 1, 1, format!("unexpected content after {n} rows")));
    }
    let mut table = Vec::with_capacity(n * n);
    for r in 0..n {
        let line_no = r + 2;
        let line = lines
            .get(r + 1)
            .ok_or_else(|| parse_error(path, line_no, 1, format!("expected {n} rows, found {r}")))?;
        let mut count = 0;
        let mut column = 1;
        let mut rest = *line;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            column += rest[..start].chars().count();
            rest = &rest[start..];
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let token = &rest[..end];
            let value: usize = token.parse().map_err(|_| {
                parse_error(path, line_no, column, format!("`{token}` is not a non-negative integer"))
            })?;
            if value >= n {
                return Err(parse_error(
                    path,
                    line_no,
                    column,
                    format!("entry {value} is out of range 0..{n}"),
                ));
            }
            if count == n {
                return Err(parse_error(path, line_no, column, format!("more than {n} entries")));
            }
            table.push(value);
            count += 1;
            column += token.chars().count();
            rest = &rest[end..];
        }
        if count < n {
            return Err(parse_error(path, line_no, column, format!("expected {n} entries, found {count}")));
        }
    }
    Ok(FiniteLoop::from_table_normalized(n, table)?.0)
}

pub fn load_cayley(path: &str) -> Result<FiniteLoop, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_cayley(&text, path)
}

pub fn format_cayley(l: &FiniteLoop) -> String {
    let mut out = format!("{}\n", l.order());
    for row in l.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn save_cayley(l: &FiniteLoop, path: &str) -> Result<(), CliError> {
    fs::write(path, format_cayley(l)).map_err(|e| io_error(path, e))
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum TransversalSpec {
    Elements(Vec<usize>),
    Mode(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub group: String,
    pub subgroup: Vec<usize>,
    pub transversal: TransversalSpec,
}

pub fn parse_group_spec(text: &str, path: &str) -> Result<GroupSpec, CliError> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|s| {
                let before = &text[..s.start];
                let line = before.matches('\n').count() + 1;
                let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
                (line, column)
            })
            .unwrap_or((1, 1));
        parse_error(path, line, column, e.message().to_string())
    })
}

pub fn load_group_spec(path: &str) -> Result<GroupSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_group_spec(&text, path)
}

impl GroupSpec {
    pub fn system(&self, limits: &Limits) -> Result<TransversalSystem, CliError> {
        let g = catalog::group(&self.group, limits)?;
        if let Some(&bad) = self.subgroup.iter().find(|&&i| i >= g.order()) {
            return Err(CliError::Spec(format!("element index {bad} exceeds |G| = {}", g.order())));
        }
        let h = g.subgroup_generated(&self.subgroup.iter().copied().collect());
        Ok(match &self.transversal {
            TransversalSpec::Mode(m) if m == "canonical" => TransversalSystem::canonical(g, h)?,
            TransversalSpec::Mode(m) => {
                return Err(CliError::Spec(format!(
                    "transversal must be a list or \"canonical\", got \"{m}\""
                )))
            }
            TransversalSpec::Elements(t) => {
                if let Some(&bad) = t.iter().find(|&&i| i >= g.order()) {
                    return Err(CliError::Spec(format!("element index {bad} exceeds |G| = {}", g.order())));
                }
                TransversalSystem::new(g, h, t.clone())?
            }
        })
    }
}
