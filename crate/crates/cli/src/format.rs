//! Line-oriented matroid and table files.
//!
//! Matroid file:
//!
//! ```text
//! name: triangle
//! elements: a, b, c
//! representation: graphic
//! vertices: 3
//! edge: 0 1
//! edge: 1 2
//! edge: 2 0
//! ```
//!
//! `representation` is one of `uniform` (with `rank: k`), `graphic` (with
//! `vertices:` and one `edge: u v` per element), `linear_gf2` (one
//! `column: 0101` per element) or `explicit` (one `independent: {a,b}` per
//! member of the family).
//!
//! Table file:
//!
//! ```text
//! elements: a, b
//! r({}|{}) = 0
//! r({a}|{}) = 1
//! ...
//! ```
//!
//! with exactly one entry per nested pair; `inf` is the only spelling of `∞`.
//! Blank lines and lines starting with `#` are ignored in both.

use std::collections::HashMap;
use std::fmt::Write as _;

use relrank_core::relrank::MAX_TABLE;
use relrank_core::{Error as CoreError, ExtendedNat, GroundSet, Matroid, RelRankTable, SubsetMask};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    Uniform {
        rank: usize,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    LinearGf2 {
        columns: Vec<Vec<bool>>,
    },
    Explicit {
        independents: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub representation: Representation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub elements: Vec<String>,
    pub entries: Vec<(Vec<String>, Vec<String>, ExtendedNat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecFile {
    Matroid(MatroidSpec),
    Table(TableSpec),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn split_key(line: &str, lineno: usize) -> Result<(&str, &str), CliError> {
    line.split_once(':')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| CliError::parse(lineno, format!("expected `key: value`, got {line:?}")))
}

fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label.chars().any(|c| {
            c.is_whitespace() || matches!(c, '{' | '}' | ',' | '|' | '(' | ')' | '=' | ':' | '#')
        })
}

fn parse_elements(value: &str, lineno: usize) -> Result<Vec<String>, CliError> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|l| {
            let l = l.trim();
            if valid_label(l) {
                Ok(l.to_string())
            } else {
                Err(CliError::parse(
                    lineno,
                    format!("invalid element label {l:?}"),
                ))
            }
        })
        .collect()
}

/// Parses `{a,b}` (braces required) into its labels.
pub fn parse_set(text: &str) -> Result<Vec<String>, String> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| format!("expected a braced set like {{a,b}}, got {text:?}"))?
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|l| {
            let l = l.trim();
            if valid_label(l) {
                Ok(l.to_string())
            } else {
                Err(format!("invalid element label {l:?} in {text:?}"))
            }
        })
        .collect()
}

fn parse_value(text: &str) -> Result<ExtendedNat, String> {
    match text.trim() {
        "inf" => Ok(ExtendedNat::Infinite),
        t => t
            .parse::<u64>()
            .map(ExtendedNat::Finite)
            .map_err(|_| format!("expected a natural number or `inf`, got {t:?}")),
    }
}

pub fn parse_file(text: &str) -> Result<SpecFile, CliError> {
    let is_matroid = content_lines(text).any(|(_, l)| {
        l.split_once(':')
            .is_some_and(|(k, _)| k.trim() == "representation")
    });
    if is_matroid {
        parse_matroid(text).map(SpecFile::Matroid)
    } else {
        parse_table(text).map(SpecFile::Table)
    }
}

pub fn parse_matroid(text: &str) -> Result<MatroidSpec, CliError> {
    let mut name = None;
    let mut elements = None;
    let mut representation = None;
    let mut rank = None;
    let mut vertices = None;
    let mut edges = Vec::new();
    let mut columns = Vec::new();
    let mut independents = Vec::new();

    for (lineno, line) in content_lines(text) {
        let (key, value) = split_key(line, lineno)?;
        let number = |v: &str| {
            v.parse::<usize>().map_err(|_| {
                CliError::parse(lineno, format!("expected a natural number, got {v:?}"))
            })
        };
        match key {
            "name" => name = Some(value.to_string()),
            "elements" => elements = Some(parse_elements(value, lineno)?),
            "representation" => representation = Some(value.to_string()),
            "rank" => rank = Some(number(value)?),
            "vertices" => vertices = Some(number(value)?),
            "edge" => {
                let ends: Vec<&str> = value.split_whitespace().collect();
                let [u, v] = ends[..] else {
                    return Err(CliError::parse(lineno, "edge needs two vertex numbers"));
                };
                edges.push((number(u)?, number(v)?));
            }
            "column" => {
                let bits = value
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(CliError::parse(
                            lineno,
                            format!("column must be a 0/1 string, got {value:?}"),
                        )),
                    })
                    .collect::<Result<Vec<bool>, _>>()?;
                columns.push(bits);
            }
            "independent" => {
                independents.push(parse_set(value).map_err(|m| CliError::parse(lineno, m))?)
            }
            other => return Err(CliError::parse(lineno, format!("unknown key {other:?}"))),
        }
    }

    let elements = elements.ok_or_else(|| CliError::Parse("missing `elements:` line".into()))?;
    let representation = match representation.as_deref() {
        Some("uniform") => Representation::Uniform {
            rank: rank.ok_or_else(|| CliError::Parse("uniform matroid needs `rank:`".into()))?,
        },
        Some("graphic") => {
            if edges.len() != elements.len() {
                return Err(CliError::Parse(format!(
                    "graphic matroid has {} elements but {} edges",
                    elements.len(),
                    edges.len()
                )));
            }
            Representation::Graphic {
                vertices: vertices
                    .ok_or_else(|| CliError::Parse("graphic matroid needs `vertices:`".into()))?,
                edges,
            }
        }
        Some("linear_gf2") => {
            if columns.len() != elements.len() {
                return Err(CliError::Parse(format!(
                    "linear_gf2 matroid has {} elements but {} columns",
                    elements.len(),
                    columns.len()
                )));
            }
            Representation::LinearGf2 { columns }
        }
        Some("explicit") => Representation::Explicit { independents },
        Some(other) => return Err(CliError::Parse(format!("unknown representation {other:?}"))),
        None => return Err(CliError::Parse("missing `representation:` line".into())),
    };
    Ok(MatroidSpec {
        name: name.unwrap_or_default(),
        elements,
        representation,
    })
}

pub fn parse_table(text: &str) -> Result<TableSpec, CliError> {
    let mut elements = None;
    let mut entries = Vec::new();
    for (lineno, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("r(") {
            let (pair, value) = rest
                .split_once(')')
                .ok_or_else(|| CliError::parse(lineno, "entry is missing `)`"))?;
            let (a, b) = pair
                .split_once('|')
                .ok_or_else(|| CliError::parse(lineno, "entry needs the form r(A|B) = v"))?;
            let value = value
                .trim()
                .strip_prefix('=')
                .ok_or_else(|| CliError::parse(lineno, "entry is missing `=`"))?;
            let a = parse_set(a).map_err(|m| CliError::parse(lineno, m))?;
            let b = parse_set(b).map_err(|m| CliError::parse(lineno, m))?;
            let value = parse_value(value).map_err(|m| CliError::parse(lineno, m))?;
            entries.push((a, b, value));
            continue;
        }
        let (key, value) = split_key(line, lineno)?;
        match key {
            "elements" => elements = Some(parse_elements(value, lineno)?),
            other => return Err(CliError::parse(lineno, format!("unknown key {other:?}"))),
        }
    }
    Ok(TableSpec {
        elements: elements.ok_or_else(|| CliError::Parse("missing `elements:` line".into()))?,
        entries,
    })
}

fn ground_of(elements: &[String]) -> Result<GroundSet, CliError> {
    GroundSet::new(elements.iter().cloned()).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn mask_of(ground: &GroundSet, labels: &[String]) -> Result<SubsetMask, CliError> {
    ground
        .mask_of(labels.iter().map(String::as_str))
        .map_err(CliError::from)
}

impl MatroidSpec {
    /// Runs the constructor named by the representation. An explicit family
    /// violating the independence axioms comes back as
    /// [`CoreError::Axioms`] inside [`CliError::Core`].
    pub fn build(&self) -> Result<Matroid, CliError> {
        let ground = ground_of(&self.elements)?;
        let built = match &self.representation {
            Representation::Uniform { rank } => Matroid::uniform(*rank, self.elements.len()),
            Representation::Graphic { vertices, edges } => Matroid::graphic(*vertices, edges),
            Representation::LinearGf2 { columns } => Matroid::linear_gf2(columns),
            Representation::Explicit { independents } => {
                let family = independents
                    .iter()
                    .map(|set| mask_of(&ground, set))
                    .collect::<Result<Vec<_>, _>>()?;
                return Matroid::from_explicit_family(ground, family).map_err(CliError::from);
            }
        };
        match built {
            Ok(m) => Ok(m.relabel(ground)?),
            Err(e @ CoreError::Axioms(_)) => Err(CliError::Core(e)),
            Err(e) => Err(CliError::Parse(e.to_string())),
        }
    }
}

impl TableSpec {
    /// Checks that every nested pair appears exactly once and builds the table.
    pub fn build(&self) -> Result<RelRankTable, CliError> {
        let ground = ground_of(&self.elements)?;
        if ground.len() > MAX_TABLE {
            return Err(CliError::Parse(format!(
                "table has {} elements, limit is {MAX_TABLE}",
                ground.len()
            )));
        }
        let mut values = HashMap::new();
        for (a, b, v) in &self.entries {
            let (ma, mb) = (mask_of(&ground, a)?, mask_of(&ground, b)?);
            if !mb.is_subset(ma) {
                return Err(CliError::Parse(format!(
                    "entry r({}|{}) is not a nested pair",
                    ground.format(ma),
                    ground.format(mb)
                )));
            }
            if values.insert((ma, mb), *v).is_some() {
                return Err(CliError::Parse(format!(
                    "entry r({}|{}) appears twice",
                    ground.format(ma),
                    ground.format(mb)
                )));
            }
        }
        let mut missing = None;
        let table = RelRankTable::from_fn(ground.clone(), |a, b| match values.get(&(a, b)) {
            Some(&v) => v,
            None => {
                missing.get_or_insert((a, b));
                ExtendedNat::ZERO
            }
        })?;
        if let Some((a, b)) = missing {
            return Err(CliError::Parse(format!(
                "entry r({}|{}) is missing",
                ground.format(a),
                ground.format(b)
            )));
        }
        Ok(table)
    }
}

/// Serializes a table in nested-pair stream order.
pub fn write_table(table: &RelRankTable) -> String {
    let ground = table.ground();
    let mut out = String::new();
    let _ = writeln!(out, "elements: {}", ground.labels().join(", "));
    for (a, b, v) in table.entries() {
        let _ = writeln!(out, "r({}|{}) = {}", ground.format(a), ground.format(b), v);
    }
    out
}
