//! Line-oriented text format for a space and an optional self-map.
//!
//! ```text
//! # comments start with '#'
//! space
//! point A
//! point B
//! point C
//! dist A B 1
//! dist A C 3/2
//! dist B C 0.5
//! map
//! send A B
//! send B B
//! send C A
//! ```
//!
//! Distances may be integers, `p/q` fractions or decimal literals, parsed
//! exactly. Each unordered pair is listed at most once. When a `map` stanza
//! is present every point is the source of exactly one `send`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mapping::SelfMap;
use crate::rational::Rational;
use crate::space::{validate_metric, DistanceTable, FiniteMetricSpace, MetricViolation, PointId};

/// A parsed but not yet validated document.
#[derive(Debug, Clone)]
pub struct Document {
    pub points: Vec<PointId>,
    pub table: DistanceTable,
    /// `(source, image)` pairs, present when the file has a `map` stanza.
    pub sends: Option<Vec<(PointId, PointId)>>,
}

/// A validated space with its map, if one was given.
#[derive(Debug, Clone)]
pub struct Instance {
    pub space: Arc<FiniteMetricSpace>,
    pub map: Option<SelfMap>,
}

#[derive(PartialEq)]
enum Section {
    Start,
    Space,
    Map,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the text format. Syntax problems, unknown or duplicate points,
/// duplicate pairs and incomplete maps are parse errors; metric axioms are
/// not checked here.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut section = Section::Start;
    let mut points: BTreeMap<PointId, usize> = BTreeMap::new();
    let mut table = DistanceTable::new();
    let mut pairs_seen: BTreeMap<(PointId, PointId), usize> = BTreeMap::new();
    let mut dist_lines: Vec<(usize, PointId, PointId)> = Vec::new();
    let mut sends: Option<Vec<(usize, PointId, PointId)>> = None;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let point = |s: &str| PointId::new(s).map_err(|e| parse_err(line_no, e.to_string()));
        match (fields[0], fields.len()) {
            ("space", 1) => {
                if section != Section::Start {
                    return Err(parse_err(line_no, "`space` must open the file"));
                }
                section = Section::Space;
            }
            ("map", 1) => {
                if section != Section::Space {
                    return Err(parse_err(line_no, "`map` must follow the space stanza"));
                }
                section = Section::Map;
                sends = Some(Vec::new());
            }
            ("point", 2) if section == Section::Space => {
                let p = point(fields[1])?;
                if points.insert(p.clone(), line_no).is_some() {
                    return Err(parse_err(line_no, format!("duplicate point {p}")));
                }
            }
            ("dist", 4) if section == Section::Space => {
                let (a, b) = (point(fields[1])?, point(fields[2])?);
                let value: Rational =
                    fields[3]
                        .parse()
                        .map_err(|e: crate::error::ParseRationalError| {
                            parse_err(line_no, e.to_string())
                        })?;
                let key = if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                if let Some(first) = pairs_seen.insert(key, line_no) {
                    return Err(parse_err(
                        line_no,
                        format!("pair {a} {b} already given on line {first}"),
                    ));
                }
                dist_lines.push((line_no, a.clone(), b.clone()));
                table.insert(a, b, value);
            }
            ("send", 3) if section == Section::Map => {
                let (a, b) = (point(fields[1])?, point(fields[2])?);
                sends.as_mut().expect("map section").push((line_no, a, b));
            }
            (kw @ ("point" | "dist" | "send"), _)
                if matches!(
                    (kw, &section),
                    ("point" | "dist", Section::Space) | ("send", Section::Map)
                ) =>
            {
                return Err(parse_err(
                    line_no,
                    format!("malformed `{kw}` line: {content:?}"),
                ));
            }
            (kw, _) => {
                return Err(parse_err(line_no, format!("unexpected {kw:?} here")));
            }
        }
    }

    if section == Section::Start {
        return Err(parse_err(1, "missing `space` stanza"));
    }
    for (line_no, a, b) in &dist_lines {
        for p in [a, b] {
            if !points.contains_key(p) {
                return Err(parse_err(*line_no, format!("unknown point {p}")));
            }
        }
    }

    let sends = match sends {
        None => None,
        Some(list) => {
            let mut seen: BTreeMap<&PointId, usize> = BTreeMap::new();
            for (line_no, a, b) in &list {
                for p in [a, b] {
                    if !points.contains_key(p) {
                        return Err(parse_err(*line_no, format!("unknown point {p}")));
                    }
                }
                if let Some(first) = seen.insert(a, *line_no) {
                    return Err(parse_err(
                        *line_no,
                        format!("{a} already sent on line {first}"),
                    ));
                }
            }
            if let Some(missing) = points.keys().find(|p| !seen.contains_key(p)) {
                return Err(parse_err(
                    text.lines().count().max(1),
                    format!("map has no image for {missing}"),
                ));
            }
            Some(list.into_iter().map(|(_, a, b)| (a, b)).collect())
        }
    };

    Ok(Document {
        points: points.into_keys().collect(),
        table,
        sends,
    })
}

impl Document {
    pub fn violations(&self) -> Vec<MetricViolation> {
        validate_metric(&self.points, &self.table)
    }

    /// Validates the metric and builds the map.
    pub fn into_instance(self) -> Result<Instance> {
        let space = Arc::new(FiniteMetricSpace::from_table(self.points, &self.table)?);
        let map = match self.sends {
            None => None,
            Some(sends) => Some(SelfMap::from_pairs(
                space.clone(),
                sends.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            )?),
        };
        Ok(Instance { space, map })
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_document(text)?.into_instance()
}

/// Writes a space in the text format, points and pairs in lexicographic
/// order.
pub fn write_space(space: &FiniteMetricSpace) -> String {
    let mut out = String::from("space\n");
    for p in space.points() {
        writeln!(out, "point {p}").unwrap();
    }
    for (i, j, d) in space.pairs() {
        writeln!(out, "dist {} {} {}", space.point(i), space.point(j), d).unwrap();
    }
    out
}

/// Writes a space and map; `parse_instance` reads it back to an equal
/// instance.
pub fn write_instance(map: &SelfMap) -> String {
    let space = map.space();
    let mut out = write_space(space);
    out.push_str("map\n");
    for i in 0..space.len() {
        writeln!(out, "send {} {}", space.point(i), space.point(map.apply(i))).unwrap();
    }
    out
}
