//! Edge-list files, grid CSV and JSON reports.
//!
//! Edge lists hold one `i j` pair per line; `#` lines and blank lines are
//! skipped. Node ids may be sparse: they are compacted to `0..n` in ascending
//! order and the original ids are kept alongside the graph.
//!
//! CSV floats carry 17 significant digits. JSON floats use the shortest
//! representation that parses back to the same bits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph, Node};
use crate::sweep::SweepGrid;
use crate::theory::Plane;

pub const SCHEMA_VERSION: &str = "1";

/// A parsed edge list.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub graph: Graph,
    /// Original id of each compacted node.
    pub ids: Vec<u64>,
}

impl EdgeList {
    /// Ids were already `0..n`.
    pub fn is_identity(&self) -> bool {
        self.ids.iter().enumerate().all(|(i, &id)| id == i as u64)
    }
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected two node ids, found {} fields", fields.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<i64>().map_err(|e| Error::Parse {
                line: line_no,
                msg: format!("`{s}`: {e}"),
            })
        };
        let (a, b) = (parse(fields[0])?, parse(fields[1])?);
        if a < 0 || b < 0 {
            return Err(Error::InvalidEdge(a, b));
        }
        raw.push((a as u64, b as u64));
    }
    let mut ids: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let index = |id: u64| ids.binary_search(&id).expect("id collected above");
    let edges: Vec<(Node, Node)> = raw.iter().map(|&(a, b)| (index(a), index(b))).collect();
    let graph = build_graph(&edges, Some(ids.len()))?;
    Ok(EdgeList { graph, ids })
}

pub fn read_edge_list(path: &Path) -> Result<EdgeList> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text)
}

/// One `i j` line per edge, `i < j`, in ascending order.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(g.edge_count() * 12);
    for (a, b) in g.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// 17 significant digits: enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn axis_names(plane: Plane) -> (&'static str, &'static str) {
    match plane {
        Plane::UP => ("u", "p"),
        Plane::CH => ("c", "H"),
    }
}

/// One row per cell; cells without statistics leave the statistic fields empty.
pub fn grid_csv(grid: &SweepGrid) -> String {
    let (xn, yn) = axis_names(grid.plane);
    let mut out = format!("{xn},{yn},mean_ratio,ln_mean_ratio,std_err,ratio_of_means,runs,censored\n");
    for cell in &grid.cells {
        let _ = match &cell.stats {
            Some(s) => writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                fmt_f64(cell.x),
                fmt_f64(cell.y),
                fmt_f64(s.mean_ratio),
                fmt_f64(s.mean_ratio.ln()),
                fmt_f64(s.std_err),
                fmt_f64(s.ratio_of_means),
                s.runs,
                s.censored
            ),
            None => writeln!(out, "{},{},,,,,,", fmt_f64(cell.x), fmt_f64(cell.y)),
        };
    }
    out
}

/// Pretty JSON with a `schema_version` field added to the top-level object.
pub fn json_report<T: Serialize>(body: &T) -> Result<String> {
    let mut value = serde_json::to_value(body).map_err(|e| Error::Io(e.to_string()))?;
    if let serde_json::Value::Object(map) = &mut value {
        map.insert("schema_version".into(), SCHEMA_VERSION.into());
    }
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Parses an axis such as `1e2,1e4,1e6` or `0:0.5:0.05`, or a mix of both.
/// Ranges include the end point when it lies on the step grid.
pub fn parse_axis(spec: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::InvalidParams(format!("axis `{spec}`: {msg}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| bad(format!("`{s}`: {e}")));
    let mut out = Vec::new();
    for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(num(v)?),
            [a, b] | [a, b, _] => {
                let (start, end) = (num(a)?, num(b)?);
                let step = if parts.len() == 3 { num(parts[2])? } else { 1.0 };
                if !(step > 0.0) || !start.is_finite() || !end.is_finite() || end < start {
                    return Err(bad("range needs start <= end and step > 0".into()));
                }
                let count = ((end - start) / step + 1e-9).floor() as usize + 1;
                if count > 1_000_000 {
                    return Err(bad("range has more than 10^6 points".into()));
                }
                out.extend((0..count).map(|i| start + i as f64 * step));
            }
            _ => return Err(bad(format!("cannot read `{item}`"))),
        }
    }
    if out.is_empty() {
        return Err(bad("no values".into()));
    }
    if out.iter().any(|v| !v.is_finite()) {
        return Err(bad("values must be finite".into()));
    }
    Ok(out)
}

/// [`parse_axis`] restricted to non-negative integers.
pub fn parse_int_axis(spec: &str) -> Result<Vec<usize>> {
    parse_axis(spec)?
        .into_iter()
        .map(|v| {
            if v >= 0.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(Error::InvalidParams(format!("axis `{spec}`: {v} is not a non-negative integer")))
            }
        })
        .collect()
}
