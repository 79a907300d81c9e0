//! Graph, colouring and set-family file formats.
//!
//! Graphs come in two flavours:
//!
//! * edge format: `p edge <n> <m>` followed by `m` lines `e <u> <v>` with
//!   1-indexed endpoints, `u < v`, no duplicates. Lines starting with `c`
//!   are comments.
//! * JSON: `{"n": 4, "edges": [[0, 1], ...]}`, 0-indexed. Layered graphs
//!   add `"layers"` (one entry per vertex) and `"base"`.
//!
//! [`read_graph_str`] sniffs the format: input whose first non-blank
//! character is `{` is JSON.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::verify::{Coloring, SetFamily};

/// Serialises `g` in edge format. The output is canonical: edges are
/// written in lexicographic order with `u < v`.
pub fn write_edge_format(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_edge_format(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if tok.next() != Some("edge") {
                    return Err(err("expected `p edge <n> <m>`".into()));
                }
                let n = parse_num(tok.next(), line_no)?;
                let m = parse_num(tok.next(), line_no)?;
                if tok.next().is_some() {
                    return Err(err("trailing tokens after `p edge <n> <m>`".into()));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| err("edge line before `p edge` header".into()))?;
                let u = parse_num(tok.next(), line_no)?;
                let v = parse_num(tok.next(), line_no)?;
                if tok.next().is_some() {
                    return Err(err("trailing tokens after `e <u> <v>`".into()));
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(err(format!("endpoint out of range 1..={n}")));
                }
                if u >= v {
                    return Err(err(format!("expected u < v, got {u} {v}")));
                }
                if !seen.insert((u, v)) {
                    return Err(err(format!("duplicate edge {u} {v}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(err(format!("unknown line type `{other}`"))),
            None => unreachable!(),
        }
    }
    let (n, m) = header.ok_or(Error::Parse { line: 0, msg: "missing `p edge` header".into() })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize> {
    let t = tok.ok_or(Error::Parse { line, msg: "missing number".into() })?;
    t.parse().map_err(|_| Error::Parse { line, msg: format!("not a non-negative integer: `{t}`") })
}

/// On-disk JSON shape of a graph, optionally layered.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<f64>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            layers: None,
            base: None,
        }
    }

    pub fn from_weighted(wg: &WeightedGraph) -> Self {
        GraphJson {
            layers: Some(wg.layers().to_vec()),
            base: Some(wg.base()),
            ..GraphJson::from_graph(wg.graph())
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }

    /// `None` when the file carries no layer information.
    pub fn to_weighted(&self) -> Result<Option<WeightedGraph>> {
        match (&self.layers, self.base) {
            (None, None) => Ok(None),
            (Some(layers), base) => Ok(Some(WeightedGraph::new(
                self.to_graph()?,
                layers.clone(),
                base.unwrap_or(crate::models::DEFAULT_BASE),
            )?)),
            (None, Some(_)) => invalid("`base` given without `layers`"),
        }
    }
}

pub fn write_graph_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).unwrap() + "\n"
}

pub fn write_weighted_json(wg: &WeightedGraph) -> String {
    serde_json::to_string(&GraphJson::from_weighted(wg)).unwrap() + "\n"
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Parses either graph format. Layer data, if present, is validated but
/// dropped; use [`read_weighted_str`] to keep it.
pub fn read_graph_str(text: &str) -> Result<Graph> {
    if looks_like_json(text) {
        let gj: GraphJson = serde_json::from_str(text)?;
        gj.to_weighted()?;
        gj.to_graph()
    } else {
        parse_edge_format(text)
    }
}

pub fn read_weighted_str(text: &str) -> Result<WeightedGraph> {
    if !looks_like_json(text) {
        return invalid("layered graphs are only stored as JSON");
    }
    let gj: GraphJson = serde_json::from_str(text)?;
    gj.to_weighted()?.ok_or_else(|| Error::InvalidInput("graph file has no `layers` field".into()))
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    read_graph_str(&std::fs::read_to_string(path)?)
}

/// `{"colors": [..], "filler": c | null}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringJson {
    pub colors: Vec<u32>,
    #[serde(default)]
    pub filler: Option<u32>,
}

impl From<&Coloring> for ColoringJson {
    fn from(c: &Coloring) -> Self {
        ColoringJson { colors: c.colors().to_vec(), filler: c.filler() }
    }
}

impl From<ColoringJson> for Coloring {
    fn from(c: ColoringJson) -> Self {
        Coloring::with_filler(c.colors, c.filler)
    }
}

pub fn read_coloring_str(text: &str) -> Result<Coloring> {
    let cj: ColoringJson = serde_json::from_str(text)?;
    Ok(cj.into())
}

pub fn write_coloring_json(c: &Coloring) -> String {
    serde_json::to_string(&ColoringJson::from(c)).unwrap() + "\n"
}

/// `{"sets": [[..], ..]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub sets: Vec<Vec<usize>>,
}

impl FamilyJson {
    pub fn from_family(f: &SetFamily) -> Self {
        FamilyJson { sets: f.sets().iter().map(VertexSet::to_vec).collect() }
    }

    pub fn to_family(&self, n: usize) -> Result<SetFamily> {
        let sets = self
            .sets
            .iter()
            .map(|s| VertexSet::from_members(n, s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFamily::new(sets))
    }
}

pub fn read_family_str(text: &str, n: usize) -> Result<SetFamily> {
    let fj: FamilyJson = serde_json::from_str(text)?;
    fj.to_family(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_format_is_canonical() {
        let g = Graph::from_edges(4, [(2, 1), (0, 3), (0, 1)]).unwrap();
        assert_eq!(write_edge_format(&g), "p edge 4 3\ne 1 2\ne 1 4\ne 2 3\n");
    }

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "c a path\n\np edge 3 2\nc inner comment\ne 1 2\ne 2 3\n";
        assert_eq!(parse_edge_format(text).unwrap(), Graph::path(3));
    }

    #[test]
    fn rejects_malformed_edge_files() {
        for bad in [
            "e 1 2\n",
            "p edge 3 1\ne 2 1\n",
            "p edge 3 2\ne 1 2\ne 1 2\n",
            "p edge 3 1\ne 1 4\n",
            "p edge 3 2\ne 1 2\n",
            "p edge 3 1\ne 1 1\n",
            "p col 3 0\n",
            "x 1 2\n",
            "",
        ] {
            assert!(parse_edge_format(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn json_graphs() {
        let g = read_graph_str(r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(write_graph_json(&g), "{\"n\":3,\"edges\":[[0,1],[1,2]]}\n");
        assert!(read_graph_str(r#"{"n": 2, "edges": [[0, 2]]}"#).is_err());
        assert!(read_graph_str(r#"{"n": 2, "edges": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn weighted_json_round_trip() {
        let wg = WeightedGraph::new(Graph::path(3), vec![1, 1, 2], 0.99).unwrap();
        let text = write_weighted_json(&wg);
        assert_eq!(read_weighted_str(&text).unwrap(), wg);
        assert_eq!(read_graph_str(&text).unwrap(), Graph::path(3));
        assert!(read_weighted_str(&write_graph_json(&Graph::path(3))).is_err());
    }

    #[test]
    fn coloring_and_family_files() {
        let c = read_coloring_str(r#"{"colors": [1, 2, 2], "filler": null}"#).unwrap();
        assert_eq!(c.colors(), &[1, 2, 2]);
        assert_eq!(c.filler(), None);
        let c = read_coloring_str(r#"{"colors": [0, 1]}"#).unwrap();
        assert_eq!(c.filler(), None);
        let f = read_family_str(r#"{"sets": [[0], [1, 2]]}"#, 3).unwrap();
        assert_eq!(f.len(), 2);
        assert!(read_family_str(r#"{"sets": [[3]]}"#, 3).is_err());
    }
}
