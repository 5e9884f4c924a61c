//! Plain-text graph interchange.
//!
//! ```text
//! xsect-graph 1
//! dim 2
//! grid 8 8            optional: cell resolution, vertices in grid order
//! time 1              optional build metadata
//! epsilon 0.1767766952966369
//! flow 9a3c...        optional flow fingerprint, hexadecimal
//! vertices 64
//! edges 576
//! 0 8 0 0             one edge per line: source target winding...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Edges are written in
//! source order, so writing a graph read from a file reproduces it byte for byte.

use std::fmt::Write as _;

use xsect_core::{Digraph, Grid, TransitionGraph, WindingVector};

use crate::error::Error;

pub const MAGIC: &str = "xsect-graph 1";

#[derive(Clone, Debug, PartialEq)]
pub struct GraphFile {
    pub dim: usize,
    pub grid: Option<Grid>,
    pub time: Option<f64>,
    pub epsilon: Option<f64>,
    pub flow: Option<u64>,
    pub graph: Digraph,
}

impl GraphFile {
    pub fn from_transition(tg: &TransitionGraph) -> GraphFile {
        GraphFile {
            dim: tg.grid.dim(),
            grid: Some(tg.grid),
            time: Some(tg.params.t),
            epsilon: Some(tg.params.epsilon),
            flow: Some(tg.flow_fingerprint),
            graph: tg.graph.clone(),
        }
    }
}

pub fn write(file: &GraphFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "dim {}", file.dim);
    if let Some(grid) = &file.grid {
        let r: Vec<String> = grid.resolution().iter().map(|n| n.to_string()).collect();
        let _ = writeln!(out, "grid {}", r.join(" "));
    }
    if let Some(t) = file.time {
        let _ = writeln!(out, "time {t}");
    }
    if let Some(e) = file.epsilon {
        let _ = writeln!(out, "epsilon {e}");
    }
    if let Some(f) = file.flow {
        let _ = writeln!(out, "flow {f:016x}");
    }
    let g = &file.graph;
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    let _ = writeln!(out, "edges {}", g.edge_count());
    for e in g.edges() {
        let _ = write!(out, "{} {}", e.source, e.target);
        for w in e.weight.components(file.dim) {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
    }
    out
}

fn bad(line: usize, what: impl std::fmt::Display) -> Error {
    Error::Config(format!("graph line {line}: {what}"))
}

fn number<T: std::str::FromStr>(line: usize, s: Option<&str>) -> Result<T, Error> {
    let s = s.ok_or_else(|| bad(line, "missing value"))?;
    s.parse().map_err(|_| bad(line, format!("cannot parse `{s}`")))
}

pub fn read(text: &str) -> Result<GraphFile, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        _ => return Err(Error::Config(format!("graph file must start with `{MAGIC}`"))),
    }
    let mut dim = None;
    let mut grid = None;
    let mut time = None;
    let mut epsilon = None;
    let mut flow = None;
    let mut vertices: Option<usize> = None;
    let mut expected_edges: Option<usize> = None;
    let mut edges = Vec::new();
    for (no, line) in lines {
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap_or_default();
        match head {
            "dim" => dim = Some(number::<usize>(no, parts.next())?),
            "grid" => {
                let r = parts.map(|p| p.parse::<usize>().map_err(|_| bad(no, "bad resolution"))).collect::<Result<Vec<_>, _>>()?;
                grid = Some(Grid::new(&r).map_err(|e| bad(no, e))?);
            }
            "time" => time = Some(number(no, parts.next())?),
            "epsilon" => epsilon = Some(number(no, parts.next())?),
            "flow" => {
                let s = parts.next().ok_or_else(|| bad(no, "missing fingerprint"))?;
                flow = Some(u64::from_str_radix(s, 16).map_err(|_| bad(no, "bad fingerprint"))?);
            }
            "vertices" => vertices = Some(number(no, parts.next())?),
            "edges" => expected_edges = Some(number(no, parts.next())?),
            _ => {
                let d = dim.ok_or_else(|| bad(no, "edge before `dim`"))?;
                let n = vertices.ok_or_else(|| bad(no, "edge before `vertices`"))?;
                let u: u32 = number(no, Some(head))?;
                let v: u32 = number(no, parts.next())?;
                let w = parts.map(|p| p.parse::<i64>().map_err(|_| bad(no, "bad winding"))).collect::<Result<Vec<_>, _>>()?;
                if w.len() != d {
                    return Err(bad(no, format!("winding has {} components, expected {d}", w.len())));
                }
                if u as usize >= n || v as usize >= n {
                    return Err(bad(no, "vertex out of range"));
                }
                edges.push((u, v, WindingVector::new(&w)));
            }
        }
    }
    let dim = dim.ok_or_else(|| Error::Config("graph file lacks `dim`".into()))?;
    if !(1..=3).contains(&dim) {
        return Err(Error::Config(format!("graph dimension {dim} is not supported")));
    }
    let n = vertices.ok_or_else(|| Error::Config("graph file lacks `vertices`".into()))?;
    if let Some(m) = expected_edges {
        if m != edges.len() {
            return Err(Error::Config(format!("graph file announces {m} edges but lists {}", edges.len())));
        }
    }
    if let Some(g) = &grid {
        if g.cell_count() != n || g.dim() != dim {
            return Err(Error::Config("graph grid does not match its vertex count or dimension".into()));
        }
    }
    Ok(GraphFile { dim, grid, time, epsilon, flow, graph: Digraph::from_edges(n, edges) })
}
