//! Line-based text formats for complexes, maps and words.
//!
//! ```text
//! # the torus
//! vertex q
//! edge a q q
//! edge b q q
//! cube s 2
//! corner 00 q
//! corner 10 q
//! corner 01 q
//! corner 11 q
//! cubeedge *0 a +
//! cubeedge *1 a +
//! cubeedge 0* b +
//! cubeedge 1* b +
//! base q
//! ```
//!
//! Corner bitstrings list coordinate 0 first. `+` on a `cubeedge` line means
//! the model direction (starred coordinate 0 to 1) runs along the edge.
//! A map appends `map vertex <v> <image>` and `map edge <e> <image> <+|->`
//! lines naming cells of the codomain.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{corner_label, model_edge_label, CubeComplex, Edge, InvalidComplex, RawComplex};
use crate::cube::{corner_count, model_edge, model_edge_count, Cube, DirectedEdge, EdgeId, VertexId};
use crate::map::{CubicalMap, InvalidMap, RawMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Complex(#[from] InvalidComplex),
    #[error(transparent)]
    Map(#[from] InvalidMap),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("bad word token `{0}`")]
    BadToken(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Names of the cells of a complex, by id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Names {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub cubes: Vec<String>,
}

impl Names {
    /// Decimal ids.
    pub fn numeric(x: &CubeComplex) -> Self {
        Self {
            vertices: (0..x.vertex_count()).map(|i| i.to_string()).collect(),
            edges: (0..x.edge_count()).map(|i| i.to_string()).collect(),
            cubes: (0..x.cube_count()).map(|i| i.to_string()).collect(),
        }
    }

    pub fn edge_index(&self) -> HashMap<&str, EdgeId> {
        self.edges.iter().enumerate().map(|(i, n)| (n.as_str(), EdgeId::from(i))).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ComplexFile {
    pub complex: CubeComplex,
    pub names: Names,
}

struct PendingCube {
    line: usize,
    dim: usize,
    corners: Vec<Option<VertexId>>,
    edges: Vec<Option<DirectedEdge>>,
}

fn parse_bits(line: usize, s: &str, dim: usize, star: bool) -> Result<(u32, Option<usize>), FormatError> {
    if s.len() != dim {
        return Err(syntax(line, format!("`{s}` should have {dim} characters")));
    }
    let mut m = 0;
    let mut axis = None;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => m |= 1 << i,
            '*' if star && axis.is_none() => axis = Some(i),
            _ => return Err(syntax(line, format!("bad bitstring `{s}`"))),
        }
    }
    if star && axis.is_none() {
        return Err(syntax(line, format!("`{s}` needs one `*`")));
    }
    Ok((m, axis))
}

fn finish_cube(p: PendingCube) -> Result<Cube, FormatError> {
    let corners = p.corners.into_iter().collect::<Option<Vec<_>>>();
    let edges = p.edges.into_iter().collect::<Option<Vec<_>>>();
    match (corners, edges) {
        (Some(corners), Some(edges)) => Ok(Cube { corners, edges }),
        _ => Err(syntax(p.line, "cube is missing corner or cubeedge lines")),
    }
}

struct Reader {
    vertices: HashMap<String, VertexId>,
    edges: HashMap<String, EdgeId>,
    names: Names,
}

impl Reader {
    fn vertex(&self, line: usize, s: &str) -> Result<VertexId, FormatError> {
        self.vertices.get(s).copied().ok_or_else(|| syntax(line, format!("unknown vertex `{s}`")))
    }

    fn edge(&self, line: usize, s: &str) -> Result<EdgeId, FormatError> {
        self.edges.get(s).copied().ok_or_else(|| syntax(line, format!("unknown edge `{s}`")))
    }
}

fn sign(line: usize, s: &str) -> Result<bool, FormatError> {
    match s {
        "+" => Ok(true),
        "-" => Ok(false),
        _ => Err(syntax(line, format!("expected + or -, got `{s}`"))),
    }
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let t: Vec<&str> = l.split_whitespace().collect();
        (!t.is_empty()).then_some((i + 1, t))
    })
}

/// Parse and validate a complex. `map` lines are ignored.
pub fn parse_complex(text: &str) -> Result<ComplexFile, FormatError> {
    let mut r = Reader { vertices: HashMap::new(), edges: HashMap::new(), names: Names::default() };
    let mut edges = Vec::new();
    let mut cubes = Vec::new();
    let mut pending: Option<PendingCube> = None;
    let mut basepoint = None;
    for (line, t) in records(text) {
        match (t[0], t.len()) {
            ("vertex", 2) => {
                let id = VertexId::from(r.names.vertices.len());
                if r.vertices.insert(t[1].to_string(), id).is_some() {
                    return Err(syntax(line, format!("duplicate vertex `{}`", t[1])));
                }
                r.names.vertices.push(t[1].to_string());
            }
            ("edge", 4) => {
                let e = Edge { source: r.vertex(line, t[2])?, target: r.vertex(line, t[3])? };
                if r.edges.insert(t[1].to_string(), EdgeId::from(edges.len())).is_some() {
                    return Err(syntax(line, format!("duplicate edge `{}`", t[1])));
                }
                r.names.edges.push(t[1].to_string());
                edges.push(e);
            }
            ("cube", 3) => {
                if let Some(p) = pending.take() {
                    cubes.push(finish_cube(p)?);
                }
                let dim: usize = t[2].parse().map_err(|_| syntax(line, "bad dimension"))?;
                if !(2..=16).contains(&dim) {
                    return Err(syntax(line, "cube dimension must be between 2 and 16"));
                }
                if r.names.cubes.contains(&t[1].to_string()) {
                    return Err(syntax(line, format!("duplicate cube `{}`", t[1])));
                }
                r.names.cubes.push(t[1].to_string());
                pending = Some(PendingCube {
                    line,
                    dim,
                    corners: vec![None; corner_count(dim)],
                    edges: vec![None; model_edge_count(dim)],
                });
            }
            ("corner", 3) => {
                let p = pending.as_mut().ok_or_else(|| syntax(line, "corner outside a cube"))?;
                let (m, _) = parse_bits(line, t[1], p.dim, false)?;
                let v = r.vertex(line, t[2])?;
                if p.corners[m as usize].replace(v).is_some() {
                    return Err(syntax(line, "repeated corner"));
                }
            }
            ("cubeedge", 4) => {
                let p = pending.as_mut().ok_or_else(|| syntax(line, "cubeedge outside a cube"))?;
                let (m, axis) = parse_bits(line, t[1], p.dim, true)?;
                let axis = axis.expect("starred");
                let i = (0..model_edge_count(p.dim)).find(|&i| model_edge(p.dim, i) == (axis, m)).expect("model edge");
                let d = DirectedEdge::new(r.edge(line, t[2])?, sign(line, t[3])?);
                if p.edges[i].replace(d).is_some() {
                    return Err(syntax(line, "repeated cubeedge"));
                }
            }
            ("base", 2) => basepoint = Some(r.vertex(line, t[1])?),
            ("map", _) => {}
            _ => return Err(syntax(line, format!("unrecognised record `{}`", t.join(" ")))),
        }
    }
    if let Some(p) = pending.take() {
        cubes.push(finish_cube(p)?);
    }
    let raw = RawComplex { vertex_count: r.names.vertices.len(), edges, cubes, basepoint };
    Ok(ComplexFile { complex: CubeComplex::validate(raw)?, names: r.names })
}

/// Canonical text: vertices, edges, cubes in id order, then the basepoint.
pub fn emit_complex(x: &CubeComplex, names: &Names) -> String {
    let mut out = String::new();
    for v in x.vertices() {
        writeln!(out, "vertex {}", names.vertices[v.index()]).unwrap();
    }
    for (i, e) in x.edges().iter().enumerate() {
        let n = &names.vertices;
        writeln!(out, "edge {} {} {}", names.edges[i], n[e.source.index()], n[e.target.index()]).unwrap();
    }
    for (i, c) in x.cubes().iter().enumerate() {
        let dim = c.dim();
        writeln!(out, "cube {} {dim}", names.cubes[i]).unwrap();
        for (m, v) in c.corners.iter().enumerate() {
            writeln!(out, "corner {} {}", corner_label(dim, m as u32), names.vertices[v.index()]).unwrap();
        }
        for (j, d) in c.edges.iter().enumerate() {
            let (axis, base) = model_edge(dim, j);
            let s = if d.forward { '+' } else { '-' };
            writeln!(out, "cubeedge {} {} {s}", model_edge_label(dim, axis, base), names.edges[d.edge.index()]).unwrap();
        }
    }
    if let Some(b) = x.basepoint() {
        writeln!(out, "base {}", names.vertices[b.index()]).unwrap();
    }
    out
}

/// The domain followed by its vertex and edge images.
pub fn emit_map(f: &CubicalMap, domain: &Names, codomain: &Names) -> String {
    let mut out = emit_complex(f.domain(), domain);
    for v in f.domain().vertices() {
        writeln!(out, "map vertex {} {}", domain.vertices[v.index()], codomain.vertices[f.vertex_image(v).index()]).unwrap();
    }
    for (i, d) in f.edge_map().iter().enumerate() {
        let s = if d.forward { '+' } else { '-' };
        writeln!(out, "map edge {} {} {s}", domain.edges[i], codomain.edges[d.edge.index()]).unwrap();
    }
    out
}

/// Parse a map written by [`emit_map`]; cube images are recovered by
/// validation.
pub fn parse_map(text: &str, codomain: Arc<CubeComplex>, names: &Names) -> Result<(CubicalMap, Names), FormatError> {
    let file = parse_complex(text)?;
    let x = file.complex;
    let lookup = |list: &[String]| -> HashMap<String, usize> { list.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect() };
    let (dv, de) = (lookup(&file.names.vertices), lookup(&file.names.edges));
    let (cv, ce) = (lookup(&names.vertices), lookup(&names.edges));
    let mut vertex_map = vec![None; x.vertex_count()];
    let mut edge_map = vec![None; x.edge_count()];
    for (line, t) in records(text).filter(|(_, t)| t[0] == "map") {
        let get = |table: &HashMap<String, usize>, s: &str| {
            table.get(s).copied().ok_or_else(|| syntax(line, format!("unknown cell `{s}`")))
        };
        match (t.get(1).copied(), t.len()) {
            (Some("vertex"), 4) => vertex_map[get(&dv, t[2])?] = Some(VertexId::from(get(&cv, t[3])?)),
            (Some("edge"), 5) => {
                edge_map[get(&de, t[2])?] = Some(DirectedEdge::new(EdgeId::from(get(&ce, t[3])?), sign(line, t[4])?))
            }
            _ => return Err(syntax(line, "bad map record")),
        }
    }
    let vertex_map = vertex_map.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| syntax(0, "vertex without an image"))?;
    let raw = RawMap { vertex_map, edge_map, cube_map: vec![None; x.cube_count()] };
    Ok((CubicalMap::validate(x, codomain, raw)?, file.names))
}

/// Letters of one word: `e`, `e^-1` or `e^k` tokens separated by spaces;
/// `1` alone is the empty word.
pub fn parse_letters(text: &str, names: &Names) -> Result<Vec<DirectedEdge>, FormatError> {
    let index = names.edge_index();
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "1" && !index.contains_key("1") {
            continue;
        }
        let (name, power) = match tok.split_once('^') {
            Some((n, p)) => (n, p.parse::<i64>().map_err(|_| FormatError::BadToken(tok.to_string()))?),
            None => (tok, 1),
        };
        let e = *index.get(name).ok_or_else(|| FormatError::UnknownEdge(name.to_string()))?;
        let d = DirectedEdge::new(e, power > 0);
        out.extend(std::iter::repeat_n(d, power.unsigned_abs() as usize));
    }
    Ok(out)
}

/// Comma-separated words.
pub fn parse_word_list(text: &str, names: &Names) -> Result<Vec<Vec<DirectedEdge>>, FormatError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|w| parse_letters(w, names)).collect()
}

pub fn emit_letters(letters: &[DirectedEdge], names: &Names) -> String {
    if letters.is_empty() {
        // `1` would read back as an edge when one is named that.
        let clash = names.edges.iter().any(|n| n == "1");
        return if clash { String::new() } else { "1".to_string() };
    }
    letters
        .iter()
        .map(|d| {
            let n = &names.edges[d.edge.index()];
            if d.forward { n.clone() } else { format!("{n}^-1") }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
