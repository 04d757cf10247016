use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::cube::{
    model_edge, model_edge_count, Cube, CubeId, CubeKey, DirectedEdge, EdgeId,
    VertexId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

/// Unchecked cell lists, as read from a file or assembled by hand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawComplex {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    pub cubes: Vec<Cube>,
    pub basepoint: Option<VertexId>,
}

/// Which cell a violation concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Vertex(VertexId),
    Edge(EdgeId),
    Cube(CubeId),
    Basepoint,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Vertex(v) => write!(f, "vertex {v}"),
            Cell::Edge(e) => write!(f, "edge {e}"),
            Cell::Cube(c) => write!(f, "cube {c}"),
            Cell::Basepoint => write!(f, "basepoint"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariant {
    /// An edge endpoint is not a declared vertex.
    DanglingEndpoint(VertexId),
    /// Corner/edge tables do not have the sizes of a cube of dimension >= 2.
    Shape { corners: usize, edges: usize },
    UnknownCorner { corner: String, vertex: VertexId },
    UnknownEdge { model_edge: String, edge: EdgeId },
    /// The assigned directed edge does not join the assigned corners.
    InconsistentEdge { model_edge: String },
    /// A codimension-one face is not a cube of the complex.
    MissingFace { face: String },
    UnknownBasepoint(VertexId),
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::DanglingEndpoint(v) => write!(f, "endpoint {v} is not a declared vertex"),
            Invariant::Shape { corners, edges } => {
                write!(f, "{corners} corners and {edges} edges do not form a cube of dimension >= 2")
            }
            Invariant::UnknownCorner { corner, vertex } => {
                write!(f, "corner {corner} assigned to undeclared vertex {vertex}")
            }
            Invariant::UnknownEdge { model_edge, edge } => {
                write!(f, "model edge {model_edge} assigned to undeclared edge {edge}")
            }
            Invariant::InconsistentEdge { model_edge } => {
                write!(f, "model edge {model_edge} disagrees with the corner assignment")
            }
            Invariant::MissingFace { face } => write!(f, "face {face} is not a declared cube"),
            Invariant::UnknownBasepoint(v) => write!(f, "basepoint {v} is not a declared vertex"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub cell: Cell,
    pub invariant: Invariant,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.cell, self.invariant)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("invalid cube complex ({} violation(s)); first: {}", .0.len(), .0[0])]
pub struct InvalidComplex(pub Vec<Violation>);

/// Label of a model corner as a bitstring, coordinate 0 first.
pub fn corner_label(dim: usize, m: u32) -> String {
    (0..dim).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Label of a model edge: its base corner with the moving axis starred.
pub fn model_edge_label(dim: usize, axis: usize, base: u32) -> String {
    (0..dim)
        .map(|i| match i {
            _ if i == axis => '*',
            _ if base >> i & 1 == 1 => '1',
            _ => '0',
        })
        .collect()
}

/// A finite cube complex. Immutable once built; quotients and attachments
/// produce new values.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    vertex_count: usize,
    edges: Vec<Edge>,
    cubes: Vec<Cube>,
    basepoint: Option<VertexId>,
    germs: Vec<Vec<DirectedEdge>>,
    keys: Vec<CubeKey>,
    by_key: HashMap<CubeKey, Vec<CubeId>>,
}

impl PartialEq for CubeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.cubes == other.cubes
            && self.basepoint == other.basepoint
    }
}

impl Eq for CubeComplex {}

impl CubeComplex {
    /// Check every cell-level invariant and build the complex, or report all
    /// violations found.
    pub fn validate(raw: RawComplex) -> Result<Self, InvalidComplex> {
        let mut violations = Vec::new();
        let nv = raw.vertex_count;
        let ne = raw.edges.len();
        let vertex_ok = |v: VertexId| v.index() < nv;

        for (i, e) in raw.edges.iter().enumerate() {
            for v in [e.source, e.target] {
                if !vertex_ok(v) {
                    violations.push(Violation {
                        cell: Cell::Edge(EdgeId::from(i)),
                        invariant: Invariant::DanglingEndpoint(v),
                    });
                }
            }
        }
        if let Some(b) = raw.basepoint {
            if !vertex_ok(b) {
                violations.push(Violation { cell: Cell::Basepoint, invariant: Invariant::UnknownBasepoint(b) });
            }
        }

        let mut well_formed = vec![false; raw.cubes.len()];
        for (ci, cube) in raw.cubes.iter().enumerate() {
            let cell = Cell::Cube(CubeId::from(ci));
            let nc = cube.corners.len();
            let dim = nc.trailing_zeros() as usize;
            if !nc.is_power_of_two() || dim < 2 || cube.edges.len() != model_edge_count(dim) {
                violations.push(Violation {
                    cell,
                    invariant: Invariant::Shape { corners: nc, edges: cube.edges.len() },
                });
                continue;
            }
            let mut ok = true;
            for (m, &v) in cube.corners.iter().enumerate() {
                if !vertex_ok(v) {
                    ok = false;
                    violations.push(Violation {
                        cell,
                        invariant: Invariant::UnknownCorner { corner: corner_label(dim, m as u32), vertex: v },
                    });
                }
            }
            for (i, de) in cube.edges.iter().enumerate() {
                let (axis, base) = model_edge(dim, i);
                let label = model_edge_label(dim, axis, base);
                if de.edge.index() >= ne {
                    ok = false;
                    violations.push(Violation {
                        cell,
                        invariant: Invariant::UnknownEdge { model_edge: label, edge: de.edge },
                    });
                    continue;
                }
                if !ok {
                    continue;
                }
                let e = raw.edges[de.edge.index()];
                let (s, t) = if de.forward { (e.source, e.target) } else { (e.target, e.source) };
                if s != cube.corner(base) || t != cube.corner(base | (1 << axis)) {
                    ok = false;
                    violations.push(Violation { cell, invariant: Invariant::InconsistentEdge { model_edge: label } });
                }
            }
            well_formed[ci] = ok;
        }

        // Faces are only checkable once every cube is well formed.
        if violations.is_empty() {
            let keys: HashMap<CubeKey, ()> = raw.cubes.iter().map(|c| (c.key(), ())).collect();
            for (ci, cube) in raw.cubes.iter().enumerate() {
                if cube.dim() < 3 || !well_formed[ci] {
                    continue;
                }
                let dim = cube.dim();
                for (axis, value, face) in cube.facets() {
                    if !keys.contains_key(&face.key()) {
                        let label: String = (0..dim)
                            .map(|i| match i {
                                _ if i == axis => if value { '1' } else { '0' },
                                _ => '*',
                            })
                            .collect();
                        violations.push(Violation {
                            cell: Cell::Cube(CubeId::from(ci)),
                            invariant: Invariant::MissingFace { face: label },
                        });
                    }
                }
            }
        }

        if violations.is_empty() {
            Ok(Self::from_parts(nv, raw.edges, raw.cubes, raw.basepoint))
        } else {
            Err(InvalidComplex(violations))
        }
    }

    /// Build without checking; callers guarantee the invariants.
    pub(crate) fn from_parts(
        vertex_count: usize,
        edges: Vec<Edge>,
        cubes: Vec<Cube>,
        basepoint: Option<VertexId>,
    ) -> Self {
        let mut germs = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            let id = EdgeId::from(i);
            germs[e.source.index()].push(DirectedEdge::new(id, true));
            germs[e.target.index()].push(DirectedEdge::new(id, false));
        }
        for g in &mut germs {
            g.sort_unstable();
        }
        let keys: Vec<CubeKey> = cubes.iter().map(Cube::key).collect();
        let mut by_key: HashMap<CubeKey, Vec<CubeId>> = HashMap::new();
        for (i, k) in keys.iter().enumerate() {
            by_key.entry(k.clone()).or_default().push(CubeId::from(i));
        }
        Self { vertex_count, edges, cubes, basepoint, germs, keys, by_key }
    }

    pub fn to_raw(&self) -> RawComplex {
        RawComplex {
            vertex_count: self.vertex_count,
            edges: self.edges.clone(),
            cubes: self.cubes.clone(),
            basepoint: self.basepoint,
        }
    }

    #[must_use]
    pub fn with_basepoint(mut self, basepoint: VertexId) -> Self {
        assert!(basepoint.index() < self.vertex_count, "basepoint out of range");
        self.basepoint = Some(basepoint);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cube_count(&self) -> usize {
        self.cubes.len()
    }

    /// Total number of cells of every dimension.
    pub fn cell_count(&self) -> usize {
        self.vertex_count + self.edges.len() + self.cubes.len()
    }

    pub fn max_dim(&self) -> usize {
        self.cubes
            .iter()
            .map(Cube::dim)
            .max()
            .unwrap_or(if self.edges.is_empty() { 0 } else { 1 })
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count).map(VertexId::from)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.index()]
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn cube(&self, c: CubeId) -> &Cube {
        &self.cubes[c.index()]
    }

    pub fn cube_ids(&self) -> impl Iterator<Item = CubeId> + '_ {
        (0..self.cubes.len()).map(CubeId::from)
    }

    pub fn basepoint(&self) -> Option<VertexId> {
        self.basepoint
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.vertex_count
    }

    /// Germs leaving `v`, sorted; a loop contributes both orientations.
    pub fn germs(&self, v: VertexId) -> &[DirectedEdge] {
        &self.germs[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.germs[v.index()].len()
    }

    pub fn origin(&self, d: DirectedEdge) -> VertexId {
        let e = self.edges[d.edge.index()];
        if d.forward {
            e.source
        } else {
            e.target
        }
    }

    pub fn terminus(&self, d: DirectedEdge) -> VertexId {
        self.origin(d.reversed())
    }

    pub fn key(&self, c: CubeId) -> &CubeKey {
        &self.keys[c.index()]
    }

    /// Cubes whose assignment equals `key` up to symmetry.
    pub fn cubes_with_key(&self, key: &CubeKey) -> &[CubeId] {
        self.by_key.get(key).map_or(&[], Vec::as_slice)
    }

    /// Corner positions `(cube, corner)` at which `v` appears.
    pub fn cube_corners_at(&self, v: VertexId) -> Vec<(CubeId, u32)> {
        let mut out = Vec::new();
        for (ci, c) in self.cubes.iter().enumerate() {
            for (m, &w) in c.corners.iter().enumerate() {
                if w == v {
                    out.push((CubeId::from(ci), m as u32));
                }
            }
        }
        out
    }

    /// Vertices reachable from `start` in the 1-skeleton, with BFS distance.
    pub fn distances_from(&self, start: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        let mut queue = std::collections::VecDeque::new();
        dist[start.index()] = Some(0);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let d = dist[v.index()].expect("queued vertices have a distance");
            for &g in self.germs(v) {
                let w = self.terminus(g);
                if dist[w.index()].is_none() {
                    dist[w.index()] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count == 0 || self.distances_from(VertexId(0)).iter().all(Option::is_some)
    }

    /// Follow a sequence of directed edges from `start`; `None` if some letter
    /// does not leave the current vertex.
    pub fn trace(&self, start: VertexId, path: &[DirectedEdge]) -> Option<VertexId> {
        path.iter().try_fold(start, |v, &d| (self.origin(d) == v).then(|| self.terminus(d)))
    }
}
