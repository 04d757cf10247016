//! Halfspaces, geodesics and convex hulls in finite CAT(0) cube complexes.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::complex::CubeComplex;
use crate::cube::{CubeId, DirectedEdge, EdgeId, VertexId};
use crate::hyperplane::{hyperplanes, Hyperplanes};

use super::GeometryError;

/// Which side of every hyperplane each vertex lies on.
///
/// The `+` side of a hyperplane contains the target of its least dual edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspaces {
    pub hyperplanes: Hyperplanes,
    /// Per vertex: bit `h` set iff the vertex is on the `+` side of `h`.
    sides: Vec<FixedBitSet>,
    /// Per hyperplane: vertices on its `+` side.
    plus: Vec<FixedBitSet>,
}

impl Halfspaces {
    /// Fails if the sides are not well defined, which happens exactly when
    /// some cycle crosses a hyperplane an odd number of times.
    pub fn new(x: &CubeComplex) -> Result<Self, GeometryError> {
        let hp = hyperplanes(x);
        let nh = hp.len();
        let nv = x.vertex_count();
        let mut parity: Vec<Option<FixedBitSet>> = vec![None; nv];
        for root in x.vertices() {
            if parity[root.index()].is_some() {
                continue;
            }
            parity[root.index()] = Some(FixedBitSet::with_capacity(nh));
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let pv = parity[v.index()].clone().expect("queued vertices have parity");
                for &g in x.germs(v) {
                    let w = x.terminus(g);
                    let mut pw = pv.clone();
                    pw.toggle(hp.of_edge(g.edge));
                    match &parity[w.index()] {
                        None => {
                            parity[w.index()] = Some(pw);
                            queue.push_back(w);
                        }
                        Some(existing) if *existing != pw => return Err(GeometryError::NotSimplyConnected),
                        Some(_) => {}
                    }
                }
            }
        }
        let parity: Vec<FixedBitSet> = parity.into_iter().map(|p| p.expect("every vertex reached")).collect();
        // Flip so that the target of the least dual edge is on the + side.
        let mut flip = FixedBitSet::with_capacity(nh);
        for (h, class) in hp.classes.iter().enumerate() {
            let t = x.edge(class.dual_edges[0]).target;
            if !parity[t.index()][h] {
                flip.insert(h);
            }
        }
        let sides: Vec<FixedBitSet> = parity
            .into_iter()
            .map(|mut p| {
                p.symmetric_difference_with(&flip);
                p
            })
            .collect();
        let mut plus = vec![FixedBitSet::with_capacity(nv); nh];
        for (v, s) in sides.iter().enumerate() {
            for h in s.ones() {
                plus[h].insert(v);
            }
        }
        Ok(Self { hyperplanes: hp, sides, plus })
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.sides.len()
    }

    pub fn is_plus(&self, h: usize, v: VertexId) -> bool {
        self.sides[v.index()][h]
    }

    /// Vertices on the `+` side of `h`.
    pub fn plus_side(&self, h: usize) -> &FixedBitSet {
        &self.plus[h]
    }

    /// Vertices on the given side of `h`.
    pub fn side(&self, h: usize, plus: bool) -> FixedBitSet {
        let mut s = self.plus[h].clone();
        if !plus {
            s.toggle_range(..);
        }
        s
    }

    /// Per-vertex side vector.
    pub fn sides_of(&self, v: VertexId) -> &FixedBitSet {
        &self.sides[v.index()]
    }

    /// Hyperplanes separating `u` from `v`.
    pub fn separating(&self, u: VertexId, v: VertexId) -> FixedBitSet {
        let mut s = self.sides[u.index()].clone();
        s.symmetric_difference_with(&self.sides[v.index()]);
        s
    }

    /// Number of separating hyperplanes; the combinatorial distance.
    pub fn distance(&self, u: VertexId, v: VertexId) -> usize {
        self.sides[u.index()].symmetric_difference(&self.sides[v.index()]).count()
    }

    /// Hyperplanes with vertices of `s` on both sides.
    pub fn crossing(&self, s: &[VertexId]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        if let Some(&first) = s.first() {
            for &v in &s[1..] {
                out.union_with(&self.separating(first, v));
            }
        }
        out
    }

    /// The vertex with the given side vector, if any.
    pub fn vertex_with_sides(&self, sides: &FixedBitSet) -> Option<VertexId> {
        self.sides.iter().position(|s| s == sides).map(VertexId::from)
    }
}

/// Every geodesic edge path from `u` to `v`: paths crossing only separating
/// hyperplanes, each once.
pub fn geodesics(x: &CubeComplex, hs: &Halfspaces, u: VertexId, v: VertexId) -> Vec<Vec<DirectedEdge>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    walk(x, hs, u, v, &mut path, &mut out);
    out
}

fn walk(
    x: &CubeComplex,
    hs: &Halfspaces,
    at: VertexId,
    to: VertexId,
    path: &mut Vec<DirectedEdge>,
    out: &mut Vec<Vec<DirectedEdge>>,
) {
    if at == to {
        out.push(path.clone());
        return;
    }
    for &g in x.germs(at) {
        let h = hs.hyperplanes.of_edge(g.edge);
        if hs.is_plus(h, at) != hs.is_plus(h, to) {
            path.push(g);
            walk(x, hs, x.terminus(g), to, path, out);
            path.pop();
        }
    }
}

/// Vertices, edges and cubes of a subcomplex, each sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub cubes: Vec<CubeId>,
}

impl Subcomplex {
    /// The full subcomplex on a vertex set: every cell whose corners all lie
    /// in the set.
    pub fn spanned(x: &CubeComplex, vertices: &FixedBitSet) -> Self {
        let edges = x
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| vertices[e.source.index()] && vertices[e.target.index()])
            .map(|(i, _)| EdgeId::from(i))
            .collect();
        let cubes = x
            .cube_ids()
            .filter(|&c| x.cube(c).corners.iter().all(|v| vertices[v.index()]))
            .collect();
        Self { vertices: vertices.ones().map(VertexId::from).collect(), edges, cubes }
    }

    pub fn cell_count(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.cubes.len()
    }

    /// The subcomplex as a complex in its own right, with the old id of each
    /// new vertex. Vertices, edges and cubes keep their relative order.
    pub fn extract(&self, x: &CubeComplex) -> (CubeComplex, Vec<VertexId>) {
        let vid: HashMap<VertexId, VertexId> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, VertexId::from(i))).collect();
        let eid: HashMap<EdgeId, EdgeId> = self.edges.iter().enumerate().map(|(i, &e)| (e, EdgeId::from(i))).collect();
        let edges = self
            .edges
            .iter()
            .map(|&e| {
                let old = x.edge(e);
                crate::complex::Edge { source: vid[&old.source], target: vid[&old.target] }
            })
            .collect();
        let cubes = self
            .cubes
            .iter()
            .map(|&c| x.cube(c).mapped(|v| vid[&v], |d| DirectedEdge::new(eid[&d.edge], d.forward)))
            .collect();
        let base = x.basepoint().and_then(|b| vid.get(&b).copied());
        (CubeComplex::from_parts(self.vertices.len(), edges, cubes, base), self.vertices.clone())
    }
}

/// The cubical convex hull of `s`: every vertex on the `s` side of each
/// hyperplane not crossing `s`, with all cells spanned.
pub fn convex_hull(x: &CubeComplex, hs: &Halfspaces, s: &[VertexId]) -> Result<Subcomplex, GeometryError> {
    let &first = s.first().ok_or(GeometryError::EmptySet)?;
    for &v in s {
        if !x.contains_vertex(v) {
            return Err(GeometryError::UnknownVertex(v));
        }
    }
    let crossing = hs.crossing(s);
    let base = hs.sides_of(first);
    let mut inside = FixedBitSet::with_capacity(x.vertex_count());
    for v in x.vertices() {
        let mut diff = hs.sides_of(v).clone();
        diff.symmetric_difference_with(base);
        if diff.is_subset(&crossing) {
            inside.insert(v.index());
        }
    }
    Ok(Subcomplex::spanned(x, &inside))
}

/// The vertex set is its own hull.
pub fn is_convex(x: &CubeComplex, hs: &Halfspaces, vertices: &[VertexId]) -> bool {
    match convex_hull(x, hs, vertices) {
        Ok(h) => h.vertices.len() == vertices.len(),
        Err(_) => false,
    }
}
