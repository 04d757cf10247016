//! Halfspace posets and the cube complex dual to them.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::complex::{CubeComplex, Edge};
use crate::cube::{model_edge, model_edge_count, Cube, DirectedEdge, EdgeId, VertexId};

use super::halfspace::Halfspaces;
use super::GeometryError;

/// Oriented halfspaces of `labels.len()` hyperplanes: halfspace `2i` is the
/// `+` side of hyperplane `i`, `2i + 1` its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspacePoset {
    /// Ambient hyperplane id of each hyperplane, or any label.
    pub labels: Vec<usize>,
    /// `leq[a][b]` iff halfspace `a` is contained in halfspace `b`.
    leq: Vec<FixedBitSet>,
}

#[inline]
pub fn complement(a: usize) -> usize {
    a ^ 1
}

impl HalfspacePoset {
    /// A poset from an explicit inclusion relation, which is checked.
    pub fn new(labels: Vec<usize>, leq: Vec<FixedBitSet>) -> Result<Self, GeometryError> {
        let p = Self { labels, leq };
        p.check()?;
        Ok(p)
    }

    /// The least poset containing the given inclusions `(a, b)` (meaning
    /// `a` within `b`), closed under complementation and transitivity.
    pub fn generated(n: usize, inclusions: &[(usize, usize)]) -> Result<Self, GeometryError> {
        let m = 2 * n;
        let mut leq = vec![FixedBitSet::with_capacity(m); m];
        for (a, row) in leq.iter_mut().enumerate() {
            row.insert(a);
        }
        for &(a, b) in inclusions {
            if a >= m || b >= m {
                return Err(GeometryError::InconsistentPoset);
            }
            leq[a].insert(b);
            leq[complement(b)].insert(complement(a));
        }
        for k in 0..m {
            for i in 0..m {
                if leq[i][k] {
                    let row = leq[k].clone();
                    leq[i].union_with(&row);
                }
            }
        }
        Self::new((0..n).collect(), leq)
    }

    pub fn hyperplane_count(&self) -> usize {
        self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Choosing both is inconsistent.
    pub fn disjoint(&self, a: usize, b: usize) -> bool {
        self.leq[a][complement(b)]
    }

    /// Partial order with order-reversing complementation.
    pub fn check(&self) -> Result<(), GeometryError> {
        let m = self.leq.len();
        if m != 2 * self.labels.len() || self.leq.iter().any(|r| r.len() != m) {
            return Err(GeometryError::InconsistentPoset);
        }
        for a in 0..m {
            if !self.leq[a][a] {
                return Err(GeometryError::InconsistentPoset);
            }
            for b in self.leq[a].ones() {
                if b != a && self.leq[b][a] {
                    return Err(GeometryError::InconsistentPoset);
                }
                if !self.leq[complement(b)][complement(a)] {
                    return Err(GeometryError::InconsistentPoset);
                }
                if !self.leq[b].is_subset(&self.leq[a]) {
                    return Err(GeometryError::InconsistentPoset);
                }
            }
        }
        Ok(())
    }
}

/// Both sides of every hyperplane with vertices of `s` on each side;
/// inclusion is containment of vertex sets in `x`.
pub fn halfspaces_meeting(x: &CubeComplex, hs: &Halfspaces, s: &[VertexId]) -> HalfspacePoset {
    let crossing: Vec<usize> = hs.crossing(s).ones().collect();
    let sets: Vec<FixedBitSet> = crossing.iter().flat_map(|&h| [hs.side(h, true), hs.side(h, false)]).collect();
    debug_assert!(sets.iter().all(|s| s.len() == x.vertex_count()));
    let m = sets.len();
    let leq = sets
        .iter()
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(m);
            row.extend((0..m).filter(|&j| a.is_subset(&sets[j])));
            row
        })
        .collect();
    HalfspacePoset { labels: crossing, leq }
}

/// The dual cube complex. Bit `i` of an orientation is set when the `+`
/// halfspace of hyperplane `i` is chosen.
#[derive(Clone, Debug)]
pub struct SageevDual {
    pub complex: CubeComplex,
    pub orientations: Vec<FixedBitSet>,
    /// Poset hyperplane crossed by each edge; edges run from `-` to `+`.
    pub edge_hyperplane: Vec<usize>,
}

impl SageevDual {
    pub fn vertex_of(&self, orientation: &FixedBitSet) -> Option<VertexId> {
        self.orientations.iter().position(|o| o == orientation).map(VertexId::from)
    }
}

/// Vertices are the orientations choosing one side of each hyperplane with
/// no two chosen halfspaces disjoint; edges change one choice; cubes fill
/// every cube whose 1-skeleton is present.
pub fn sageev_dual(p: &HalfspacePoset) -> Result<SageevDual, GeometryError> {
    p.check()?;
    let n = p.hyperplane_count();
    let mut orientations = Vec::new();
    let mut picks: Vec<usize> = Vec::with_capacity(n);
    extend(p, &mut picks, &mut orientations);
    let index: HashMap<FixedBitSet, usize> = orientations.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
    let consistent = |o: &FixedBitSet| index.get(o).copied();

    let mut edges = Vec::new();
    let mut edge_hyperplane = Vec::new();
    let mut edge_at: HashMap<(usize, usize), EdgeId> = HashMap::new();
    for (v, o) in orientations.iter().enumerate() {
        for i in (0..n).filter(|&i| !o[i]) {
            let mut f = o.clone();
            f.insert(i);
            if let Some(w) = consistent(&f) {
                edge_at.insert((v, i), EdgeId::from(edges.len()));
                edges.push(Edge { source: VertexId::from(v), target: VertexId::from(w) });
                edge_hyperplane.push(i);
            }
        }
    }

    let mut cubes = Vec::new();
    for (v, o) in orientations.iter().enumerate() {
        let up: Vec<usize> = (0..n).filter(|&i| edge_at.contains_key(&(v, i))).collect();
        let mut axes = Vec::new();
        grow(&up, 0, o, &mut axes, &consistent, &mut |axes: &[usize]| {
            let k = axes.len();
            let corner = |m: u32| {
                let mut c = o.clone();
                for (j, &a) in axes.iter().enumerate() {
                    if m >> j & 1 == 1 {
                        c.insert(a);
                    }
                }
                consistent(&c).expect("corner checked")
            };
            let corners = (0..1u32 << k).map(|m| VertexId::from(corner(m))).collect();
            let edges = (0..model_edge_count(k))
                .map(|e| {
                    let (axis, base) = model_edge(k, e);
                    DirectedEdge::forward(edge_at[&(corner(base), axes[axis])])
                })
                .collect();
            cubes.push(Cube { corners, edges });
        });
    }
    let complex = CubeComplex::from_parts(orientations.len(), edges, cubes, None);
    Ok(SageevDual { complex, orientations, edge_hyperplane })
}

/// Backtrack over orientations, trying `+` before `-` at each hyperplane.
fn extend(p: &HalfspacePoset, picks: &mut Vec<usize>, out: &mut Vec<FixedBitSet>) {
    let n = p.hyperplane_count();
    let i = picks.len();
    if i == n {
        let mut o = FixedBitSet::with_capacity(n);
        for (j, &h) in picks.iter().enumerate() {
            if h == 2 * j {
                o.insert(j);
            }
        }
        out.push(o);
        return;
    }
    for h in [2 * i, 2 * i + 1] {
        if picks.iter().all(|&a| !p.disjoint(a, h)) {
            picks.push(h);
            extend(p, picks, out);
            picks.pop();
        }
    }
}

/// Call `emit` for every set of at least two axes among `up[from..]`, added
/// to `axes`, whose corners above `o` are all vertices.
fn grow(
    up: &[usize],
    from: usize,
    o: &FixedBitSet,
    axes: &mut Vec<usize>,
    consistent: &dyn Fn(&FixedBitSet) -> Option<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    for j in from..up.len() {
        axes.push(up[j]);
        let k = axes.len();
        let all = (0..1u32 << k).all(|m| {
            let mut c = o.clone();
            for (t, &a) in axes.iter().enumerate() {
                if m >> t & 1 == 1 {
                    c.insert(a);
                }
            }
            consistent(&c).is_some()
        });
        if all {
            if k >= 2 {
                emit(axes);
            }
            grow(up, j + 1, o, axes, consistent, emit);
        }
        axes.pop();
    }
}

/// The vertex of `x` on the chosen side of every poset hyperplane and on
/// `q`'s side of every other hyperplane.
pub fn dual_to_ambient(p: &HalfspacePoset, hs: &Halfspaces, z: &FixedBitSet, q: VertexId) -> Option<VertexId> {
    let mut want = hs.sides_of(q).clone();
    for (i, &h) in p.labels.iter().enumerate() {
        want.set(h, z[i]);
    }
    hs.vertex_with_sides(&want)
}

/// Orientation of the poset realised by an ambient vertex.
pub fn ambient_orientation(p: &HalfspacePoset, hs: &Halfspaces, v: VertexId) -> FixedBitSet {
    let mut o = FixedBitSet::with_capacity(p.hyperplane_count());
    for (i, &h) in p.labels.iter().enumerate() {
        o.set(i, hs.is_plus(h, v));
    }
    o
}
