//! Finite balls in the universal cover, developed layer by layer.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{CubeComplex, Edge};
use crate::cube::{model_edge, model_edge_count, Cube, CubeId, DirectedEdge, EdgeId, Symmetry, VertexId};
use crate::link::{check_npc, LinkComplex};
use crate::map::{links_of, CubeImage, CubicalMap};

use super::halfspace::{Halfspaces, Subcomplex};
use super::GeometryError;

/// The ball of radius `radius` about a lift of a basepoint.
#[derive(Clone, Debug)]
pub struct CoverBall {
    pub center: VertexId,
    pub radius: usize,
    /// Distance from the center, per vertex.
    pub depth: Vec<usize>,
    pub projection: CubicalMap,
    pub halfspaces: Halfspaces,
}

impl CoverBall {
    pub fn complex(&self) -> &CubeComplex {
        self.projection.domain()
    }

    /// Every geodesic from `u` to `v`. Refused unless the geodesics lie at
    /// least one step inside the boundary.
    pub fn geodesics(&self, u: VertexId, v: VertexId) -> Result<Vec<Vec<DirectedEdge>>, GeometryError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let d = self.halfspaces.distance(u, v);
        let needed = self.depth[u.index()].min(self.depth[v.index()]) + d;
        self.check_margin(needed)?;
        Ok(super::geodesics(self.complex(), &self.halfspaces, u, v))
    }

    /// The convex hull of `s`, refused unless it lies inside the boundary.
    pub fn convex_hull(&self, s: &[VertexId]) -> Result<Subcomplex, GeometryError> {
        for &v in s {
            self.check_vertex(v)?;
        }
        let first = *s.first().ok_or(GeometryError::EmptySet)?;
        let crossing = self.halfspaces.crossing(s).count_ones(..);
        let needed = s.iter().map(|v| self.depth[v.index()]).min().unwrap_or(self.depth[first.index()]) + crossing;
        self.check_margin(needed)?;
        super::convex_hull(self.complex(), &self.halfspaces, s)
    }

    /// The vertex reached from the center by lifting `path`.
    pub fn lift_from_center(&self, path: &[DirectedEdge]) -> Option<VertexId> {
        self.projection.lift_path(self.center, path).map(|p| {
            p.last().map_or(self.center, |&g| self.complex().terminus(g))
        })
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GeometryError> {
        if self.complex().contains_vertex(v) {
            Ok(())
        } else {
            Err(GeometryError::UnknownVertex(v))
        }
    }

    fn check_margin(&self, needed: usize) -> Result<(), GeometryError> {
        if needed < self.radius {
            Ok(())
        } else {
            Err(GeometryError::TooCloseToBoundary { needed, radius: self.radius })
        }
    }
}

/// Develop the universal cover of `y` about `q` out to combinatorial radius
/// `r`.
///
/// A neighbour `x.g` of a vertex at depth `k` is either already known or lies
/// at depth `k + 1`. In the second case it coincides with a vertex found
/// earlier exactly when some edge back from `x` to `w` spans a square with
/// `g` at `x`; the square is followed round from `w`.
pub fn universal_cover_ball(y: Arc<CubeComplex>, q: VertexId, r: usize) -> Result<CoverBall, GeometryError> {
    if !y.contains_vertex(q) {
        return Err(GeometryError::UnknownVertex(q));
    }
    if let Some(bad) = check_npc(&y).first_failure() {
        return Err(GeometryError::NotNpc(bad.vertex));
    }
    let links: Vec<LinkComplex> = links_of(&y);
    let mut image: Vec<VertexId> = vec![q];
    let mut depth: Vec<usize> = vec![0];
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_image: Vec<EdgeId> = Vec::new();
    // (cover vertex, germ of y at its image) -> neighbour.
    let mut step: HashMap<(VertexId, DirectedEdge), VertexId> = HashMap::new();
    // Cover vertex -> germs of y leading back one layer.
    let mut down: Vec<Vec<DirectedEdge>> = vec![Vec::new()];
    let mut layer = vec![VertexId(0)];
    for k in 0..r {
        let mut next = Vec::new();
        for &x in &layer {
            let p = image[x.index()];
            for &g in y.germs(p) {
                if step.contains_key(&(x, g)) {
                    continue;
                }
                let found = down[x.index()].iter().find_map(|&h| {
                    let w = step[&(x, h)];
                    let (cube, corner) = square_at(&y, &links[p.index()], h, g)?;
                    let c = y.cube(cube);
                    let (ih, ig) = axes_of(c, corner, h, g);
                    let at_w = corner ^ (1 << ih);
                    let x2 = *step.get(&(w, c.germ(at_w, ig)))?;
                    let at_x2 = at_w ^ (1 << ig);
                    step.get(&(x2, c.germ(at_x2, ih))).copied()
                });
                let z = found.unwrap_or_else(|| {
                    let z = VertexId::from(image.len());
                    image.push(y.terminus(g));
                    depth.push(k + 1);
                    down.push(Vec::new());
                    next.push(z);
                    z
                });
                let (s, t) = if g.forward { (x, z) } else { (z, x) };
                edges.push(Edge { source: s, target: t });
                edge_image.push(g.edge);
                step.insert((x, g), z);
                step.insert((z, g.reversed()), x);
                down[z.index()].push(g.reversed());
            }
        }
        layer = next;
    }
    let edge_id: HashMap<(VertexId, DirectedEdge), EdgeId> = edges
        .iter()
        .enumerate()
        .flat_map(|(i, e)| {
            let id = EdgeId::from(i);
            let img = DirectedEdge::forward(edge_image[i]);
            [((e.source, img), id), ((e.target, img.reversed()), id)]
        })
        .collect();
    let mut cubes = Vec::new();
    let mut cube_images = Vec::new();
    for (ci, c) in y.cubes().iter().enumerate() {
        let n = c.dim();
        for x in (0..image.len()).map(VertexId::from).filter(|x| image[x.index()] == c.corner(0)) {
            let mut corners = vec![x; 1 << n];
            let mut ok = true;
            for m in 1..(1u32 << n) {
                let hi = 31 - m.leading_zeros();
                let prev = corners[(m ^ (1 << hi)) as usize];
                match step.get(&(prev, c.germ(m ^ (1 << hi), hi as usize))) {
                    Some(&z) => corners[m as usize] = z,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let lifted: Option<Vec<DirectedEdge>> = (0..model_edge_count(n))
                .map(|i| {
                    let (axis, base) = model_edge(n, i);
                    let e = c.edges[i];
                    let from = corners[base as usize];
                    let id = *edge_id.get(&(from, DirectedEdge::forward(e.edge).oriented(e.forward)))?;
                    let to = corners[(base | (1 << axis)) as usize];
                    let edge = &edges[id.index()];
                    let (s, t) = if e.forward { (edge.source, edge.target) } else { (edge.target, edge.source) };
                    (s == from && t == to).then_some(DirectedEdge::new(id, e.forward))
                })
                .collect();
            let Some(cube_edges) = lifted else { continue };
            cubes.push(Cube { corners, edges: cube_edges });
            cube_images.push(CubeImage { cube: CubeId::from(ci), symmetry: Symmetry::identity(n) });
        }
    }
    let nv = image.len();
    let complex = CubeComplex::from_parts(nv, edges, cubes, Some(VertexId(0)));
    let halfspaces = Halfspaces::new(&complex)?;
    let edge_map = edge_image.into_iter().map(DirectedEdge::forward).collect();
    let projection = CubicalMap::from_parts(complex, y, Arc::new(links), image, edge_map, cube_images);
    Ok(CoverBall { center: VertexId(0), radius: r, depth, projection, halfspaces })
}

/// The square of `y` at the centre of `lk` whose corner carries germs `a`
/// and `b`.
fn square_at(y: &CubeComplex, lk: &LinkComplex, a: DirectedEdge, b: DirectedEdge) -> Option<(CubeId, u32)> {
    let (i, j) = (lk.germ_index(a)?, lk.germ_index(b)?);
    let set = if i < j { [i, j] } else { [j, i] };
    let &s = lk.simplices_on(&set).first()?;
    let s = &lk.simplices[s];
    debug_assert_eq!(y.cube(s.cube).dim(), 2);
    Some((s.cube, s.corner))
}

fn axes_of(c: &Cube, corner: u32, a: DirectedEdge, b: DirectedEdge) -> (usize, usize) {
    if c.germ(corner, 0) == a {
        debug_assert_eq!(c.germ(corner, 1), b);
        (0, 1)
    } else {
        (1, 0)
    }
}

