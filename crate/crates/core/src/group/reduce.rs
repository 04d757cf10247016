//! Reduced cubical words: representatives lifting to geodesics in the
//! universal cover.

use std::sync::Arc;

use crate::completion::{complete, CompletionResult};
use crate::complex::{CubeComplex, Edge};
use crate::cube::{DirectedEdge, VertexId};
use crate::geometry::{geodesics, universal_cover_ball, Halfspaces};
use crate::map::{links_of, CubicalMap};
use crate::word::CubicalWord;

use super::GroupError;

/// Cell budget for completing the path of a single word.
pub const PATH_BUDGET: usize = 2_000_000;

/// The convex hull of the lift of `w`, as the completion of the path that
/// spells it, with its two endpoints.
#[derive(Clone, Debug)]
pub struct PathHull {
    pub completion: CompletionResult,
    pub halfspaces: Halfspaces,
    pub start: VertexId,
    pub end: VertexId,
}

impl PathHull {
    pub fn complex(&self) -> &CubeComplex {
        self.completion.complex()
    }

    /// Length of every reduced form.
    pub fn distance(&self) -> usize {
        self.halfspaces.distance(self.start, self.end)
    }

    fn project(&self, path: &[DirectedEdge], base: VertexId) -> CubicalWord {
        CubicalWord::new(base, path.iter().map(|&g| self.completion.map.germ_image(g)).collect())
    }
}

/// Complete the subdivided path spelling `w`. The path is contractible, so
/// its completion is the convex hull of its lift and is finite.
pub fn path_hull(y: &Arc<CubeComplex>, w: &CubicalWord) -> Result<PathHull, GroupError> {
    if !y.contains_vertex(w.base) || w.letters.iter().any(|d| d.edge.index() >= y.edge_count()) || !w.is_path(y) {
        return Err(GroupError::NotAPath);
    }
    let n = w.len();
    let edges = (0..n).map(|i| Edge { source: VertexId::from(i), target: VertexId::from(i + 1) }).collect();
    let mut vertex_map = Vec::with_capacity(n + 1);
    let mut at = w.base;
    vertex_map.push(at);
    for &d in &w.letters {
        at = y.terminus(d);
        vertex_map.push(at);
    }
    let x = CubeComplex::from_parts(n + 1, edges, vec![], Some(VertexId(0)));
    let f = CubicalMap::from_parts(x, y.clone(), Arc::new(links_of(y)), vertex_map, w.letters.clone(), vec![]);
    let completion = complete(f, PATH_BUDGET);
    if !completion.is_finished() {
        return Err(GroupError::BudgetExceeded);
    }
    let halfspaces = Halfspaces::new(completion.complex()).map_err(GroupError::Geometry)?;
    let start = completion.trace.vertex[0];
    let end = completion.trace.vertex[n];
    Ok(PathHull { completion, halfspaces, start, end })
}

/// Every reduced word equal to `w` (same endpoints, homotopic rel ends).
pub fn reduced_forms(y: &Arc<CubeComplex>, w: &CubicalWord) -> Result<Vec<CubicalWord>, GroupError> {
    let h = path_hull(y, w)?;
    let mut out: Vec<CubicalWord> =
        geodesics(h.complex(), &h.halfspaces, h.start, h.end).iter().map(|p| h.project(p, w.base)).collect();
    out.sort();
    Ok(out)
}

/// One reduced word equal to `w`, found greedily.
pub fn reduced_form(y: &Arc<CubeComplex>, w: &CubicalWord) -> Result<CubicalWord, GroupError> {
    let h = path_hull(y, w)?;
    let x = h.complex();
    let mut at = h.start;
    let mut path = Vec::with_capacity(h.distance());
    while at != h.end {
        let g = *x
            .germs(at)
            .iter()
            .find(|g| {
                let k = h.halfspaces.hyperplanes.of_edge(g.edge);
                h.halfspaces.is_plus(k, at) != h.halfspaces.is_plus(k, h.end)
            })
            .expect("a separating hyperplane is adjacent");
        path.push(g);
        at = x.terminus(g);
    }
    Ok(h.project(&path, w.base))
}

/// The reduced forms of `w` read off a ball of radius `|w| + 1` in the
/// universal cover; agrees with [`reduced_forms`] but grows with the ball.
pub fn reduced_forms_in_ball(y: &Arc<CubeComplex>, w: &CubicalWord) -> Result<Vec<CubicalWord>, GroupError> {
    if !w.is_path(y) {
        return Err(GroupError::NotAPath);
    }
    let b = universal_cover_ball(y.clone(), w.base, w.len() + 1).map_err(GroupError::Geometry)?;
    let end = b.lift_from_center(&w.letters).expect("words of length below the radius lift");
    let mut out: Vec<CubicalWord> = b
        .geodesics(b.center, end)
        .map_err(GroupError::Geometry)?
        .iter()
        .map(|p| CubicalWord::new(w.base, p.iter().map(|&g| b.projection.germ_image(g)).collect()))
        .collect();
    out.sort();
    Ok(out)
}

/// Both words run between the same endpoints and are homotopic rel ends.
pub fn words_equal(y: &Arc<CubeComplex>, w1: &CubicalWord, w2: &CubicalWord) -> Result<bool, GroupError> {
    if w1.base != w2.base {
        return Ok(false);
    }
    let (Some(e1), Some(e2)) = (w1.end(y), w2.end(y)) else {
        return Err(GroupError::NotAPath);
    };
    if e1 != e2 {
        return Ok(false);
    }
    let h = path_hull(y, &w1.concat(&w2.inverse(y)))?;
    Ok(h.start == h.end)
}
