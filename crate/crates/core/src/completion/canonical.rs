//! A relabeling of a completed map that depends only on its isomorphism type.

use std::collections::VecDeque;

use thiserror::Error;

use crate::complex::{CubeComplex, Edge};
use crate::cube::{Cube, CubeId, DirectedEdge, EdgeId, VertexId};
use crate::map::CubicalMap;

use super::{CompletionResult, Status};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("completion did not finish")]
    NotFinished,
    #[error("domain has no basepoint")]
    NoBasepoint,
    #[error("domain is not connected")]
    Disconnected,
    #[error("two germs at vertex {0} have the same image")]
    NotImmersed(VertexId),
}

/// Vertices in BFS order from the basepoint (children by image germ), edges
/// oriented along their images, cubes sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub complex: CubeComplex,
    pub vertex_images: Vec<VertexId>,
    /// Every edge maps forward onto its image.
    pub edge_images: Vec<EdgeId>,
    pub cube_images: Vec<CubeId>,
}

pub fn canonicalize(r: &CompletionResult) -> Result<CanonicalForm, CanonicalError> {
    if r.status != Status::Finished {
        return Err(CanonicalError::NotFinished);
    }
    canonical_form(&r.map)
}

/// Canonical form of any based, connected, locally injective map.
pub fn canonical_form(f: &CubicalMap) -> Result<CanonicalForm, CanonicalError> {
    let x = f.domain();
    let base = x.basepoint().ok_or(CanonicalError::NoBasepoint)?;
    let mut vlabel: Vec<Option<VertexId>> = vec![None; x.vertex_count()];
    let mut elabel: Vec<Option<EdgeId>> = vec![None; x.edge_count()];
    let mut vertex_images = Vec::with_capacity(x.vertex_count());
    let mut edge_order: Vec<EdgeId> = Vec::with_capacity(x.edge_count());
    let mut queue = VecDeque::from([base]);
    vlabel[base.index()] = Some(VertexId(0));
    vertex_images.push(f.vertex_image(base));
    while let Some(v) = queue.pop_front() {
        let mut germs = x.germs(v).to_vec();
        germs.sort_by_key(|&g| f.germ_image(g));
        if germs.windows(2).any(|w| f.germ_image(w[0]) == f.germ_image(w[1])) {
            return Err(CanonicalError::NotImmersed(v));
        }
        for g in germs {
            if elabel[g.edge.index()].is_none() {
                elabel[g.edge.index()] = Some(EdgeId::from(edge_order.len()));
                edge_order.push(g.edge);
            }
            let w = x.terminus(g);
            if vlabel[w.index()].is_none() {
                vlabel[w.index()] = Some(VertexId::from(vertex_images.len()));
                vertex_images.push(f.vertex_image(w));
                queue.push_back(w);
            }
        }
    }
    if vertex_images.len() != x.vertex_count() || edge_order.len() != x.edge_count() {
        return Err(CanonicalError::Disconnected);
    }
    let vl = |v: VertexId| vlabel[v.index()].expect("all vertices labeled");
    let flip: Vec<bool> = (0..x.edge_count()).map(|e| !f.edge_map()[e].forward).collect();
    let edges: Vec<Edge> = edge_order
        .iter()
        .map(|&e| {
            let Edge { source, target } = x.edge(e);
            if flip[e.index()] {
                Edge { source: vl(target), target: vl(source) }
            } else {
                Edge { source: vl(source), target: vl(target) }
            }
        })
        .collect();
    let edge_images = edge_order.iter().map(|&e| f.edge_image(e).edge).collect();
    let relabel = |d: DirectedEdge| {
        DirectedEdge::new(elabel[d.edge.index()].expect("all edges labeled"), d.forward != flip[d.edge.index()])
    };
    let mut cubes: Vec<(Cube, CubeId)> = x
        .cube_ids()
        .map(|c| (x.cube(c).mapped(vl, relabel).canonical(), f.cube_image(c).cube))
        .collect();
    cubes.sort_by(|a, b| a.0.key().cmp(&b.0.key()).then(a.1.cmp(&b.1)));
    let cube_images = cubes.iter().map(|c| c.1).collect();
    let complex = CubeComplex::from_parts(
        vertex_images.len(),
        edges,
        cubes.into_iter().map(|c| c.0).collect(),
        Some(VertexId(0)),
    );
    Ok(CanonicalForm { complex, vertex_images, edge_images, cube_images })
}
