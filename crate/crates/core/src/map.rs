//! Cubical maps and the local conditions: immersion, local isometry, covering.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{Cell, CubeComplex};
use crate::cube::{Cube, CubeId, DirectedEdge, EdgeId, Symmetry, VertexId};
use crate::link::{link, LinkComplex};

/// Image of a cube: `target.transformed(symmetry)` equals the domain cube's
/// assignment pushed through the vertex and edge maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeImage {
    pub cube: CubeId,
    pub symmetry: Symmetry,
}

/// Unchecked map data. `None` edge images model a collapsed edge; `None`
/// cube images ask validation to find the least matching target cube.
#[derive(Clone, Debug, Default)]
pub struct RawMap {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<Option<DirectedEdge>>,
    pub cube_map: Vec<Option<CubeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    MissingImage(Cell),
    UnknownImage(Cell),
    /// The edge is sent to a vertex; cubical maps preserve dimension.
    Collapsed(EdgeId),
    EndpointMismatch(EdgeId),
    NoReconcilingSymmetry(CubeId),
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::MissingImage(c) => write!(f, "{c} has no image"),
            MapViolation::UnknownImage(c) => write!(f, "{c} is sent to a cell outside the codomain"),
            MapViolation::Collapsed(e) => write!(f, "edge {e} collapses to a vertex"),
            MapViolation::EndpointMismatch(e) => write!(f, "edge {e} does not commute with endpoints"),
            MapViolation::NoReconcilingSymmetry(c) => {
                write!(f, "cube {c}: no model symmetry reconciles the corner and edge images")
            }
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("invalid cubical map ({} violation(s)); first: {}", .0.len(), .0[0])]
pub struct InvalidMap(pub Vec<MapViolation>);

/// A missing simplex in the image of a link map: the germs at `vertex` map
/// onto the germs of `target` at `corner` (in axis order) but span nothing in
/// the domain link.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AttachmentSite {
    pub vertex: VertexId,
    pub germs: Vec<DirectedEdge>,
    pub target: CubeId,
    pub corner: u32,
}

/// Why a map fails to be locally injective or locally full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalFailure {
    GermCollision { vertex: VertexId, first: DirectedEdge, second: DirectedEdge },
    /// A cube corner at which two axes carry the same germ.
    DegenerateSimplex { vertex: VertexId, cube: CubeId, corner: u32 },
    /// Two cube corners spanning the same germ set.
    DuplicateSimplex { vertex: VertexId, first: (CubeId, u32), second: (CubeId, u32) },
    MissingSimplex(AttachmentSite),
}

impl LocalFailure {
    pub fn vertex(&self) -> VertexId {
        match self {
            LocalFailure::GermCollision { vertex, .. }
            | LocalFailure::DegenerateSimplex { vertex, .. }
            | LocalFailure::DuplicateSimplex { vertex, .. } => *vertex,
            LocalFailure::MissingSimplex(site) => site.vertex,
        }
    }
}

/// The map of links induced at one vertex.
#[derive(Clone, Debug)]
pub struct LinkMap {
    pub source: LinkComplex,
    pub target: LinkComplex,
    /// Germ `i` of the source goes to germ `germ_map[i]` of the target.
    pub germ_map: Vec<usize>,
    pub simplex_map: Vec<usize>,
}

impl LinkMap {
    pub fn is_vertex_injective(&self) -> bool {
        let mut seen = vec![false; self.target.germs.len()];
        self.germ_map.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoveringReport {
    pub covering: bool,
    /// Number of domain vertices over the codomain basepoint.
    pub fiber: usize,
}

/// A dimension-preserving map between cube complexes.
#[derive(Clone, Debug)]
pub struct CubicalMap {
    domain: CubeComplex,
    codomain: Arc<CubeComplex>,
    codomain_links: Arc<Vec<LinkComplex>>,
    vertex_map: Vec<VertexId>,
    edge_map: Vec<DirectedEdge>,
    cube_map: Vec<CubeImage>,
}

pub(crate) fn links_of(x: &CubeComplex) -> Vec<LinkComplex> {
    x.vertices().map(|v| link(x, v).expect("vertex of the complex")).collect()
}

impl CubicalMap {
    pub fn validate(domain: CubeComplex, codomain: Arc<CubeComplex>, raw: RawMap) -> Result<Self, InvalidMap> {
        let links = Arc::new(links_of(&codomain));
        Self::validate_with_links(domain, codomain, links, raw)
    }

    pub(crate) fn validate_with_links(
        domain: CubeComplex,
        codomain: Arc<CubeComplex>,
        codomain_links: Arc<Vec<LinkComplex>>,
        raw: RawMap,
    ) -> Result<Self, InvalidMap> {
        let mut bad = Vec::new();
        if raw.vertex_map.len() < domain.vertex_count() {
            for v in raw.vertex_map.len()..domain.vertex_count() {
                bad.push(MapViolation::MissingImage(Cell::Vertex(VertexId::from(v))));
            }
        }
        for (v, w) in raw.vertex_map.iter().enumerate().take(domain.vertex_count()) {
            if !codomain.contains_vertex(*w) {
                bad.push(MapViolation::UnknownImage(Cell::Vertex(VertexId::from(v))));
            }
        }
        let mut edge_map = Vec::with_capacity(domain.edge_count());
        for i in 0..domain.edge_count() {
            let id = EdgeId::from(i);
            match raw.edge_map.get(i) {
                None => bad.push(MapViolation::MissingImage(Cell::Edge(id))),
                Some(None) => bad.push(MapViolation::Collapsed(id)),
                Some(Some(d)) if d.edge.index() >= codomain.edge_count() => {
                    bad.push(MapViolation::UnknownImage(Cell::Edge(id)))
                }
                Some(Some(d)) => edge_map.push(*d),
            }
        }
        if !bad.is_empty() {
            return Err(InvalidMap(bad));
        }
        let vertex_map = raw.vertex_map[..domain.vertex_count()].to_vec();
        for (i, e) in domain.edges().iter().enumerate() {
            let img = edge_map[i];
            if codomain.origin(img) != vertex_map[e.source.index()]
                || codomain.terminus(img) != vertex_map[e.target.index()]
            {
                bad.push(MapViolation::EndpointMismatch(EdgeId::from(i)));
            }
        }
        if !bad.is_empty() {
            return Err(InvalidMap(bad));
        }
        let mut cube_map = Vec::with_capacity(domain.cube_count());
        for (i, c) in domain.cubes().iter().enumerate() {
            let id = CubeId::from(i);
            let pushed = push_cube(c, &vertex_map, &edge_map);
            let hint = raw.cube_map.get(i).copied().flatten();
            if let Some(h) = hint {
                if h.index() >= codomain.cube_count() {
                    bad.push(MapViolation::UnknownImage(Cell::Cube(id)));
                    continue;
                }
            }
            match infer_cube_image(&codomain, &pushed, hint) {
                Some(img) => cube_map.push(img),
                None => bad.push(MapViolation::NoReconcilingSymmetry(id)),
            }
        }
        if !bad.is_empty() {
            return Err(InvalidMap(bad));
        }
        Ok(Self { domain, codomain, codomain_links, vertex_map, edge_map, cube_map })
    }

    /// Assemble a map whose invariants the caller has established.
    pub(crate) fn from_parts(
        domain: CubeComplex,
        codomain: Arc<CubeComplex>,
        codomain_links: Arc<Vec<LinkComplex>>,
        vertex_map: Vec<VertexId>,
        edge_map: Vec<DirectedEdge>,
        cube_map: Vec<CubeImage>,
    ) -> Self {
        let m = Self { domain, codomain, codomain_links, vertex_map, edge_map, cube_map };
        debug_assert!(m.check_commutes(), "map does not commute with cell data");
        m
    }

    fn check_commutes(&self) -> bool {
        self.domain.edges().iter().enumerate().all(|(i, e)| {
            let img = self.edge_map[i];
            self.codomain.origin(img) == self.vertex_map[e.source.index()]
                && self.codomain.terminus(img) == self.vertex_map[e.target.index()]
        }) && self.domain.cubes().iter().zip(&self.cube_map).all(|(c, img)| {
            self.codomain.cube(img.cube).transformed(&img.symmetry) == push_cube(c, &self.vertex_map, &self.edge_map)
        })
    }

    /// The identity map of a based complex.
    pub fn identity(x: Arc<CubeComplex>) -> Self {
        let links = Arc::new(links_of(&x));
        Self::from_parts(
            (*x).clone(),
            x.clone(),
            links,
            x.vertices().collect(),
            (0..x.edge_count()).map(|e| DirectedEdge::forward(EdgeId::from(e))).collect(),
            x.cubes().iter().enumerate().map(|(i, c)| CubeImage { cube: CubeId::from(i), symmetry: Symmetry::identity(c.dim()) }).collect(),
        )
    }

    pub fn domain(&self) -> &CubeComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<CubeComplex> {
        &self.codomain
    }

    pub(crate) fn codomain_links(&self) -> &Arc<Vec<LinkComplex>> {
        &self.codomain_links
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.index()]
    }

    pub fn edge_image(&self, e: EdgeId) -> DirectedEdge {
        self.edge_map[e.index()]
    }

    pub fn germ_image(&self, g: DirectedEdge) -> DirectedEdge {
        self.edge_map[g.edge.index()].oriented(g.forward)
    }

    pub fn cube_image(&self, c: CubeId) -> &CubeImage {
        &self.cube_map[c.index()]
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[DirectedEdge] {
        &self.edge_map
    }

    pub fn cube_map(&self) -> &[CubeImage] {
        &self.cube_map
    }

    pub fn into_parts(self) -> (CubeComplex, Vec<VertexId>, Vec<DirectedEdge>, Vec<CubeImage>) {
        (self.domain, self.vertex_map, self.edge_map, self.cube_map)
    }

    /// Both complexes are based and the map sends basepoint to basepoint.
    pub fn is_basepoint_respecting(&self) -> bool {
        match (self.domain.basepoint(), self.codomain.basepoint()) {
            (Some(p), Some(q)) => self.vertex_image(p) == q,
            _ => false,
        }
    }

    /// The germ at `v` mapping to `image`, if any (the first, by germ order).
    pub fn lift_germ(&self, v: VertexId, image: DirectedEdge) -> Option<DirectedEdge> {
        self.domain.germs(v).iter().copied().find(|&g| self.germ_image(g) == image)
    }

    /// Lift a codomain edge path starting at the domain vertex `start`.
    pub fn lift_path(&self, start: VertexId, path: &[DirectedEdge]) -> Option<Vec<DirectedEdge>> {
        let mut v = start;
        let mut out = Vec::with_capacity(path.len());
        for &letter in path {
            let g = self.lift_germ(v, letter)?;
            v = self.domain.terminus(g);
            out.push(g);
        }
        Some(out)
    }

    pub fn induced_link_map(&self, v: VertexId) -> LinkMap {
        let source = link(&self.domain, v).expect("vertex of the domain");
        let target = self.codomain_links[self.vertex_image(v).index()].clone();
        let germ_map = source
            .germs
            .iter()
            .map(|&g| target.germ_index(self.germ_image(g)).expect("image germ leaves the image vertex"))
            .collect();
        let by_witness: HashMap<(CubeId, u32), usize> =
            target.simplices.iter().enumerate().map(|(i, s)| ((s.cube, s.corner), i)).collect();
        let simplex_map = source
            .simplices
            .iter()
            .map(|s| {
                let img = self.cube_image(s.cube);
                by_witness[&(img.cube, img.symmetry.apply(s.corner))]
            })
            .collect();
        LinkMap { source, target, germ_map, simplex_map }
    }

    /// First failure of local injectivity at `v`.
    pub fn immersion_failure_at(&self, v: VertexId) -> Option<LocalFailure> {
        let germs = self.domain.germs(v);
        let mut by_image: HashMap<DirectedEdge, DirectedEdge> = HashMap::with_capacity(germs.len());
        for &g in germs {
            if let Some(&first) = by_image.get(&self.germ_image(g)) {
                return Some(LocalFailure::GermCollision { vertex: v, first, second: g });
            }
            by_image.insert(self.germ_image(g), g);
        }
        let mut seen: HashMap<Vec<DirectedEdge>, (CubeId, u32)> = HashMap::new();
        for (cube, corner) in self.domain.cube_corners_at(v) {
            let c = self.domain.cube(cube);
            let mut set: Vec<DirectedEdge> = (0..c.dim()).map(|a| c.germ(corner, a)).collect();
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Some(LocalFailure::DegenerateSimplex { vertex: v, cube, corner });
            }
            if let Some(&first) = seen.get(&set) {
                return Some(LocalFailure::DuplicateSimplex { vertex: v, first, second: (cube, corner) });
            }
            seen.insert(set, (cube, corner));
        }
        None
    }

    /// Missing simplices at `v`, ordered by (dimension, target cube, corner).
    /// Meaningful once the map is locally injective at `v`.
    pub fn missing_simplices_at(&self, v: VertexId) -> Vec<AttachmentSite> {
        let germs = self.domain.germs(v);
        let preimage: HashMap<DirectedEdge, DirectedEdge> = germs.iter().map(|&g| (self.germ_image(g), g)).collect();
        let mut spanned: HashMap<Vec<DirectedEdge>, ()> = HashMap::new();
        for (cube, corner) in self.domain.cube_corners_at(v) {
            let c = self.domain.cube(cube);
            let mut set: Vec<DirectedEdge> = (0..c.dim()).map(|a| c.germ(corner, a)).collect();
            set.sort_unstable();
            spanned.insert(set, ());
        }
        let target = &self.codomain_links[self.vertex_image(v).index()];
        let y = &self.codomain;
        let mut out = Vec::new();
        for s in &target.simplices {
            let tc = y.cube(s.cube);
            let pre: Option<Vec<DirectedEdge>> =
                (0..tc.dim()).map(|a| preimage.get(&tc.germ(s.corner, a)).copied()).collect();
            let Some(pre) = pre else { continue };
            let mut set = pre.clone();
            set.sort_unstable();
            if !spanned.contains_key(&set) {
                out.push(AttachmentSite { vertex: v, germs: pre, target: s.cube, corner: s.corner });
            }
        }
        out.sort_by_key(|s| (s.germs.len(), s.target, s.corner));
        out
    }

    /// Every induced link map is injective. Witnesses are reported for the
    /// least failing vertex.
    pub fn is_immersion(&self) -> Result<(), LocalFailure> {
        match self.domain.vertices().find_map(|v| self.immersion_failure_at(v)) {
            Some(f) => Err(f),
            None => Ok(()),
        }
    }

    /// Immersion whose link images are full subcomplexes.
    pub fn is_local_isometry(&self) -> Result<(), LocalFailure> {
        self.is_immersion()?;
        match self.domain.vertices().find_map(|v| self.missing_simplices_at(v).into_iter().next()) {
            Some(site) => Err(LocalFailure::MissingSimplex(site)),
            None => Ok(()),
        }
    }

    /// Surjective on cells with every link map an isomorphism.
    pub fn is_covering(&self) -> CoveringReport {
        let fiber = match self.codomain.basepoint() {
            Some(q) => self.vertex_map.iter().filter(|&&w| w == q).count(),
            None => 0,
        };
        let local_iso = self.is_local_isometry().is_ok()
            && self.domain.vertices().all(|v| {
                self.domain.degree(v) == self.codomain.degree(self.vertex_image(v))
            });
        let mut hit_v = vec![false; self.codomain.vertex_count()];
        let mut hit_e = vec![false; self.codomain.edge_count()];
        let mut hit_c = vec![false; self.codomain.cube_count()];
        for w in &self.vertex_map {
            hit_v[w.index()] = true;
        }
        for d in &self.edge_map {
            hit_e[d.edge.index()] = true;
        }
        for c in &self.cube_map {
            hit_c[c.cube.index()] = true;
        }
        let onto = hit_v.iter().chain(&hit_e).chain(&hit_c).all(|&b| b);
        CoveringReport { covering: local_iso && onto, fiber }
    }
}

pub(crate) fn push_cube(c: &Cube, vertex_map: &[VertexId], edge_map: &[DirectedEdge]) -> Cube {
    c.mapped(|v| vertex_map[v.index()], |d| edge_map[d.edge.index()].oriented(d.forward))
}

/// Least `(cube, symmetry)` with `cube.transformed(symmetry) == pushed`.
pub(crate) fn infer_cube_image(codomain: &CubeComplex, pushed: &Cube, hint: Option<CubeId>) -> Option<CubeImage> {
    let candidates: Vec<CubeId> = match hint {
        Some(h) => vec![h],
        None => codomain.cubes_with_key(&pushed.key()).to_vec(),
    };
    candidates.into_iter().find_map(|cube| {
        codomain.cube(cube).symmetry_onto(pushed).map(|symmetry| CubeImage { cube, symmetry })
    })
}
