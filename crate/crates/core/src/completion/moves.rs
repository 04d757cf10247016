//! The three moves and their site searches.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::complex::{CubeComplex, Edge};
use crate::cube::{model_edge_count, model_edge_index, spread, Cube, CubeId, CubeKey, DirectedEdge, EdgeId, Symmetry, VertexId};
use crate::link::link;
use crate::map::{infer_cube_image, push_cube, AttachmentSite, CubeImage, CubicalMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Identify `second` with `first`; both leave `vertex` with equal images.
    Fold { vertex: VertexId, first: DirectedEdge, second: DirectedEdge },
    /// Remove `remove`, whose assignment equals that of `keep` up to symmetry.
    CubeIdentification { keep: CubeId, remove: CubeId },
    CubeAttachment(AttachmentSite),
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Fold { .. } => "fold",
            Move::CubeIdentification { .. } => "identify",
            Move::CubeAttachment(_) => "attach",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Fold { vertex, first, second } => write!(f, "fold {vertex} {first} {second}"),
            Move::CubeIdentification { keep, remove } => write!(f, "identify {keep} {remove}"),
            Move::CubeAttachment(s) => {
                write!(f, "attach {} {} {}", s.vertex, s.target, s.corner)?;
                for g in &s.germs {
                    write!(f, " {g}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("invalid fold site {first} {second}")]
    InvalidFold { first: DirectedEdge, second: DirectedEdge },
    #[error("cubes {keep} and {remove} are not identifiable")]
    InvalidIdentification { keep: CubeId, remove: CubeId },
    #[error("invalid attachment site at vertex {0}")]
    InvalidAttachment(VertexId),
}

/// Where the cells of the old domain went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remap {
    pub vertex: Vec<VertexId>,
    pub edge: Vec<DirectedEdge>,
}

impl Remap {
    fn identity(x: &CubeComplex) -> Self {
        Self {
            vertex: x.vertices().collect(),
            edge: (0..x.edge_count()).map(|e| DirectedEdge::forward(EdgeId::from(e))).collect(),
        }
    }
}

/// Every fold site as `(vertex, first, second)`, `first` the least germ at
/// `vertex` with the shared image.
pub fn fold_sites(f: &CubicalMap) -> Vec<(VertexId, DirectedEdge, DirectedEdge)> {
    let x = f.domain();
    let mut out = Vec::new();
    for v in x.vertices() {
        let mut by_image: BTreeMap<DirectedEdge, DirectedEdge> = BTreeMap::new();
        for &g in x.germs(v) {
            let img = f.germ_image(g);
            match by_image.get(&img) {
                Some(&first) if first.edge != g.edge => out.push((v, first, g)),
                Some(_) => {}
                None => {
                    by_image.insert(img, g);
                }
            }
        }
    }
    out
}

/// The least fold site: least vertex, then least pair of germs.
pub fn find_fold(f: &CubicalMap) -> Option<(DirectedEdge, DirectedEdge)> {
    let x = f.domain();
    for v in x.vertices() {
        let germs = x.germs(v);
        for (i, &a) in germs.iter().enumerate() {
            for &b in &germs[i + 1..] {
                if a.edge != b.edge && f.germ_image(a) == f.germ_image(b) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Quotient identifying `second` with `first`, and their far endpoints.
pub fn fold(f: &CubicalMap, first: DirectedEdge, second: DirectedEdge) -> Result<(CubicalMap, Remap), MoveError> {
    let x = f.domain();
    let bad = || MoveError::InvalidFold { first, second };
    if first.edge == second.edge
        || first.edge.index() >= x.edge_count()
        || second.edge.index() >= x.edge_count()
        || x.origin(first) != x.origin(second)
        || f.germ_image(first) != f.germ_image(second)
    {
        return Err(bad());
    }
    let t1 = x.terminus(first);
    let t2 = x.terminus(second);
    let (keep, drop) = (t1.min(t2), t1.max(t2));
    let merging = keep != drop;
    let vertex: Vec<VertexId> = x
        .vertices()
        .map(|v| {
            let v = if v == drop { keep } else { v };
            if merging && v > drop {
                VertexId(v.0 - 1)
            } else {
                v
            }
        })
        .collect();
    let removed = second.edge;
    let shift = |e: EdgeId| if e > removed { EdgeId(e.0 - 1) } else { e };
    let edge: Vec<DirectedEdge> = (0..x.edge_count())
        .map(|i| {
            let e = EdgeId::from(i);
            if e == removed {
                DirectedEdge::new(shift(first.edge), first.forward == second.forward)
            } else {
                DirectedEdge::forward(shift(e))
            }
        })
        .collect();
    let remap = Remap { vertex, edge };
    let nv = x.vertex_count() - usize::from(merging);
    let edges: Vec<Edge> = x
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != removed.index())
        .map(|(_, e)| Edge { source: remap.vertex[e.source.index()], target: remap.vertex[e.target.index()] })
        .collect();
    let cubes: Vec<Cube> = x.cubes().iter().map(|c| remap.apply(c)).collect();
    let basepoint = x.basepoint().map(|b| remap.vertex[b.index()]);
    let domain = CubeComplex::from_parts(nv, edges, cubes, basepoint);

    let mut vmap = f.vertex_map().to_vec();
    if merging {
        vmap.remove(drop.index());
    }
    let mut emap = f.edge_map().to_vec();
    emap.remove(removed.index());
    let out = CubicalMap::from_parts(
        domain,
        f.codomain().clone(),
        f.codomain_links().clone(),
        vmap,
        emap,
        f.cube_map().to_vec(),
    );
    Ok((out, remap))
}

impl Remap {
    pub(crate) fn apply(&self, c: &Cube) -> Cube {
        c.mapped(|v| self.vertex[v.index()], |d| self.edge[d.edge.index()].oriented(d.forward))
    }

    /// `self` followed by `next`.
    #[must_use]
    pub fn then(&self, next: &Remap) -> Remap {
        Remap {
            vertex: self.vertex.iter().map(|v| next.vertex[v.index()]).collect(),
            edge: self.edge.iter().map(|d| next.edge[d.edge.index()].oriented(d.forward)).collect(),
        }
    }
}

/// Every pair of distinct cubes with equal assignments up to symmetry, as
/// `(least cube of the class, other)`.
pub fn identification_sites(f: &CubicalMap) -> Vec<(CubeId, CubeId)> {
    let x = f.domain();
    let mut first: HashMap<&CubeKey, CubeId> = HashMap::new();
    let mut out = Vec::new();
    for c in x.cube_ids() {
        match first.get(x.key(c)) {
            Some(&k) => out.push((k, c)),
            None => {
                first.insert(x.key(c), c);
            }
        }
    }
    out
}

pub fn find_cube_identification(f: &CubicalMap) -> Option<(CubeId, CubeId)> {
    identification_sites(f).into_iter().min()
}

/// Remove `remove`; cell counts drop by one.
pub fn identify_cubes(f: &CubicalMap, keep: CubeId, remove: CubeId) -> Result<CubicalMap, MoveError> {
    let x = f.domain();
    if keep == remove
        || keep.index() >= x.cube_count()
        || remove.index() >= x.cube_count()
        || x.key(keep) != x.key(remove)
    {
        return Err(MoveError::InvalidIdentification { keep, remove });
    }
    let mut cubes = x.cubes().to_vec();
    cubes.remove(remove.index());
    let domain = CubeComplex::from_parts(x.vertex_count(), x.edges().to_vec(), cubes, x.basepoint());
    let mut cmap = f.cube_map().to_vec();
    cmap.remove(remove.index());
    Ok(CubicalMap::from_parts(
        domain,
        f.codomain().clone(),
        f.codomain_links().clone(),
        f.vertex_map().to_vec(),
        f.edge_map().to_vec(),
        cmap,
    ))
}

/// All missing-simplex sites, by vertex then (dimension, target, corner).
pub fn attachment_sites(f: &CubicalMap) -> Vec<AttachmentSite> {
    f.domain().vertices().flat_map(|v| f.missing_simplices_at(v)).collect()
}

pub fn find_cube_attachment(f: &CubicalMap) -> Option<AttachmentSite> {
    f.domain().vertices().find_map(|v| f.missing_simplices_at(v).into_iter().next())
}

/// The site's germs still span nothing at its vertex.
pub(crate) fn site_is_open(f: &CubicalMap, site: &AttachmentSite) -> bool {
    let x = f.domain();
    let mut set = site.germs.clone();
    set.sort_unstable();
    !x.cube_corners_at(site.vertex).into_iter().any(|(cube, corner)| {
        let c = x.cube(cube);
        let mut s: Vec<DirectedEdge> = (0..c.dim()).map(|a| c.germ(corner, a)).collect();
        s.sort_unstable();
        s == set
    })
}

/// Attach a cube over `site.target` at `site.vertex` along the site's germs.
///
/// Faces of the new cube that contain the attaching corner are glued to the
/// cubes already spanned by the corresponding germs; every other cell of the
/// new cube is created fresh, and every face not already present is added.
pub fn attach_cube(f: &CubicalMap, site: &AttachmentSite) -> Result<CubicalMap, MoveError> {
    let x = f.domain();
    let y = f.codomain();
    let v = site.vertex;
    let n = site.germs.len();
    let bad = || MoveError::InvalidAttachment(v);
    if !x.contains_vertex(v) || site.target.index() >= y.cube_count() {
        return Err(bad());
    }
    let t = y.cube(site.target);
    if t.dim() != n || n < 2 || site.corner as usize >= t.corners.len() {
        return Err(bad());
    }
    if site.germs.iter().any(|&g| g.edge.index() >= x.edge_count() || x.origin(g) != v)
        || site.germs.iter().duplicates().next().is_some()
        || f.vertex_image(v) != t.corner(site.corner)
        || (0..n).any(|i| f.germ_image(site.germs[i]) != t.germ(site.corner, i))
    {
        return Err(bad());
    }
    // Target read with the attaching corner at the origin.
    let target = t.transformed(&Symmetry { perm: (0..n as u8).collect(), flips: site.corner });

    let mut corners: Vec<Option<VertexId>> = vec![None; 1 << n];
    let mut edges: Vec<Option<DirectedEdge>> = vec![None; model_edge_count(n)];
    corners[0] = Some(v);
    for (i, &g) in site.germs.iter().enumerate() {
        edges[model_edge_index(n, i, 0)] = Some(g);
        corners[1 << i] = Some(x.terminus(g));
    }
    let lk = link(x, v).expect("vertex of the domain");
    let germ_idx: Vec<usize> = site.germs.iter().map(|&g| lk.germ_index(g).expect("germ at vertex")).collect();
    for size in (2..n).rev() {
        for axes in (0..n).combinations(size) {
            let mut set: Vec<usize> = axes.iter().map(|&i| germ_idx[i]).collect();
            set.sort_unstable();
            let Some(&si) = lk.simplices_on(&set).first() else { continue };
            let s = &lk.simplices[si];
            let c = x.cube(s.cube);
            // Axis of `c` carrying germ `i`.
            let axis_of: HashMap<usize, usize> = axes
                .iter()
                .map(|&i| (i, (0..c.dim()).find(|&b| c.germ(s.corner, b) == site.germs[i]).expect("germ of simplex")))
                .collect();
            let to_c = |m: u32| axes.iter().fold(s.corner, |acc, &i| if m >> i & 1 == 1 { acc ^ (1 << axis_of[&i]) } else { acc });
            for sub in 0..(1u32 << size) {
                let m = spread(sub, &axes);
                corners[m as usize].get_or_insert(c.corner(to_c(m)));
                for &i in &axes {
                    if m >> i & 1 == 0 {
                        let from = to_c(m);
                        edges[model_edge_index(n, i, m)].get_or_insert(c.edge_between(from, from ^ (1 << axis_of[&i])));
                    }
                }
            }
        }
    }

    let mut new_edges: Vec<Edge> = x.edges().to_vec();
    let mut vmap = f.vertex_map().to_vec();
    let mut emap = f.edge_map().to_vec();
    let mut nv = x.vertex_count();
    let corners: Vec<VertexId> = corners
        .iter()
        .enumerate()
        .map(|(m, c)| {
            c.unwrap_or_else(|| {
                let id = VertexId::from(nv);
                nv += 1;
                vmap.push(target.corner(m as u32));
                id
            })
        })
        .collect();
    let edges: Vec<DirectedEdge> = edges
        .iter()
        .enumerate()
        .map(|(i, d)| {
            d.unwrap_or_else(|| {
                let (axis, base) = crate::cube::model_edge(n, i);
                let id = EdgeId::from(new_edges.len());
                new_edges.push(Edge { source: corners[base as usize], target: corners[(base | (1 << axis)) as usize] });
                emap.push(target.edge(axis, base));
                DirectedEdge::forward(id)
            })
        })
        .collect();
    let cube = Cube { corners, edges };

    let mut cubes = x.cubes().to_vec();
    let mut cmap = f.cube_map().to_vec();
    let mut present: HashSet<CubeKey> = x.cube_ids().map(|c| x.key(c).clone()).collect();
    let mut add = |face: Cube, image: Cube, cubes: &mut Vec<Cube>, cmap: &mut Vec<CubeImage>| {
        if present.insert(face.key()) {
            let img = infer_cube_image(y, &image, None).expect("faces of codomain cubes are cubes");
            cubes.push(face);
            cmap.push(img);
        }
    };
    for size in 2..n {
        for axes in (0..n).combinations(size) {
            let rest: Vec<usize> = (0..n).filter(|a| !axes.contains(a)).collect();
            for sub in 0..(1u32 << rest.len()) {
                let base = spread(sub, &rest);
                add(cube.subcube(&axes, base), target.subcube(&axes, base), &mut cubes, &mut cmap);
            }
        }
    }
    let top_image = CubeImage { cube: site.target, symmetry: Symmetry { perm: (0..n as u8).collect(), flips: site.corner } };
    cubes.push(cube);
    cmap.push(top_image);

    let domain = CubeComplex::from_parts(nv, new_edges, cubes, x.basepoint());
    let out = CubicalMap::from_parts(domain, y.clone(), f.codomain_links().clone(), vmap, emap, cmap);
    debug_assert_eq!(
        push_cube(out.domain().cube(CubeId::from(out.domain().cube_count() - 1)), out.vertex_map(), out.edge_map()),
        target
    );
    Ok(out)
}

pub(crate) fn identity_remap(x: &CubeComplex) -> Remap {
    Remap::identity(x)
}
