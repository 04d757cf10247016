//! Vertex links, the flag condition, and non-positive curvature.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::complex::CubeComplex;
use crate::cube::{CubeId, DirectedEdge, VertexId};

/// One simplex of a link: the germs at a cube corner, ordered by cube axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkSimplex {
    /// Indices into [`LinkComplex::germs`].
    pub vertices: Vec<usize>,
    pub cube: CubeId,
    pub corner: u32,
}

impl LinkSimplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertex_set(&self) -> Vec<usize> {
        let mut s = self.vertices.clone();
        s.sort_unstable();
        s
    }
}

/// The link of a vertex: germs as vertices, one simplex per cube corner.
#[derive(Clone, Debug)]
pub struct LinkComplex {
    pub center: VertexId,
    pub germs: Vec<DirectedEdge>,
    /// Simplices of dimension >= 1, in cube-then-corner order.
    pub simplices: Vec<LinkSimplex>,
    index: HashMap<DirectedEdge, usize>,
    by_set: HashMap<Vec<usize>, Vec<usize>>,
    simplicial: bool,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(VertexId),
    #[error("link of vertex {0} is not simplicial")]
    NotSimplicial(VertexId),
}

impl LinkComplex {
    pub fn germ_index(&self, g: DirectedEdge) -> Option<usize> {
        self.index.get(&g).copied()
    }

    /// No simplex repeats a germ and no two witnesses share a vertex set.
    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    /// Simplices whose vertex set is exactly `set` (sorted germ indices).
    pub fn simplices_on(&self, set: &[usize]) -> &[usize] {
        self.by_set.get(set).map_or(&[], Vec::as_slice)
    }

    pub fn spans(&self, set: &[usize]) -> bool {
        set.len() == 1 || !self.simplices_on(set).is_empty()
    }

    /// The 1-skeleton as adjacency sets.
    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.germs.len()];
        for s in self.simplices.iter().filter(|s| s.vertices.len() == 2) {
            let (a, b) = (s.vertices[0], s.vertices[1]);
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj
    }
}

pub fn link(x: &CubeComplex, v: VertexId) -> Result<LinkComplex, LinkError> {
    if !x.contains_vertex(v) {
        return Err(LinkError::UnknownVertex(v));
    }
    let germs = x.germs(v).to_vec();
    let index: HashMap<DirectedEdge, usize> = germs.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut simplices = Vec::new();
    for (cube, corner) in x.cube_corners_at(v) {
        let c = x.cube(cube);
        let vertices = (0..c.dim()).map(|axis| index[&c.germ(corner, axis)]).collect();
        simplices.push(LinkSimplex { vertices, cube, corner });
    }
    let mut by_set: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut simplicial = true;
    for (i, s) in simplices.iter().enumerate() {
        let set = s.vertex_set();
        if set.windows(2).any(|w| w[0] == w[1]) {
            simplicial = false;
        }
        let entry = by_set.entry(set).or_default();
        if !entry.is_empty() {
            simplicial = false;
        }
        entry.push(i);
    }
    Ok(LinkComplex { center: v, germs, simplices, index, by_set, simplicial })
}

/// Result of the flag test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlagVerdict {
    Flag,
    /// A clique of the 1-skeleton spanning no simplex, all of whose proper
    /// sub-cliques do span simplices.
    EmptySimplex(Vec<DirectedEdge>),
}

impl FlagVerdict {
    pub fn is_flag(&self) -> bool {
        matches!(self, FlagVerdict::Flag)
    }
}

/// Every clique of the 1-skeleton spans a simplex. Cliques are scanned by
/// size, then lexicographically, so the first failure is minimal.
pub fn is_flag(l: &LinkComplex) -> Result<FlagVerdict, LinkError> {
    if !l.is_simplicial() {
        return Err(LinkError::NotSimplicial(l.center));
    }
    let adj = l.adjacency();
    let mut cliques: Vec<Vec<usize>> = (0..l.germs.len())
        .flat_map(|a| adj[a].range(a + 1..).map(move |&b| vec![a, b]))
        .collect();
    while !cliques.is_empty() {
        let mut next = Vec::new();
        for c in &cliques {
            let last = *c.last().expect("cliques are nonempty");
            for &w in adj[last].range(last + 1..) {
                if c.iter().all(|u| adj[*u].contains(&w)) {
                    let mut d = c.clone();
                    d.push(w);
                    next.push(d);
                }
            }
        }
        for c in &next {
            if !l.spans(c) {
                return Ok(FlagVerdict::EmptySimplex(c.iter().map(|&i| l.germs[i]).collect()));
            }
        }
        cliques = next;
    }
    Ok(FlagVerdict::Flag)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCurvature {
    pub vertex: VertexId,
    pub simplicial: bool,
    /// `None` when the link is not simplicial.
    pub flag: Option<FlagVerdict>,
}

impl VertexCurvature {
    pub fn ok(&self) -> bool {
        self.simplicial && self.flag.as_ref().is_some_and(FlagVerdict::is_flag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NpcReport {
    pub vertices: Vec<VertexCurvature>,
}

impl NpcReport {
    pub fn is_npc(&self) -> bool {
        self.vertices.iter().all(VertexCurvature::ok)
    }

    pub fn first_failure(&self) -> Option<&VertexCurvature> {
        self.vertices.iter().find(|v| !v.ok())
    }
}

/// Links are simplicial flag complexes at every vertex.
pub fn check_npc(x: &CubeComplex) -> NpcReport {
    let vertices = x
        .vertices()
        .map(|v| {
            let l = link(x, v).expect("vertex of the complex");
            let flag = is_flag(&l).ok();
            VertexCurvature { vertex: v, simplicial: l.is_simplicial(), flag }
        })
        .collect();
    NpcReport { vertices }
}

/// Brute-force flag test by enumerating every vertex subset; for tests on
/// links with few germs.
pub fn is_flag_brute_force(l: &LinkComplex) -> bool {
    let n = l.germs.len();
    assert!(n <= 20, "brute force limited to 20 germs");
    let edges: HashSet<(usize, usize)> = l
        .simplices
        .iter()
        .filter(|s| s.vertices.len() == 2)
        .map(|s| (s.vertices[0].min(s.vertices[1]), s.vertices[0].max(s.vertices[1])))
        .collect();
    (0u32..1 << n).all(|mask| {
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if set.len() < 3 {
            return true;
        }
        let clique = set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| edges.contains(&(a, b))));
        !clique || l.spans(&set)
    })
}
