//! Hyperplanes as classes of edges under "opposite sides of a square".

use petgraph::unionfind::UnionFind;

use crate::complex::CubeComplex;
use crate::cube::EdgeId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub id: usize,
    /// Sorted, nonempty.
    pub dual_edges: Vec<EdgeId>,
}

/// The hyperplanes of a complex together with the edge-to-hyperplane lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplanes {
    pub classes: Vec<Hyperplane>,
    of_edge: Vec<usize>,
}

impl Hyperplanes {
    pub fn of_edge(&self, e: EdgeId) -> usize {
        self.of_edge[e.index()]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Partition the edges; hyperplanes are numbered by their least edge.
pub fn hyperplanes(x: &CubeComplex) -> Hyperplanes {
    let n = x.edge_count();
    let mut uf = UnionFind::<usize>::new(n);
    for c in x.cubes().iter().filter(|c| c.dim() == 2) {
        // Opposite sides: (*0, *1) and (0*, 1*).
        uf.union(c.edges[0].edge.index(), c.edges[1].edge.index());
        uf.union(c.edges[2].edge.index(), c.edges[3].edge.index());
    }
    let mut of_edge = vec![usize::MAX; n];
    let mut classes: Vec<Hyperplane> = Vec::new();
    let mut class_of_root = vec![usize::MAX; n];
    for e in 0..n {
        let r = uf.find(e);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes.len();
            classes.push(Hyperplane { id: classes.len(), dual_edges: Vec::new() });
        }
        let h = class_of_root[r];
        of_edge[e] = h;
        classes[h].dual_edges.push(EdgeId::from(e));
    }
    Hyperplanes { classes, of_edge }
}
