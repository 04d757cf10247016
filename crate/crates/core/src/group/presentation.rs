//! Spanning trees, cubical presentations, and closing up letter sequences.

use std::collections::VecDeque;
use std::fmt;

use crate::complex::CubeComplex;
use crate::cube::{CubeId, DirectedEdge, EdgeId, VertexId};
use crate::word::CubicalWord;

use super::GroupError;

/// A BFS spanning tree of the 1-skeleton rooted at the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: VertexId,
    /// Tree edges, sorted.
    pub edges: Vec<EdgeId>,
    /// Germ from each vertex's parent to the vertex; `None` at the root.
    parent: Vec<Option<DirectedEdge>>,
    in_tree: Vec<bool>,
}

impl SpanningTree {
    pub fn contains(&self, e: EdgeId) -> bool {
        self.in_tree[e.index()]
    }

    /// The tree path from the root to `v`.
    pub fn path_from_root(&self, x: &CubeComplex, v: VertexId) -> Vec<DirectedEdge> {
        let mut out = Vec::new();
        let mut at = v;
        while let Some(g) = self.parent[at.index()] {
            out.push(g);
            at = x.origin(g);
        }
        out.reverse();
        out
    }

    /// The reduced tree path from `u` to `v`.
    pub fn path(&self, x: &CubeComplex, u: VertexId, v: VertexId) -> Vec<DirectedEdge> {
        let up = self.path_from_root(x, u);
        let down = self.path_from_root(x, v);
        let common = up.iter().zip(&down).take_while(|(a, b)| a == b).count();
        up[common..].iter().rev().map(|g| g.reversed()).chain(down[common..].iter().copied()).collect()
    }
}

/// BFS from the basepoint, taking germs in edge-id order.
pub fn spanning_tree(y: &CubeComplex) -> Result<SpanningTree, GroupError> {
    let root = y.basepoint().ok_or(GroupError::NoBasepoint)?;
    let mut parent = vec![None; y.vertex_count()];
    let mut seen = vec![false; y.vertex_count()];
    let mut in_tree = vec![false; y.edge_count()];
    seen[root.index()] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &g in y.germs(v) {
            let w = y.terminus(g);
            if !seen[w.index()] {
                seen[w.index()] = true;
                parent[w.index()] = Some(g);
                in_tree[g.edge.index()] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GroupError::Disconnected);
    }
    let edges = (0..y.edge_count()).filter(|&e| in_tree[e]).map(EdgeId::from).collect();
    Ok(SpanningTree { root, edges, parent, in_tree })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relator {
    /// A tree edge, set to the identity.
    Tree(EdgeId),
    /// The boundary of a square read from corner 0: `(*0) (1*) (*1)^-1 (0*)^-1`.
    Square(CubeId, [DirectedEdge; 4]),
}

impl Relator {
    pub fn letters(&self) -> Vec<DirectedEdge> {
        match self {
            Relator::Tree(e) => vec![DirectedEdge::forward(*e)],
            Relator::Square(_, w) => w.to_vec(),
        }
    }
}

/// Generators are the edges; relators are the tree edges and the square
/// boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalPresentation {
    pub generators: Vec<EdgeId>,
    pub relators: Vec<Relator>,
    pub tree: SpanningTree,
}

impl CubicalPresentation {
    /// Edges outside the tree: a free basis of the generators that survive
    /// the tree relators.
    pub fn free_generators(&self) -> Vec<EdgeId> {
        self.generators.iter().copied().filter(|&e| !self.tree.contains(e)).collect()
    }
}

impl fmt::Display for CubicalPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generators")?;
        for e in &self.generators {
            write!(f, " {e}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            match r {
                Relator::Tree(e) => writeln!(f, "tree {e}")?,
                Relator::Square(c, w) => writeln!(f, "square {c} {} {} {} {}", w[0], w[1], w[2], w[3])?,
            }
        }
        Ok(())
    }
}

pub fn cubical_presentation(y: &CubeComplex, tree: &SpanningTree) -> CubicalPresentation {
    let generators = (0..y.edge_count()).map(EdgeId::from).collect();
    let mut relators: Vec<Relator> = tree.edges.iter().map(|&e| Relator::Tree(e)).collect();
    for c in y.cube_ids() {
        let sq = y.cube(c);
        if sq.dim() == 2 {
            let w = [sq.edge(0, 0), sq.edge(1, 1), sq.edge(0, 2).reversed(), sq.edge(1, 0).reversed()];
            relators.push(Relator::Square(c, w));
        }
    }
    CubicalPresentation { generators, relators, tree: tree.clone() }
}

/// Close up a letter sequence into a loop at the root, inserting tree paths
/// wherever consecutive letters do not meet and at both ends.
pub fn word_to_cubical(y: &CubeComplex, tree: &SpanningTree, letters: &[DirectedEdge]) -> CubicalWord {
    let mut out = Vec::with_capacity(letters.len());
    let mut at = tree.root;
    for &d in letters {
        let from = y.origin(d);
        if from != at {
            out.extend(tree.path(y, at, from));
        }
        out.push(d);
        at = y.terminus(d);
    }
    out.extend(tree.path(y, at, tree.root));
    CubicalWord::new(tree.root, out)
}

/// The loop at the root through a non-tree edge.
pub fn generator_loop(y: &CubeComplex, tree: &SpanningTree, e: DirectedEdge) -> CubicalWord {
    word_to_cubical(y, tree, &[e])
}
