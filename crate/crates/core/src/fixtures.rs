//! Standard small complexes: roses, tori, Salvetti complexes, grids.

use itertools::Itertools;

use crate::complex::{CubeComplex, Edge, RawComplex};
use crate::cube::{
    corner_count, model_edge, model_edge_count, spread, Cube, DirectedEdge, EdgeId,
    VertexId,
};

/// The Salvetti complex of the right-angled Artin group on `generators`
/// generators with the given commuting pairs: one vertex, one loop per
/// generator, one `k`-cube per `k`-clique of the commutation graph.
pub fn salvetti(generators: usize, commuting: &[(usize, usize)]) -> CubeComplex {
    let adjacent = |a: usize, b: usize| commuting.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    let edges = (0..generators).map(|_| Edge { source: VertexId(0), target: VertexId(0) }).collect();
    let mut cubes = Vec::new();
    for size in 2..=generators {
        for clique in (0..generators).combinations(size) {
            if clique.iter().tuple_combinations().all(|(&a, &b)| adjacent(a, b)) {
                cubes.push(Cube {
                    corners: vec![VertexId(0); corner_count(size)],
                    edges: (0..model_edge_count(size))
                        .map(|i| DirectedEdge::forward(EdgeId::from(clique[model_edge(size, i).0])))
                        .collect(),
                });
            }
        }
    }
    CubeComplex::from_parts(1, edges, cubes, Some(VertexId(0)))
}

/// Wedge of `n` loops.
pub fn rose(n: usize) -> CubeComplex {
    salvetti(n, &[])
}

/// The `d`-torus: `d` pairwise commuting loops.
pub fn n_torus(d: usize) -> CubeComplex {
    let pairs: Vec<_> = (0..d).tuple_combinations().collect();
    salvetti(d, &pairs)
}

pub fn torus() -> CubeComplex {
    n_torus(2)
}

/// A single `n`-cube with all of its faces; edge ids follow model-edge order.
pub fn single_cube(n: usize) -> CubeComplex {
    grid_box(&vec![1; n])
}

/// The cubulated box `[0, d_0] x ... x [0, d_{k-1}]`.
pub fn grid_box(dims: &[usize]) -> CubeComplex {
    let grid = Grid::new(dims);
    grid.complex()
}

/// Vertex numbering of [`grid_box`].
#[derive(Clone, Debug)]
pub struct Grid {
    dims: Vec<usize>,
}

impl Grid {
    pub fn new(dims: &[usize]) -> Self {
        Self { dims: dims.to_vec() }
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.iter().map(|d| d + 1).product()
    }

    pub fn vertex(&self, coords: &[usize]) -> VertexId {
        let mut idx = 0;
        for (i, &c) in coords.iter().enumerate().rev() {
            idx = idx * (self.dims[i] + 1) + c;
        }
        VertexId::from(idx)
    }

    pub fn coords(&self, v: VertexId) -> Vec<usize> {
        let mut idx = v.index();
        self.dims
            .iter()
            .map(|&d| {
                let c = idx % (d + 1);
                idx /= d + 1;
                c
            })
            .collect()
    }

    pub fn complex(&self) -> CubeComplex {
        let k = self.dims.len();
        let nv = self.vertex_count();
        let mut edges = Vec::new();
        let mut edge_of = std::collections::HashMap::new();
        for v in 0..nv {
            let c = self.coords(VertexId::from(v));
            for axis in 0..k {
                if c[axis] < self.dims[axis] {
                    let mut d = c.clone();
                    d[axis] += 1;
                    edge_of.insert((v, axis), EdgeId::from(edges.len()));
                    edges.push(Edge { source: VertexId::from(v), target: self.vertex(&d) });
                }
            }
        }
        let mut cubes = Vec::new();
        for size in 2..=k {
            for axes in (0..k).combinations(size) {
                for v in 0..nv {
                    let c = self.coords(VertexId::from(v));
                    if axes.iter().any(|&a| c[a] >= self.dims[a]) {
                        continue;
                    }
                    let corner = |m: u32| {
                        let mut d = c.clone();
                        for (i, &a) in axes.iter().enumerate() {
                            d[a] += (m >> i & 1) as usize;
                        }
                        self.vertex(&d)
                    };
                    let corners = (0..corner_count(size) as u32).map(corner).collect();
                    let edges = (0..model_edge_count(size))
                        .map(|i| {
                            let (axis, base) = model_edge(size, i);
                            DirectedEdge::forward(edge_of[&(corner(base).index(), axes[axis])])
                        })
                        .collect();
                    cubes.push(Cube { corners, edges });
                }
            }
        }
        CubeComplex::from_parts(nv, edges, cubes, Some(VertexId(0)))
    }
}

/// Three squares meeting pairwise along edges at a common corner, with no
/// 3-cube filling them: the standard failure of the flag condition.
pub fn three_squares() -> CubeComplex {
    let n = 3;
    // Corners 0..7 of the model 3-cube minus the far corner 7.
    let edges: Vec<Edge> = (0..model_edge_count(n))
        .map(|i| model_edge(n, i))
        .filter(|&(axis, base)| base | (1 << axis) != 7)
        .map(|(axis, base)| Edge { source: VertexId(base), target: VertexId(base | (1 << axis)) })
        .collect();
    let edge_id = |axis: usize, base: u32| {
        let target = VertexId(base | (1 << axis));
        EdgeId::from(
            edges
                .iter()
                .position(|e| e.source == VertexId(base) && e.target == target)
                .expect("edge present"),
        )
    };
    let cubes = (0..n)
        .combinations(2)
        .map(|axes| Cube {
            corners: (0..4).map(|m| VertexId(spread(m, &axes))).collect(),
            edges: (0..4)
                .map(|i| {
                    let (a, b) = model_edge(2, i);
                    DirectedEdge::forward(edge_id(axes[a], spread(b, &axes)))
                })
                .collect(),
        })
        .collect();
    let raw = RawComplex { vertex_count: 7, edges, cubes, basepoint: Some(VertexId(0)) };
    CubeComplex::validate(raw).expect("three squares fixture is valid")
}

/// Connected double cover of the torus along the first generator: vertices
/// `p0, p1`; edges `a0: p0->p1`, `a1: p1->p0`, `b0` loop at `p0`, `b1` loop at
/// `p1`.
pub fn torus_double_cover() -> CubeComplex {
    let e = |s: u32, t: u32| Edge { source: VertexId(s), target: VertexId(t) };
    let edges = vec![e(0, 1), e(1, 0), e(0, 0), e(1, 1)];
    let f = |i: u32| DirectedEdge::forward(EdgeId(i));
    let square = |p: u32, q: u32, a: u32, a2: u32, b: u32, b2: u32| Cube {
        corners: vec![VertexId(p), VertexId(q), VertexId(p), VertexId(q)],
        // Model edges in index order: (*0), (*1), (0*), (1*).
        edges: vec![f(a), f(a2), f(b), f(b2)],
    };
    let cubes = vec![square(0, 1, 0, 0, 2, 3), square(1, 0, 1, 1, 3, 2)];
    let raw = RawComplex { vertex_count: 2, edges, cubes, basepoint: Some(VertexId(0)) };
    CubeComplex::validate(raw).expect("double cover fixture is valid")
}

/// A circle subdivided into `n` edges `i -> i+1 (mod n)`.
pub fn cycle(n: usize) -> CubeComplex {
    let edges = (0..n)
        .map(|i| Edge { source: VertexId::from(i), target: VertexId::from((i + 1) % n) })
        .collect();
    CubeComplex::from_parts(n, edges, vec![], Some(VertexId(0)))
}
