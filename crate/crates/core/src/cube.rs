//! Model cubes and their characteristic corner/edge assignments.
//!
//! An `n`-cube is stored as a total map from the corners of the model cube
//! `{0,1}^n` to vertices, and from the model edges to directed edges. Corner
//! `m` is a bitmask whose bit `i` is coordinate `i`. A model edge runs along
//! one axis from a base corner (with that axis' bit clear) to the corner with
//! the bit set; it is addressed by `(axis, base)`.

use std::fmt;

use itertools::Itertools;

/// Dense vertex identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Dense edge identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

/// Dense identifier of a cube of dimension at least two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeId(pub u32);

macro_rules! id_impls {
    ($($t:ident),*) => {$(
        impl $t {
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }
        impl From<usize> for $t {
            #[inline]
            fn from(i: usize) -> Self {
                $t(i as u32)
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    )*};
}
id_impls!(VertexId, EdgeId, CubeId);

/// An edge together with a direction of travel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedEdge {
    pub edge: EdgeId,
    /// `true` when travelling from the edge's source to its target.
    pub forward: bool,
}

impl DirectedEdge {
    pub fn new(edge: EdgeId, forward: bool) -> Self {
        Self { edge, forward }
    }

    pub fn forward(edge: EdgeId) -> Self {
        Self { edge, forward: true }
    }

    #[must_use]
    pub fn reversed(self) -> Self {
        Self { edge: self.edge, forward: !self.forward }
    }

    /// `self` when `forward`, otherwise its reverse.
    #[must_use]
    pub fn oriented(self, forward: bool) -> Self {
        if forward {
            self
        } else {
            self.reversed()
        }
    }

    pub(crate) fn code(self) -> u32 {
        self.edge.0 * 2 + u32::from(!self.forward)
    }
}

impl fmt::Display for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.forward {
            write!(f, "{}", self.edge)
        } else {
            write!(f, "{}^-1", self.edge)
        }
    }
}

#[inline]
pub fn corner_count(dim: usize) -> usize {
    1 << dim
}

#[inline]
pub fn model_edge_count(dim: usize) -> usize {
    if dim == 0 {
        0
    } else {
        dim << (dim - 1)
    }
}

/// Index of model edge `(axis, base)` in a cube's edge table.
#[inline]
pub fn model_edge_index(dim: usize, axis: usize, base: u32) -> usize {
    debug_assert!(base & (1 << axis) == 0);
    let low = base & ((1 << axis) - 1);
    let high = base >> (axis + 1);
    (axis << (dim - 1)) | (low | (high << axis)) as usize
}

/// Inverse of [`model_edge_index`].
#[inline]
pub fn model_edge(dim: usize, index: usize) -> (usize, u32) {
    let axis = index >> (dim - 1);
    let squeezed = (index & ((1 << (dim - 1)) - 1)) as u32;
    let low = squeezed & ((1 << axis) - 1);
    let high = squeezed >> axis;
    (axis, low | (high << (axis + 1)))
}

/// An element of the hyperoctahedral group acting on model corners.
///
/// Applied to a corner `m`, bit `i` of the result is bit `perm[i]` of `m`
/// xor bit `i` of `flips`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symmetry {
    pub perm: Vec<u8>,
    pub flips: u32,
}

impl Symmetry {
    pub fn identity(dim: usize) -> Self {
        Self { perm: (0..dim as u8).collect(), flips: 0 }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    pub fn apply(&self, m: u32) -> u32 {
        let mut out = 0;
        for (i, &p) in self.perm.iter().enumerate() {
            out |= ((m >> p) & 1) << i;
        }
        out ^ self.flips
    }

    /// All symmetries of the `dim`-cube in lexicographic `(perm, flips)` order.
    pub fn all(dim: usize) -> Vec<Symmetry> {
        let mut out = Vec::with_capacity((1..=dim).product::<usize>() << dim);
        for perm in (0..dim as u8).permutations(dim) {
            for flips in 0..(1u32 << dim) {
                out.push(Symmetry { perm: perm.clone(), flips });
            }
        }
        out
    }
}

/// Characteristic assignment of a cube of dimension `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cube {
    pub corners: Vec<VertexId>,
    pub edges: Vec<DirectedEdge>,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.corners.len().trailing_zeros() as usize
    }

    #[inline]
    pub fn corner(&self, m: u32) -> VertexId {
        self.corners[m as usize]
    }

    /// The stored edge for model edge `(axis, base)`, oriented in the model
    /// direction.
    #[inline]
    pub fn edge(&self, axis: usize, base: u32) -> DirectedEdge {
        self.edges[model_edge_index(self.dim(), axis, base)]
    }

    /// The directed edge running from corner `from` to the adjacent corner
    /// `to`.
    pub fn edge_between(&self, from: u32, to: u32) -> DirectedEdge {
        let diff = from ^ to;
        debug_assert_eq!(diff.count_ones(), 1);
        let axis = diff.trailing_zeros() as usize;
        let base = from & !diff;
        self.edge(axis, base).oriented(from == base)
    }

    /// The germ leaving corner `m` along `axis`.
    #[inline]
    pub fn germ(&self, m: u32, axis: usize) -> DirectedEdge {
        self.edge_between(m, m ^ (1 << axis))
    }

    /// The cube re-read through a corner table: corner `m` of the result is
    /// corner `table[m]` of `self`. The table must be a cube automorphism.
    pub fn relabeled(&self, table: &[u32]) -> Cube {
        let dim = self.dim();
        let corners = table.iter().map(|&t| self.corner(t)).collect();
        let edges = (0..model_edge_count(dim))
            .map(|i| {
                let (axis, base) = model_edge(dim, i);
                self.edge_between(table[base as usize], table[(base | (1 << axis)) as usize])
            })
            .collect();
        Cube { corners, edges }
    }

    pub fn transformed(&self, sym: &Symmetry) -> Cube {
        let table: Vec<u32> = (0..corner_count(self.dim()) as u32).map(|m| sym.apply(m)).collect();
        self.relabeled(&table)
    }

    /// The face spanned by `axes` (ascending) at the corner `base`, whose bits
    /// on `axes` are clear. Requires at least two axes.
    pub fn subcube(&self, axes: &[usize], base: u32) -> Cube {
        let table: Vec<u32> = (0..corner_count(axes.len()) as u32)
            .map(|m| spread(m, axes) | base)
            .collect();
        let dim = axes.len();
        let corners = table.iter().map(|&t| self.corner(t)).collect();
        let edges = (0..model_edge_count(dim))
            .map(|i| {
                let (axis, b) = model_edge(dim, i);
                self.edge_between(table[b as usize], table[(b | (1 << axis)) as usize])
            })
            .collect();
        Cube { corners, edges }
    }

    /// The `2n` codimension-one faces as `(axis, value, face)`; only
    /// meaningful for `n >= 3`.
    pub fn facets(&self) -> Vec<(usize, bool, Cube)> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(2 * dim);
        for axis in 0..dim {
            let rest: Vec<usize> = (0..dim).filter(|&a| a != axis).collect();
            for value in [false, true] {
                let base = if value { 1 << axis } else { 0 };
                out.push((axis, value, self.subcube(&rest, base)));
            }
        }
        out
    }

    /// Apply vertex and edge maps to the assignment.
    pub fn mapped(
        &self,
        vertex: impl Fn(VertexId) -> VertexId,
        edge: impl Fn(DirectedEdge) -> DirectedEdge,
    ) -> Cube {
        Cube {
            corners: self.corners.iter().map(|&v| vertex(v)).collect(),
            edges: self.edges.iter().map(|&e| edge(e)).collect(),
        }
    }

    fn encode(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(1 + self.corners.len() + self.edges.len());
        out.push(self.dim() as u32);
        out.extend(self.corners.iter().map(|v| v.0));
        out.extend(self.edges.iter().map(|e| e.code()));
        out
    }

    /// The least encoding over all model symmetries; two cubes have equal keys
    /// iff their assignments agree up to symmetry.
    pub fn key(&self) -> CubeKey {
        Symmetry::all(self.dim())
            .iter()
            .map(|s| self.transformed(s).encode())
            .min()
            .map(CubeKey)
            .expect("cube has at least one symmetry")
    }

    /// The representative whose encoding is the key.
    pub fn canonical(&self) -> Cube {
        Symmetry::all(self.dim())
            .iter()
            .map(|s| self.transformed(s))
            .min_by_key(Cube::encode)
            .expect("cube has at least one symmetry")
    }

    /// Least symmetry `s` with `self.transformed(s) == *other`.
    pub fn symmetry_onto(&self, other: &Cube) -> Option<Symmetry> {
        if self.dim() != other.dim() {
            return None;
        }
        Symmetry::all(self.dim()).into_iter().find(|s| self.transformed(s) == *other)
    }
}

/// Symmetry-invariant identity of a cube assignment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeKey(pub Vec<u32>);

/// Deposit the low bits of `m` onto the positions listed in `axes`.
#[inline]
pub fn spread(m: u32, axes: &[usize]) -> u32 {
    axes.iter().enumerate().fold(0, |acc, (i, &a)| acc | (((m >> i) & 1) << a))
}
