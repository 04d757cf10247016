use std::fmt;

use crate::complex::CubeComplex;
use crate::cube::{DirectedEdge, VertexId};

/// An edge path in the 1-skeleton of a complex, starting at `base`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubicalWord {
    pub base: VertexId,
    pub letters: Vec<DirectedEdge>,
}

impl CubicalWord {
    pub fn new(base: VertexId, letters: Vec<DirectedEdge>) -> Self {
        Self { base, letters }
    }

    pub fn empty(base: VertexId) -> Self {
        Self { base, letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Endpoint of the path, or `None` if consecutive letters do not meet.
    pub fn end(&self, y: &CubeComplex) -> Option<VertexId> {
        y.trace(self.base, &self.letters)
    }

    pub fn is_path(&self, y: &CubeComplex) -> bool {
        self.end(y).is_some()
    }

    pub fn is_closed(&self, y: &CubeComplex) -> bool {
        self.end(y) == Some(self.base)
    }

    /// The reverse path. Requires a path.
    pub fn inverse(&self, y: &CubeComplex) -> Self {
        let end = self.end(y).expect("inverse of a non-path");
        Self { base: end, letters: self.letters.iter().rev().map(|d| d.reversed()).collect() }
    }

    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { base: self.base, letters }
    }

    /// `self^k` for a closed word.
    #[must_use]
    pub fn power(&self, k: usize) -> Self {
        Self { base: self.base, letters: self.letters.repeat(k) }
    }

    /// Cancel adjacent `e e^-1` pairs.
    #[must_use]
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<DirectedEdge> = Vec::with_capacity(self.letters.len());
        for &d in &self.letters {
            if out.last() == Some(&d.reversed()) {
                out.pop();
            } else {
                out.push(d);
            }
        }
        Self { base: self.base, letters: out }
    }
}

impl fmt::Display for CubicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{d}")?;
        }
        Ok(())
    }
}
