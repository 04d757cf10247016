//! Subgroups of Z^d by integer row reduction.

use thiserror::Error;

use crate::complex::CubeComplex;
use crate::word::CubicalWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("complex is not a standard torus")]
    NotATorus,
}

/// Exponent sums of a word over the `d`-torus (one vertex, `d` loops, every
/// pair spanning a square).
pub fn exponents(y: &CubeComplex, w: &CubicalWord) -> Result<Vec<i64>, LatticeError> {
    let d = y.edge_count();
    let squares = y.cubes().iter().filter(|c| c.corners.len() == 4).count();
    if y.vertex_count() != 1 || squares != d * d.saturating_sub(1) / 2 {
        return Err(LatticeError::NotATorus);
    }
    let mut v = vec![0i64; d];
    for l in &w.letters {
        v[l.edge.index()] += if l.forward { 1 } else { -1 };
    }
    Ok(v)
}

/// A subgroup of Z^d in row echelon (Hermite) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Self {
        let mut rows: Vec<Vec<i64>> = generators.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
        let mut out = Vec::new();
        for col in 0..dim {
            // Euclid on column `col` among the remaining rows.
            loop {
                rows.retain(|r| r.iter().any(|&x| x != 0));
                let live: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
                if live.len() <= 1 {
                    break;
                }
                let p = *live.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
                let pivot = rows[p].clone();
                for &i in &live {
                    if i != p {
                        let q = rows[i][col].div_euclid(pivot[col]);
                        for (x, y) in rows[i].iter_mut().zip(&pivot) {
                            *x -= q * y;
                        }
                    }
                }
            }
            if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
                let mut r = rows.remove(i);
                if r[col] < 0 {
                    r.iter_mut().for_each(|x| *x = -*x);
                }
                out.push((col, r));
            }
        }
        Lattice { dim, rows: out.into_iter().map(|(_, r)| r).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut v = v.to_vec();
        for r in &self.rows {
            let col = r.iter().position(|&x| x != 0).unwrap();
            if v[col] % r[col] != 0 {
                return false;
            }
            let q = v[col] / r[col];
            for (x, y) in v.iter_mut().zip(r) {
                *x -= q * y;
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// `|det|` when the lattice has full rank.
    pub fn index(&self) -> Option<u64> {
        (self.rank() == self.dim).then(|| self.rows.iter().enumerate().map(|(i, r)| r[i].unsigned_abs()).product())
    }

    pub fn least_power(&self, v: &[i64], bound: usize) -> Option<usize> {
        (1..=bound).find(|&k| self.contains(&v.iter().map(|x| x * k as i64).collect::<Vec<_>>()))
    }

    /// Every subgroup of an abelian group is normal.
    pub fn is_normal(&self) -> bool {
        true
    }
}
