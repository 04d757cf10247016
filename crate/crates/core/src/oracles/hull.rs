//! Convex hulls by closing under geodesic intervals.

use std::collections::VecDeque;

use crate::complex::CubeComplex;
use crate::cube::{CubeId, EdgeId, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteHull {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub cubes: Vec<CubeId>,
}

fn all_distances(x: &CubeComplex) -> Vec<Vec<usize>> {
    let n = x.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for e in x.edges() {
        adj[e.source.index()].push(e.target.index());
        adj[e.target.index()].push(e.source.index());
    }
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in &adj[v] {
                    if d[w] == usize::MAX {
                        d[w] = d[v] + 1;
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

/// Add every vertex on a geodesic between two members until nothing changes,
/// then keep the edges and cubes with all corners inside.
pub fn brute_hull(x: &CubeComplex, s: &[VertexId]) -> BruteHull {
    let d = all_distances(x);
    let n = x.vertex_count();
    let mut inside = vec![false; n];
    for v in s {
        inside[v.index()] = true;
    }
    loop {
        let members: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
        let mut grew = false;
        for &a in &members {
            for &b in &members {
                for v in 0..n {
                    if !inside[v] && d[a][v].saturating_add(d[v][b]) == d[a][b] {
                        inside[v] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let edges = x
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| inside[e.source.index()] && inside[e.target.index()])
        .map(|(i, _)| EdgeId::from(i))
        .collect();
    let cubes = x
        .cubes()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.corners.iter().all(|v| inside[v.index()]))
        .map(|(i, _)| CubeId::from(i))
        .collect();
    BruteHull { vertices: (0..n).filter(|&v| inside[v]).map(VertexId::from).collect(), edges, cubes }
}
