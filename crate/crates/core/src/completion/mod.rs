//! Completing a based cubical map into a local isometry.

mod canonical;
mod moves;

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::complex::{CubeComplex, Edge};
use crate::cube::{DirectedEdge, EdgeId, VertexId};
use crate::map::{links_of, CubicalMap};
use crate::word::CubicalWord;

pub use canonical::{canonical_form, canonicalize, CanonicalError, CanonicalForm};
pub use moves::{
    attach_cube, attachment_sites, find_cube_attachment, find_cube_identification, find_fold, fold,
    fold_sites, identification_sites, identify_cubes, Move, MoveError, Remap,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BouquetError {
    #[error("codomain has no basepoint")]
    NoBasepoint,
    #[error("word {index} is not a closed path at the basepoint")]
    NotClosed { index: usize },
}

/// A wedge of subdivided circles over a codomain, one petal per word.
#[derive(Clone, Debug)]
pub struct Bouquet {
    pub map: CubicalMap,
    pub words: Vec<CubicalWord>,
    /// Edge ids of each petal, in letter order.
    pub petals: Vec<Range<usize>>,
}

impl Bouquet {
    pub fn complex(&self) -> &CubeComplex {
        self.map.domain()
    }
}

/// Petal `j` has one edge per letter of `words[j]`; edge `i` of the petal maps
/// to letter `i`. Empty words contribute nothing.
pub fn bouquet_from_words(y: Arc<CubeComplex>, words: &[CubicalWord]) -> Result<Bouquet, BouquetError> {
    let q = y.basepoint().ok_or(BouquetError::NoBasepoint)?;
    let mut vertex_map = vec![q];
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    let mut petals = Vec::with_capacity(words.len());
    for (index, w) in words.iter().enumerate() {
        let in_range = w.letters.iter().all(|d| d.edge.index() < y.edge_count());
        if w.base != q || !in_range || !w.is_closed(&y) {
            return Err(BouquetError::NotClosed { index });
        }
        let start = edges.len();
        let n = w.len();
        let mut prev = VertexId(0);
        for (i, &letter) in w.letters.iter().enumerate() {
            let next = if i + 1 == n {
                VertexId(0)
            } else {
                vertex_map.push(y.terminus(letter));
                VertexId::from(vertex_map.len() - 1)
            };
            edges.push(Edge { source: prev, target: next });
            edge_map.push(letter);
            prev = next;
        }
        petals.push(start..edges.len());
    }
    let x = CubeComplex::from_parts(vertex_map.len(), edges, vec![], Some(VertexId(0)));
    let links = Arc::new(links_of(&y));
    let map = CubicalMap::from_parts(x, y, links, vertex_map, edge_map, vec![]);
    Ok(Bouquet { map, words: words.to_vec(), petals })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Schedule {
    /// Least site first within each phase.
    Canonical,
    /// Uniformly random site within each phase.
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Finished,
    BudgetExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Finished => "finished",
            Status::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CompletionResult {
    pub map: CubicalMap,
    pub history: Vec<Move>,
    pub status: Status,
    /// Cell count of the domain when the run stopped.
    pub budget_used: usize,
    /// Where each vertex and edge of the input domain ended up.
    pub trace: Remap,
}

impl CompletionResult {
    pub fn complex(&self) -> &CubeComplex {
        self.map.domain()
    }

    pub fn is_finished(&self) -> bool {
        self.status == Status::Finished
    }

    /// The path in the completed complex traced by input edges `edges`.
    pub fn traced_path(&self, edges: &[DirectedEdge]) -> Vec<DirectedEdge> {
        edges.iter().map(|d| self.trace.edge[d.edge.index()].oriented(d.forward)).collect()
    }

    /// Petal `j` of a bouquet, as a path in the completed complex.
    pub fn petal_path(&self, bouquet: &Bouquet, j: usize) -> Vec<DirectedEdge> {
        let edges: Vec<DirectedEdge> = bouquet.petals[j].clone().map(|e| DirectedEdge::forward(EdgeId::from(e))).collect();
        self.traced_path(&edges)
    }

    /// One move per line.
    pub fn move_log(&self) -> String {
        self.history.iter().map(|m| format!("{m}\n")).collect()
    }
}

/// [`complete_with`] under the canonical schedule.
pub fn complete(f: CubicalMap, budget: usize) -> CompletionResult {
    complete_with(f, budget, Schedule::Canonical)
}

/// Run all folds, then all cube identifications, then every attachment site
/// found at the start of the phase, until no move applies or the domain has
/// more than `budget` cells.
pub fn complete_with(f: CubicalMap, budget: usize, schedule: Schedule) -> CompletionResult {
    let mut rng = match schedule {
        Schedule::Canonical => None,
        Schedule::Shuffled(seed) => Some(StdRng::seed_from_u64(seed)),
    };
    let mut trace = moves::identity_remap(f.domain());
    let mut history = Vec::new();
    let mut f = f;
    let stop = |f: CubicalMap, history, trace, status| {
        let budget_used = f.domain().cell_count();
        CompletionResult { map: f, history, status, budget_used, trace }
    };
    if f.domain().cell_count() > budget {
        return stop(f, history, trace, Status::BudgetExceeded);
    }
    loop {
        loop {
            let site = match rng.as_mut() {
                None => find_fold(&f),
                Some(r) => pick(r, fold_sites(&f)).map(|(_, a, b)| (a, b)),
            };
            let Some((first, second)) = site else { break };
            let vertex = f.domain().origin(first);
            let (next, remap) = fold(&f, first, second).expect("fold site is valid");
            trace = trace.then(&remap);
            history.push(Move::Fold { vertex, first, second });
            f = next;
        }
        loop {
            let site = match rng.as_mut() {
                None => find_cube_identification(&f),
                Some(r) => pick(r, identification_sites(&f)),
            };
            let Some((keep, remove)) = site else { break };
            f = identify_cubes(&f, keep, remove).expect("identification site is valid");
            history.push(Move::CubeIdentification { keep, remove });
        }
        let mut sites = attachment_sites(&f);
        if sites.is_empty() {
            debug_assert!(f.is_local_isometry().is_ok());
            return stop(f, history, trace, Status::Finished);
        }
        if let Some(r) = rng.as_mut() {
            sites.shuffle(r);
        }
        for site in sites {
            if !moves::site_is_open(&f, &site) {
                continue;
            }
            f = attach_cube(&f, &site).expect("attachment site is valid");
            history.push(Move::CubeAttachment(site));
            if f.domain().cell_count() > budget {
                return stop(f, history, trace, Status::BudgetExceeded);
            }
        }
    }
}

fn pick<T>(rng: &mut StdRng, mut sites: Vec<T>) -> Option<T> {
    if sites.is_empty() {
        None
    } else {
        let i = rng.gen_range(0..sites.len());
        Some(sites.swap_remove(i))
    }
}
