//! Membership, powers, normality and index for subgroups with a finished
//! completion.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::completion::{bouquet_from_words, canonical_form, complete, CanonicalForm, CompletionResult, Status};
use crate::complex::CubeComplex;
use crate::cube::{DirectedEdge, EdgeId, VertexId};
use crate::geometry::Subcomplex;
use crate::word::CubicalWord;

use super::presentation::{generator_loop, spanning_tree};
use super::reduce::{reduced_form, reduced_forms};
use super::GroupError;

/// A subgroup of the fundamental group of a based complex, given by
/// generating loops, together with the completion of their bouquet.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: Arc<CubeComplex>,
    pub generators: Vec<CubicalWord>,
    pub completion: CompletionResult,
}

impl Subgroup {
    pub fn complete(ambient: Arc<CubeComplex>, generators: Vec<CubicalWord>, budget: usize) -> Result<Self, GroupError> {
        let b = bouquet_from_words(ambient.clone(), &generators).map_err(GroupError::Bouquet)?;
        let completion = complete(b.map, budget);
        Ok(Self { ambient, generators, completion })
    }

    pub fn is_finished(&self) -> bool {
        self.completion.status == Status::Finished
    }

    fn finished(&self) -> Result<(), GroupError> {
        if self.is_finished() {
            Ok(())
        } else {
            Err(GroupError::Unfinished)
        }
    }

    fn closed_at_base(&self, g: &CubicalWord) -> Result<(), GroupError> {
        let q = self.ambient.basepoint().ok_or(GroupError::NoBasepoint)?;
        if g.base != q || g.letters.iter().any(|d| d.edge.index() >= self.ambient.edge_count()) || !g.is_closed(&self.ambient) {
            return Err(GroupError::NotClosed);
        }
        Ok(())
    }

    /// Lift `g` through the completion from its basepoint.
    pub fn lift(&self, g: &CubicalWord) -> Option<Vec<DirectedEdge>> {
        let z = &self.completion.map;
        z.lift_path(z.domain().basepoint()?, &g.letters)
    }

    fn lift_closes(&self, g: &CubicalWord) -> bool {
        let x = self.completion.complex();
        match (self.lift(g), x.basepoint()) {
            (Some(p), Some(b)) => x.trace(b, &p) == Some(b),
            _ => false,
        }
    }
}

/// `g` lies in the subgroup: a reduced form of `g` lifts to a loop.
pub fn membership(h: &Subgroup, g: &CubicalWord) -> Result<bool, GroupError> {
    h.finished()?;
    h.closed_at_base(g)?;
    let r = reduced_form(&h.ambient, g)?;
    Ok(h.lift_closes(&r))
}

/// Least `k` at most the vertex count of the completion with `g^k` in the
/// subgroup.
pub fn power_membership(h: &Subgroup, g: &CubicalWord) -> Result<Option<usize>, GroupError> {
    h.finished()?;
    h.closed_at_base(g)?;
    let bound = h.completion.complex().vertex_count();
    let mut power = CubicalWord::empty(g.base);
    for k in 1..=bound {
        // Reduce as we go to keep the paths short.
        power = reduced_form(&h.ambient, &power.concat(g))?;
        if h.lift_closes(&power) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Union of the reduced loops representing the generators, lifted into the
/// completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreGraph {
    pub subcomplex: Subcomplex,
    /// Each lifted loop, as germs of the completion.
    pub loops: Vec<Vec<DirectedEdge>>,
}

pub fn core_graph(h: &Subgroup) -> Result<CoreGraph, GroupError> {
    h.finished()?;
    let x = h.completion.complex();
    let base = x.basepoint().ok_or(GroupError::NoBasepoint)?;
    let mut vertices = FixedBitSet::with_capacity(x.vertex_count());
    vertices.insert(base.index());
    let mut edges = BTreeSet::new();
    let mut loops = Vec::new();
    for s in &h.generators {
        for r in reduced_forms(&h.ambient, s)? {
            let path = h.lift(&r).ok_or(GroupError::LiftFailed)?;
            for &g in &path {
                edges.insert(g.edge);
                vertices.insert(x.terminus(g).index());
            }
            loops.push(path);
        }
    }
    let cubes = x
        .cube_ids()
        .filter(|&c| x.cube(c).edges.iter().all(|d| edges.contains(&d.edge)))
        .collect();
    let subcomplex = Subcomplex {
        vertices: vertices.ones().map(VertexId::from).collect(),
        edges: edges.into_iter().collect::<Vec<EdgeId>>(),
        cubes,
    };
    Ok(CoreGraph { subcomplex, loops })
}

/// Completion of the reduced forms of `words`; depends only on the subgroup
/// they generate.
pub fn reduced_completion(ambient: &Arc<CubeComplex>, words: &[CubicalWord], budget: usize) -> Result<CompletionResult, GroupError> {
    let reduced = words.iter().map(|w| reduced_form(ambient, w)).collect::<Result<Vec<_>, _>>()?;
    let b = bouquet_from_words(ambient.clone(), &reduced).map_err(GroupError::Bouquet)?;
    Ok(complete(b.map, budget))
}

fn canonical_of(r: &CompletionResult) -> Option<CanonicalForm> {
    if r.is_finished() {
        canonical_form(&r.map).ok()
    } else {
        None
    }
}

/// Both normality criteria for one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerVerdict {
    /// Canonical forms of the reduced completions of `H` and `g^-1 H g`
    /// agree; `None` when either exceeds the budget.
    pub by_completion: Option<bool>,
    /// `g^-1 s g` and `g s g^-1` lie in `H` for every generator `s`.
    pub by_conjugates: bool,
}

impl NormalizerVerdict {
    /// The completion verdict, falling back to conjugates when undecided.
    pub fn normalizes(&self) -> bool {
        self.by_completion.unwrap_or(self.by_conjugates)
    }
}

pub fn normalized_by(h: &Subgroup, g: &CubicalWord, budget: usize) -> Result<NormalizerVerdict, GroupError> {
    h.finished()?;
    h.closed_at_base(g)?;
    let y = &h.ambient;
    let gi = g.inverse(y);
    let conj: Vec<CubicalWord> = h.generators.iter().map(|s| gi.concat(s).concat(g)).collect();
    let back: Vec<CubicalWord> = h.generators.iter().map(|s| g.concat(s).concat(&gi)).collect();
    let mut by_conjugates = true;
    for w in conj.iter().chain(&back) {
        if !membership(h, w)? {
            by_conjugates = false;
            break;
        }
    }
    let mine = reduced_completion(y, &h.generators, budget)?;
    let theirs = reduced_completion(y, &conj, budget)?;
    let by_completion = match (canonical_of(&mine), canonical_of(&theirs)) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(NormalizerVerdict { by_completion, by_conjugates })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

/// Normality tested against every free generator of the ambient group and
/// its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub by_completion: Decision,
    pub by_conjugates: bool,
}

pub fn is_normal(h: &Subgroup, budget: usize) -> Result<NormalityReport, GroupError> {
    h.finished()?;
    let y = &h.ambient;
    let tree = spanning_tree(y)?;
    let mut undecided = false;
    let mut by_completion = Decision::Yes;
    let mut by_conjugates = true;
    for e in (0..y.edge_count()).map(EdgeId::from).filter(|&e| !tree.contains(e)) {
        for forward in [true, false] {
            let g = generator_loop(y, &tree, DirectedEdge::new(e, forward));
            let v = normalized_by(h, &g, budget)?;
            by_conjugates &= v.by_conjugates;
            match v.by_completion {
                Some(false) => by_completion = Decision::No,
                None => undecided = true,
                Some(true) => {}
            }
        }
    }
    if undecided && by_completion == Decision::Yes {
        by_completion = Decision::Undecided;
    }
    Ok(NormalityReport { by_completion, by_conjugates })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexVerdict {
    Finite(usize),
    /// Infinite, or more cosets than the budget allows.
    AtLeast(usize),
}

/// Index from the covering criterion, else by coset enumeration.
pub fn finite_index(h: &Subgroup, coset_budget: usize) -> Result<IndexVerdict, GroupError> {
    h.finished()?;
    let cover = h.completion.map.is_covering();
    if cover.covering {
        return Ok(IndexVerdict::Finite(cover.fiber));
    }
    coset_enumeration(h, coset_budget)
}

/// Exponent sums over the free generators, modulo the square relators and
/// the subgroup. Equal cosets have equal keys.
struct AbelianKey {
    free: Vec<Option<usize>>,
    /// Echelon rows with positive pivots.
    rows: Vec<(usize, Vec<i64>)>,
}

impl AbelianKey {
    fn new(y: &CubeComplex, tree: &super::SpanningTree, generators: &[CubicalWord]) -> Self {
        let mut free = vec![None; y.edge_count()];
        let mut m = 0;
        for e in (0..y.edge_count()).filter(|&e| !tree.contains(EdgeId::from(e))) {
            free[e] = Some(m);
            m += 1;
        }
        let mut key = AbelianKey { free, rows: Vec::new() };
        let relators = super::cubical_presentation(y, tree).relators;
        let mut pending: Vec<Vec<i64>> = relators.iter().map(|r| key.vector(&r.letters())).collect();
        pending.extend(generators.iter().map(|w| key.vector(&w.letters)));
        for col in 0..m {
            loop {
                pending.retain(|r| r.iter().any(|&x| x != 0));
                let live: Vec<usize> = (0..pending.len()).filter(|&i| pending[i][col] != 0).collect();
                if live.len() <= 1 {
                    break;
                }
                let p = *live.iter().min_by_key(|&&i| pending[i][col].abs()).expect("nonempty");
                let pivot = pending[p].clone();
                for &i in live.iter().filter(|&&i| i != p) {
                    let q = pending[i][col].div_euclid(pivot[col]);
                    pending[i].iter_mut().zip(&pivot).for_each(|(x, y)| *x -= q * y);
                }
            }
            if let Some(i) = pending.iter().position(|r| r[col] != 0) {
                let mut r = pending.swap_remove(i);
                if r[col] < 0 {
                    r.iter_mut().for_each(|x| *x = -*x);
                }
                key.rows.push((col, r));
            }
        }
        key
    }

    fn vector(&self, letters: &[DirectedEdge]) -> Vec<i64> {
        let mut v = vec![0; self.free.iter().flatten().count()];
        for d in letters {
            if let Some(i) = self.free[d.edge.index()] {
                v[i] += if d.forward { 1 } else { -1 };
            }
        }
        v
    }

    fn of(&self, w: &CubicalWord) -> Vec<i64> {
        let mut v = self.vector(&w.letters);
        for (col, r) in &self.rows {
            let q = v[*col].div_euclid(r[*col]);
            v.iter_mut().zip(r).for_each(|(x, y)| *x -= q * y);
        }
        v
    }
}

/// Breadth-first enumeration of right cosets `H r`, with `H r = H s` decided
/// by membership of `r s^-1` among representatives with the same image in
/// the abelianization modulo `H`.
pub fn coset_enumeration(h: &Subgroup, coset_budget: usize) -> Result<IndexVerdict, GroupError> {
    h.finished()?;
    let y = &h.ambient;
    let tree = spanning_tree(y)?;
    let q = tree.root;
    let letters: Vec<CubicalWord> = (0..y.edge_count())
        .map(EdgeId::from)
        .filter(|&e| !tree.contains(e))
        .flat_map(|e| [true, false].map(|f| generator_loop(y, &tree, DirectedEdge::new(e, f))))
        .collect();
    let key = AbelianKey::new(y, &tree, &h.generators);
    let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    let mut reps = vec![CubicalWord::empty(q)];
    buckets.entry(key.of(&reps[0])).or_default().push(0);
    let mut next = 0;
    while next < reps.len() {
        for t in &letters {
            let candidate = reduced_form(y, &reps[next].concat(t))?;
            let k = key.of(&candidate);
            let mut known = false;
            for &s in buckets.get(&k).map_or(&[][..], Vec::as_slice) {
                if membership(h, &candidate.concat(&reps[s].inverse(y)))? {
                    known = true;
                    break;
                }
            }
            if !known {
                if reps.len() == coset_budget {
                    return Ok(IndexVerdict::AtLeast(coset_budget + 1));
                }
                buckets.entry(k).or_default().push(reps.len());
                reps.push(candidate);
            }
        }
        next += 1;
    }
    Ok(IndexVerdict::Finite(reps.len()))
}
