//! Textbook Stallings folding of labeled graphs over a free alphabet.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::map::CubicalMap;

/// A generator index with an exponent sign.
pub type Letter = (usize, bool);

/// A based graph with edges `(source, label, target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsGraph {
    pub vertex_count: usize,
    pub base: usize,
    pub edges: Vec<(usize, usize, usize)>,
    pub folded: bool,
}

pub fn freely_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &(g, s) in word {
        if out.last() == Some(&(g, !s)) {
            out.pop();
        } else {
            out.push((g, s));
        }
    }
    out
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Fold the wedge of subdivided circles spelling `words` until no vertex has
/// two outgoing or two incoming edges with the same label.
pub fn classic_fold(words: &[Vec<Letter>]) -> StallingsGraph {
    let mut n = 1;
    let mut edges = Vec::new();
    for w in words {
        let mut at = 0;
        for (i, &(g, s)) in w.iter().enumerate() {
            let next = if i + 1 == w.len() {
                0
            } else {
                n += 1;
                n - 1
            };
            edges.push(if s { (at, g, next) } else { (next, g, at) });
            at = next;
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    loop {
        let mut merged = false;
        let mut out: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut inc: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &(s, g, t) in &edges {
            let (s, t) = (find(&mut parent, s), find(&mut parent, t));
            for (key, other, table) in [((s, g), t, &mut out), ((t, g), s, &mut inc)] {
                match table.get(&key) {
                    Some(&o) => {
                        let (a, b) = (find(&mut parent, o), find(&mut parent, other));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                            merged = true;
                        }
                    }
                    None => {
                        table.insert(key, other);
                    }
                }
            }
        }
        if !merged {
            break;
        }
    }
    let roots: BTreeSet<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let index: BTreeMap<usize, usize> = roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut folded: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for &(s, g, t) in &edges {
        folded.insert((index[&find(&mut parent, s)], g, index[&find(&mut parent, t)]));
    }
    let base = index[&find(&mut parent, 0)];
    let mut graph = StallingsGraph { vertex_count: roots.len(), base, edges: folded.into_iter().collect(), folded: false };
    graph.folded = graph.is_folded();
    graph
}

/// The domain of a map into a one-vertex graph, labeled by edge images.
pub fn from_graph_map(f: &CubicalMap) -> StallingsGraph {
    let x = f.domain();
    let edges = x
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let d = f.edge_map()[i];
            let (s, t) = (e.source.index(), e.target.index());
            if d.forward { (s, d.edge.index(), t) } else { (t, d.edge.index(), s) }
        })
        .collect();
    let mut g = StallingsGraph {
        vertex_count: x.vertex_count(),
        base: x.basepoint().map_or(0, |b| b.index()),
        edges,
        folded: false,
    };
    g.folded = g.is_folded();
    g
}

impl StallingsGraph {
    fn step(&self, v: usize, (g, s): Letter) -> Option<usize> {
        self.edges.iter().find_map(|&(a, l, b)| match s {
            true if a == v && l == g => Some(b),
            false if b == v && l == g => Some(a),
            _ => None,
        })
    }

    pub fn is_folded(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&(s, g, t)| seen.insert((s, g, true)) && seen.insert((t, g, false)))
    }

    /// Read the free reduction of `word` from the base.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut at = self.base;
        for l in freely_reduce(word) {
            match self.step(at, l) {
                Some(v) => at = v,
                None => return false,
            }
        }
        at == self.base
    }

    /// Least `k <= bound` with `word^k` accepted.
    pub fn least_power(&self, word: &[Letter], bound: usize) -> Option<usize> {
        (1..=bound).find(|&k| self.accepts(&word.repeat(k)))
    }

    /// Repeatedly delete non-base vertices of degree one.
    pub fn trimmed(&self) -> StallingsGraph {
        let mut edges = self.edges.clone();
        let mut alive = vec![true; self.vertex_count];
        loop {
            let mut degree = vec![0; self.vertex_count];
            for &(s, _, t) in &edges {
                degree[s] += 1;
                degree[t] += 1;
            }
            let dead: Vec<usize> = (0..self.vertex_count).filter(|&v| alive[v] && v != self.base && degree[v] <= 1).collect();
            if dead.is_empty() {
                break;
            }
            for v in dead {
                alive[v] = false;
            }
            edges.retain(|&(s, _, t)| alive[s] && alive[t]);
        }
        let index: Vec<Option<usize>> = alive
            .iter()
            .scan(0, |next, &a| {
                Some(a.then(|| {
                    *next += 1;
                    *next - 1
                }))
            })
            .collect();
        StallingsGraph {
            vertex_count: alive.iter().filter(|&&a| a).count(),
            base: index[self.base].expect("base survives"),
            edges: edges.iter().map(|&(s, g, t)| (index[s].unwrap(), g, index[t].unwrap())).collect(),
            folded: self.folded,
        }
    }

    /// Every vertex has one incoming and one outgoing edge of each label.
    pub fn is_cover(&self, labels: usize) -> bool {
        let mut count = vec![[0usize; 2]; self.vertex_count * labels];
        for &(s, g, t) in &self.edges {
            count[s * labels + g][0] += 1;
            count[t * labels + g][1] += 1;
        }
        count.iter().all(|c| *c == [1, 1])
    }

    /// Index of the subgroup in the free group on `labels` generators.
    pub fn index(&self, labels: usize) -> Option<usize> {
        let core = self.trimmed();
        core.is_cover(labels).then_some(core.vertex_count)
    }

    fn rebased(&self, base: usize) -> StallingsGraph {
        StallingsGraph { base, ..self.clone() }
    }

    /// Normal iff trivial, or a cover whose rebasings are all isomorphic.
    pub fn is_normal(&self, labels: usize) -> bool {
        let core = self.trimmed();
        if core.edges.is_empty() {
            return true;
        }
        core.is_cover(labels) && (0..core.vertex_count).all(|v| core.isomorphic(&core.rebased(v)))
    }

    /// Based, labeled isomorphism of folded graphs.
    pub fn isomorphic(&self, other: &StallingsGraph) -> bool {
        if !self.folded || !other.folded || self.vertex_count != other.vertex_count || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut map = vec![None; self.vertex_count];
        let mut used = vec![false; other.vertex_count];
        map[self.base] = Some(other.base);
        used[other.base] = true;
        let mut queue = VecDeque::from([self.base]);
        while let Some(v) = queue.pop_front() {
            let w = map[v].unwrap();
            for &(s, g, t) in &self.edges {
                let (next, letter) = if s == v {
                    (t, (g, true))
                } else if t == v {
                    (s, (g, false))
                } else {
                    continue;
                };
                let Some(image) = other.step(w, letter) else { return false };
                match map[next] {
                    Some(m) if m != image => return false,
                    Some(_) => {}
                    None => {
                        if used[image] {
                            return false;
                        }
                        used[image] = true;
                        map[next] = Some(image);
                        queue.push_back(next);
                    }
                }
            }
        }
        map.iter().all(Option::is_some)
    }
}
