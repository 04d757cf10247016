//! End-to-end acceptance checks. Runs as a plain binary so that each
//! criterion prints its verdict even when everything passes.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cubefold::completion::{bouquet_from_words, canonicalize, complete, complete_with, Schedule, Status};
use cubefold::fixtures::{self, Grid};
use cubefold::geometry::{
    convex_hull, dual_to_ambient, halfspaces_meeting, sageev_dual, universal_cover_ball, CoverBall, Halfspaces,
};
use cubefold::group::{coset_enumeration, finite_index, is_normal, membership, normalized_by, power_membership};
use cubefold::group::{Decision, IndexVerdict, Subgroup};
use cubefold::link::{is_flag_brute_force, FlagVerdict};
use cubefold::oracles::{brute_hull, classic_fold, exponents, from_graph_map, Lattice, Letter};
use cubefold::{check_npc, link, CubeComplex, CubicalWord, DirectedEdge, EdgeId, VertexId};

const BUDGET: usize = 20_000;
const FREE_SUBGROUPS: usize = 200;
const FREE_TIME_LIMIT: Duration = Duration::from_secs(10);
const HULL_MIN_CASES: usize = 30;
const HULL_INNER_RADIUS: usize = 3;
const UNIQUENESS_CASES: usize = 50;
const SCHEDULES: u64 = 5;
const DUALITY_CASES: usize = 50;
const MEMBERSHIP_QUERIES: usize = 300;
const MEMBERSHIP_TIME_LIMIT: Duration = Duration::from_secs(30);
const POWER_CASES: usize = 100;
const NORMALITY_CASES: usize = 100;
const COSET_BUDGET: usize = 100;
const HONESTY_BUDGETS: [usize; 4] = [50, 100, 200, 400];

fn cubical(letters: &[Letter]) -> CubicalWord {
    CubicalWord::new(VertexId(0), letters.iter().map(|&(g, s)| DirectedEdge::new(EdgeId::from(g), s)).collect())
}

fn power(letters: &[Letter], k: usize) -> Vec<Letter> {
    letters.iter().copied().cycle().take(letters.len() * k).collect()
}

fn random_word(rng: &mut StdRng, generators: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| (rng.gen_range(0..generators), rng.gen())).collect()
}

fn random_set(rng: &mut StdRng, generators: usize, max_words: usize, max_len: usize) -> Vec<Vec<Letter>> {
    (0..rng.gen_range(1..=max_words)).map(|_| random_word(rng, generators, max_len)).collect()
}

fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&(g, s)| (g, !s)).collect()
}

/// A random product of generators and their inverses.
fn random_element(rng: &mut StdRng, gens: &[Vec<Letter>]) -> Vec<Letter> {
    let mut w = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let s = &gens[rng.gen_range(0..gens.len())];
        w.extend(if rng.gen() { s.clone() } else { inverse(s) });
    }
    w
}

fn subgroup(y: &Arc<CubeComplex>, gens: &[Vec<Letter>], budget: usize) -> Subgroup {
    Subgroup::complete(y.clone(), gens.iter().map(|w| cubical(w)).collect(), budget).expect("closed generators")
}

/// A random subgroup of the torus whose completion finishes.
fn finished_torus_subgroup(rng: &mut StdRng, y: &Arc<CubeComplex>) -> (Vec<Vec<Letter>>, Subgroup) {
    loop {
        let gens = random_set(rng, 2, 3, 5);
        let h = subgroup(y, &gens, 2000);
        if h.is_finished() {
            return (gens, h);
        }
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }
}

fn free_group_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let start = Instant::now();
    let mut mismatches = 0;
    for i in 0..FREE_SUBGROUPS {
        let rank = 2 + i % 2;
        let y = Arc::new(fixtures::rose(rank));
        let gens = random_set(&mut rng, rank, 4, 8);
        let r = complete(bouquet_from_words(y, &gens.iter().map(|w| cubical(w)).collect::<Vec<_>>()).unwrap().map, BUDGET);
        let ok = r.status == Status::Finished && from_graph_map(&r.map).isomorphic(&classic_fold(&gens));
        if !ok {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        mismatches == 0 && elapsed < FREE_TIME_LIMIT,
        format!("{FREE_SUBGROUPS} subgroups, {mismatches} mismatches, {elapsed:.2?} (limit {FREE_TIME_LIMIT:?})"),
    )
}

struct HullCase {
    name: &'static str,
    gens: Vec<Vec<Letter>>,
    outer: usize,
}

fn hull_case(name: &'static str, gens: &[&[Letter]], outer: usize) -> HullCase {
    HullCase { name, gens: gens.iter().map(|w| w.to_vec()).collect(), outer }
}

/// The developed cover of the completion, pushed into the cover ball of the
/// ambient complex, agrees with the hull of the orbit near the basepoint.
fn check_hull_case(y: &Arc<CubeComplex>, by: &CoverBall, case: &HullCase) -> Result<(), String> {
    let h = subgroup(y, &case.gens, BUDGET);
    if !h.is_finished() {
        return Err("completion did not finish".into());
    }
    let f = &h.completion.map;
    let z = Arc::new(h.completion.complex().clone());
    let zb = z.basepoint().ok_or("no basepoint")?;
    let bz = universal_cover_ball(z, zb, case.outer).map_err(|e| e.to_string())?;
    let xz = bz.complex();
    let xy = by.complex();

    let mut image = vec![None; xz.vertex_count()];
    image[bz.center.index()] = Some(by.center);
    let mut queue = VecDeque::from([bz.center]);
    while let Some(u) = queue.pop_front() {
        let at = image[u.index()].expect("visited");
        for &g in xz.germs(u) {
            let v = xz.terminus(g);
            if image[v.index()].is_none() {
                let target = f.germ_image(bz.projection.germ_image(g));
                let lifted = by.projection.lift_germ(at, target).ok_or("germ does not lift")?;
                image[v.index()] = Some(xy.terminus(lifted));
                queue.push_back(v);
            }
        }
    }
    let image: Vec<VertexId> = image.into_iter().map(|v| v.expect("ball is connected")).collect();

    let orbit: Vec<VertexId> =
        xz.vertices().filter(|&v| bz.projection.vertex_image(v) == zb).map(|v| image[v.index()]).collect();
    let hull = by.convex_hull(&orbit).map_err(|e| e.to_string())?;

    let inner = |v: VertexId| by.depth[v.index()] <= HULL_INNER_RADIUS;
    let want_vertices: BTreeSet<VertexId> = hull.vertices.iter().copied().filter(|&v| inner(v)).collect();
    let want_edges: BTreeSet<EdgeId> =
        hull.edges.iter().copied().filter(|&e| inner(xy.edge(e).source) && inner(xy.edge(e).target)).collect();
    let corner_set = |c: &cubefold::Cube, map: &dyn Fn(VertexId) -> VertexId| {
        let mut s: Vec<VertexId> = c.corners.iter().map(|&v| map(v)).collect();
        s.sort();
        s
    };
    let want_cubes: BTreeSet<Vec<VertexId>> = hull
        .cubes
        .iter()
        .map(|&c| xy.cube(c))
        .filter(|c| c.corners.iter().all(|&v| inner(v)))
        .map(|c| corner_set(c, &|v| v))
        .collect();

    let near = |v: VertexId| bz.depth[v.index()] <= HULL_INNER_RADIUS;
    let got: Vec<VertexId> = xz.vertices().filter(|&v| near(v)).map(|v| image[v.index()]).collect();
    let got_vertices: BTreeSet<VertexId> = got.iter().copied().collect();
    if got_vertices.len() != got.len() {
        return Err("developed ball is not embedded".into());
    }
    let mut got_edges = BTreeSet::new();
    for (i, e) in xz.edges().iter().enumerate() {
        if near(e.source) && near(e.target) {
            let g = DirectedEdge::forward(EdgeId::from(i));
            let target = f.germ_image(bz.projection.germ_image(g));
            let lifted = by.projection.lift_germ(image[e.source.index()], target).ok_or("edge does not lift")?;
            got_edges.insert(lifted.edge);
        }
    }
    let got_cubes: BTreeSet<Vec<VertexId>> = xz
        .cubes()
        .iter()
        .filter(|c| c.corners.iter().all(|&v| near(v)))
        .map(|c| corner_set(c, &|v| image[v.index()]))
        .collect();
    if got_vertices != want_vertices {
        return Err(format!("vertices {} vs hull {}", got_vertices.len(), want_vertices.len()));
    }
    if got_edges != want_edges {
        return Err(format!("edges {} vs hull {}", got_edges.len(), want_edges.len()));
    }
    if got_cubes != want_cubes {
        return Err(format!("cubes {} vs hull {}", got_cubes.len(), want_cubes.len()));
    }
    Ok(())
}

fn hull_theorem() -> Outcome {
    let (a, b, c, d) = ((0, true), (1, true), (2, true), (3, true));
    let ai = (0, false);
    let bi = (1, false);
    let mut torus_cases = Vec::new();
    for m in 1..=4 {
        for n in 1..=4 {
            torus_cases.push(hull_case("torus lattice", &[&power(&[a], m), &power(&[b], n)], 4));
        }
    }
    for w in [vec![a], vec![b], vec![a, a], vec![b, b, b], vec![a, a, a, a]] {
        torus_cases.push(hull_case("torus line", &[&w], 4));
    }
    torus_cases.push(hull_case("torus skew lattice", &[&[a, b], &[a, bi]], 4));
    torus_cases.push(hull_case("torus skew lattice", &[&[a, a, b], &[b, b]], 4));
    torus_cases.push(hull_case("torus conjugated", &[&[bi, a, b], &[ai, b, b, a]], 4));

    let mut three_cases = Vec::new();
    for m in [1, 3] {
        for n in [1, 3] {
            for k in [1, 3] {
                three_cases.push(hull_case("3-torus lattice", &[&power(&[a], m), &power(&[b], n), &power(&[c], k)], 3));
            }
        }
    }
    three_cases.push(hull_case("3-torus plane", &[&[a], &[b]], 3));
    three_cases.push(hull_case("3-torus plane", &[&[b], &[c]], 3));
    three_cases.push(hull_case("3-torus plane", &[&[a], &[c]], 3));
    three_cases.push(hull_case("3-torus plane", &[&[a, a, a], &[b]], 3));
    for w in [vec![a], vec![b], vec![c]] {
        three_cases.push(hull_case("3-torus line", &[&w], 3));
    }

    let lines = |n: usize| -> Vec<HullCase> {
        [a, b, c, d][..n].iter().map(|&g| hull_case("generator line", &[&[g]], 3)).collect()
    };
    let families: Vec<(&str, CubeComplex, usize, Vec<HullCase>)> = vec![
        ("torus", fixtures::torus(), 17, torus_cases),
        ("3-torus", fixtures::n_torus(3), 19, three_cases),
        ("rose(2)", fixtures::rose(2), 7, lines(2)),
        ("salvetti path a-b-c", fixtures::salvetti(3, &[(0, 1), (1, 2)]), 7, lines(3)),
        ("salvetti square a-b-c-d-a", fixtures::salvetti(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]), 7, lines(4)),
    ];
    let mut total = 0;
    let mut failures = Vec::new();
    for (name, y, radius, cases) in families {
        let y = Arc::new(y);
        let by = universal_cover_ball(y.clone(), VertexId(0), radius).expect("npc fixture");
        for case in &cases {
            total += 1;
            if let Err(e) = check_hull_case(&y, &by, case) {
                failures.push(format!("{name} {} {:?}: {e}", case.name, case.gens));
            }
        }
    }
    for f in &failures {
        println!("    {f}");
    }
    Outcome::new(
        failures.is_empty() && total >= HULL_MIN_CASES,
        format!("{total} cases (need {HULL_MIN_CASES}), {} failures", failures.len()),
    )
}

fn uniqueness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let ambients: Vec<Arc<CubeComplex>> = vec![
        Arc::new(fixtures::rose(2)),
        Arc::new(fixtures::rose(3)),
        Arc::new(fixtures::torus()),
        Arc::new(fixtures::n_torus(3)),
        Arc::new(fixtures::salvetti(3, &[(0, 1), (1, 2)])),
    ];
    let mut cases = 0;
    let mut attaching = 0;
    let mut disagreements = 0;
    while cases < UNIQUENESS_CASES {
        let y = &ambients[cases % ambients.len()];
        let gens: Vec<CubicalWord> = random_set(&mut rng, y.edge_count(), 3, 5).iter().map(|w| cubical(w)).collect();
        let map = || bouquet_from_words(y.clone(), &gens).unwrap().map;
        let reference = complete(map(), 1500);
        if !reference.is_finished() {
            continue;
        }
        cases += 1;
        if reference.history.iter().any(|m| m.kind() != "fold") {
            attaching += 1;
        }
        let canon = canonicalize(&reference).expect("finished completions canonicalize");
        for seed in 0..SCHEDULES {
            let other = complete_with(map(), 1500, Schedule::Shuffled(seed * 7919 + cases as u64));
            if !other.is_finished() || canonicalize(&other).ok().as_ref() != Some(&canon) {
                disagreements += 1;
            }
        }
    }
    Outcome::new(
        disagreements == 0,
        format!("{cases} cases x {SCHEDULES} schedules, {attaching} beyond folding, {disagreements} disagreements"),
    )
}

fn duality_matches(x: &CubeComplex, hs: &Halfspaces, s: &[VertexId]) -> bool {
    let hull = convex_hull(x, hs, s).unwrap();
    let brute = brute_hull(x, s);
    if (&brute.vertices, &brute.edges, &brute.cubes) != (&hull.vertices, &hull.edges, &hull.cubes) {
        return false;
    }
    let p = halfspaces_meeting(x, hs, s);
    let d = sageev_dual(&p).unwrap();
    let image: Vec<VertexId> = match d.orientations.iter().map(|z| dual_to_ambient(&p, hs, z, s[0])).collect() {
        Some(v) => v,
        None => return false,
    };
    let distinct: BTreeSet<VertexId> = image.iter().copied().collect();
    if distinct.len() != image.len() || distinct.into_iter().collect::<Vec<_>>() != hull.vertices {
        return false;
    }
    let hull_edges: BTreeSet<(VertexId, VertexId)> = hull
        .edges
        .iter()
        .map(|&e| {
            let e = x.edge(e);
            (e.source.min(e.target), e.source.max(e.target))
        })
        .collect();
    let dual_edges: BTreeSet<(VertexId, VertexId)> = d
        .complex
        .edges()
        .iter()
        .map(|e| {
            let (u, v) = (image[e.source.index()], image[e.target.index()]);
            (u.min(v), u.max(v))
        })
        .collect();
    let sets = |cs: &mut dyn Iterator<Item = Vec<VertexId>>| -> BTreeSet<Vec<VertexId>> {
        cs.map(|mut c| {
            c.sort();
            c
        })
        .collect()
    };
    let hull_cubes = sets(&mut hull.cubes.iter().map(|&c| x.cube(c).corners.clone()));
    let dual_cubes = sets(&mut d.complex.cubes().iter().map(|c| c.corners.iter().map(|v| image[v.index()]).collect()));
    dual_edges == hull_edges
        && d.complex.edge_count() == hull.edges.len()
        && dual_cubes == hull_cubes
        && d.complex.cube_count() == hull.cubes.len()
}

fn duality() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut failures = 0;
    for _ in 0..DUALITY_CASES {
        let dims = [rng.gen_range(1..=6), rng.gen_range(1..=6), rng.gen_range(1..=3)];
        let g = Grid::new(&dims);
        let x = g.complex();
        let hs = Halfspaces::new(&x).unwrap();
        let s: Vec<VertexId> = (0..rng.gen_range(1..=4))
            .map(|_| g.vertex(&dims.map(|n| rng.gen_range(0..=n))))
            .collect();
        if !duality_matches(&x, &hs, &s) {
            failures += 1;
        }
    }
    Outcome::new(failures == 0, format!("{DUALITY_CASES} vertex sets in boxes up to 6x6x3, {failures} failures"))
}

fn membership_agreement() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let start = Instant::now();
    let per_subgroup = 10;
    let torus = Arc::new(fixtures::torus());
    let (mut torus_queries, mut torus_wrong, mut torus_yes) = (0, 0, 0);
    while torus_queries < MEMBERSHIP_QUERIES {
        let (gens, h) = finished_torus_subgroup(&mut rng, &torus);
        let exps: Vec<Vec<i64>> = gens.iter().map(|w| exponents(&torus, &cubical(w)).unwrap()).collect();
        let lattice = Lattice::new(2, &exps);
        for q in 0..per_subgroup {
            let g = if q % 2 == 0 { random_element(&mut rng, &gens) } else { random_word(&mut rng, 2, 10) };
            let g = cubical(&g);
            let expected = lattice.contains(&exponents(&torus, &g).unwrap());
            torus_yes += usize::from(expected);
            if membership(&h, &g) != Ok(expected) {
                torus_wrong += 1;
            }
            torus_queries += 1;
        }
    }
    let (mut free_queries, mut free_wrong, mut free_yes) = (0, 0, 0);
    while free_queries < MEMBERSHIP_QUERIES {
        let rank = 2 + free_queries / per_subgroup % 2;
        let y = Arc::new(fixtures::rose(rank));
        let gens = random_set(&mut rng, rank, 3, 6);
        let h = subgroup(&y, &gens, BUDGET);
        let graph = classic_fold(&gens);
        for q in 0..per_subgroup {
            let g = if q % 2 == 0 { random_element(&mut rng, &gens) } else { random_word(&mut rng, rank, 10) };
            let expected = graph.accepts(&g);
            free_yes += usize::from(expected);
            if membership(&h, &cubical(&g)) != Ok(expected) {
                free_wrong += 1;
            }
            free_queries += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        torus_wrong == 0 && free_wrong == 0 && elapsed < MEMBERSHIP_TIME_LIMIT,
        format!(
            "torus {torus_queries} queries ({torus_yes} members) {torus_wrong} wrong, \
             free {free_queries} queries ({free_yes} members) {free_wrong} wrong, {elapsed:.2?} (limit {MEMBERSHIP_TIME_LIMIT:?})"
        ),
    )
}

/// Least power found is within the vertex bound, lies in the subgroup, and
/// no smaller positive power does.
fn power_is_minimal(h: &Subgroup, g: &[Letter]) -> Result<bool, String> {
    let k = match power_membership(h, &cubical(g)).map_err(|e| e.to_string())? {
        Some(k) => k,
        None => return Ok(false),
    };
    let bound = h.completion.complex().vertex_count();
    let ok = k >= 1
        && k <= bound
        && membership(h, &cubical(&power(g, k))) == Ok(true)
        && (1..k).all(|j| membership(h, &cubical(&power(g, j))) == Ok(false));
    if ok {
        Ok(true)
    } else {
        Err(format!("{g:?}: k = {k}, bound {bound}"))
    }
}

fn power_bound() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let torus = Arc::new(fixtures::torus());
    let rose = Arc::new(fixtures::rose(2));
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut oracle_mismatches = 0;
    while cases < POWER_CASES / 2 {
        let (gens, h) = finished_torus_subgroup(&mut rng, &torus);
        let exps: Vec<Vec<i64>> = gens.iter().map(|w| exponents(&torus, &cubical(w)).unwrap()).collect();
        let lattice = Lattice::new(2, &exps);
        let g = random_word(&mut rng, 2, 4);
        let bound = h.completion.complex().vertex_count();
        match power_is_minimal(&h, &g) {
            Ok(true) => {
                cases += 1;
                let v = exponents(&torus, &cubical(&g)).unwrap();
                if power_membership(&h, &cubical(&g)) != Ok(lattice.least_power(&v, bound)) {
                    oracle_mismatches += 1;
                }
            }
            Ok(false) => {}
            Err(e) => {
                cases += 1;
                failures.push(e);
            }
        }
    }
    while cases < POWER_CASES {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let mut gens = vec![power(&[(0, true)], m), power(&[(1, true)], n)];
        gens.push(random_word(&mut rng, 2, 5));
        let h = subgroup(&rose, &gens, BUDGET);
        let x = (rng.gen_range(0..2), rng.gen());
        let g = power(&[x], rng.gen_range(1..=3));
        let bound = h.completion.complex().vertex_count();
        match power_is_minimal(&h, &g) {
            Ok(true) => {
                cases += 1;
                if power_membership(&h, &cubical(&g)) != Ok(classic_fold(&gens).least_power(&g, bound)) {
                    oracle_mismatches += 1;
                }
            }
            Ok(false) => failures.push(format!("{g:?}: no power found in {gens:?}")),
            Err(e) => {
                cases += 1;
                failures.push(e);
            }
        }
    }
    for f in &failures {
        println!("    {f}");
    }
    Outcome::new(
        failures.is_empty() && oracle_mismatches == 0,
        format!("{cases} cases, {} failures, {oracle_mismatches} oracle mismatches", failures.len()),
    )
}

fn index() -> Outcome {
    let torus = Arc::new(fixtures::torus());
    let mut failures = Vec::new();
    for m in 1..=4 {
        for n in 1..=4 {
            let gens = [power(&[(0, true)], m), power(&[(1, true)], n)];
            let h = subgroup(&torus, &gens, BUDGET);
            let want = IndexVerdict::Finite(m * n);
            let cover = finite_index(&h, COSET_BUDGET);
            let cosets = coset_enumeration(&h, COSET_BUDGET);
            let lattice = Lattice::new(2, &[vec![m as i64, 0], vec![0, n as i64]]).index();
            if cover != Ok(want) || cosets != Ok(want) || lattice != Some((m * n) as u64) {
                failures.push(format!("<a^{m}, b^{n}>: {cover:?} {cosets:?} {lattice:?}"));
            }
        }
    }
    let rose = Arc::new(fixtures::rose(2));
    let h = subgroup(&rose, &[vec![(0, true)], vec![(1, true), (1, true)], vec![(1, true), (0, true), (1, false)]], BUDGET);
    let (cover, cosets) = (finite_index(&h, COSET_BUDGET), coset_enumeration(&h, COSET_BUDGET));
    if cover != Ok(IndexVerdict::Finite(2)) || cosets != Ok(IndexVerdict::Finite(2)) {
        failures.push(format!("<a, b^2, bab^-1>: {cover:?} {cosets:?}"));
    }
    for f in &failures {
        println!("    {f}");
    }
    Outcome::new(failures.is_empty(), format!("17 subgroups, {} failures", failures.len()))
}

fn normality() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let torus = Arc::new(fixtures::torus());
    let rose = Arc::new(fixtures::rose(2));
    let known_normal: Vec<Vec<Vec<Letter>>> = vec![
        vec![vec![(0, true)], vec![(1, true), (1, true)], vec![(1, true), (0, true), (1, false)]],
        vec![vec![(0, true), (0, true)], vec![(1, true)], vec![(0, true), (1, true), (0, false)]],
        vec![vec![(0, true)], vec![(1, true)]],
    ];
    let mut cases = 0;
    let mut disagreements = Vec::new();
    let mut oracle_mismatches = 0;
    let mut normal = 0;
    while cases < NORMALITY_CASES {
        let (y, gens, h) = if cases % 2 == 0 {
            let (gens, h) = finished_torus_subgroup(&mut rng, &torus);
            (&torus, gens, h)
        } else {
            let gens = match known_normal.get(cases / 2) {
                Some(g) => g.clone(),
                None => random_set(&mut rng, 2, 3, 4),
            };
            let h = subgroup(&rose, &gens, BUDGET);
            (&rose, gens, h)
        };
        cases += 1;
        let report = match is_normal(&h, BUDGET) {
            Ok(r) => r,
            Err(e) => {
                disagreements.push(format!("{gens:?}: {e}"));
                continue;
            }
        };
        let agree = matches!(
            (report.by_completion, report.by_conjugates),
            (Decision::Yes, true) | (Decision::No, false)
        );
        if !agree {
            disagreements.push(format!("{gens:?}: {report:?}"));
        }
        normal += usize::from(report.by_conjugates);
        let expected = if Arc::ptr_eq(y, &torus) { true } else { classic_fold(&gens).is_normal(2) };
        if expected != report.by_conjugates {
            oracle_mismatches += 1;
        }
        let g = cubical(&random_word(&mut rng, 2, 4));
        match normalized_by(&h, &g, BUDGET) {
            Ok(v) if v.by_completion == Some(v.by_conjugates) => {}
            other => disagreements.push(format!("{gens:?} by {:?}: {other:?}", g.letters)),
        }
    }
    for d in &disagreements {
        println!("    {d}");
    }
    Outcome::new(
        disagreements.is_empty() && oracle_mismatches == 0,
        format!(
            "{cases} subgroups ({normal} normal), {} disagreements, {oracle_mismatches} oracle mismatches",
            disagreements.len()
        ),
    )
}

fn npc_detection() -> Outcome {
    let bad = fixtures::three_squares();
    let report = check_npc(&bad);
    let origin = VertexId(0);
    let expected: BTreeSet<DirectedEdge> = bad.germs(origin).iter().copied().collect();
    let witness_ok = match report.first_failure() {
        Some(v) if v.vertex == origin => match &v.flag {
            Some(FlagVerdict::EmptySimplex(germs)) => {
                let l = link(&bad, origin).unwrap();
                let idx: Vec<usize> = germs.iter().map(|&g| l.germ_index(g).unwrap()).collect();
                let adj = l.adjacency();
                germs.iter().copied().collect::<BTreeSet<_>>() == expected
                    && idx.iter().all(|&i| idx.iter().all(|&j| i == j || adj[i].contains(&j)))
                    && !l.spans(&{
                        let mut s = idx.clone();
                        s.sort();
                        s
                    })
                    && !is_flag_brute_force(&l)
            }
            _ => false,
        },
        _ => false,
    };
    let good: Vec<(&str, CubeComplex)> = vec![
        ("torus", fixtures::torus()),
        ("3-torus", fixtures::n_torus(3)),
        ("4-torus", fixtures::n_torus(4)),
        ("rose(1)", fixtures::rose(1)),
        ("rose(2)", fixtures::rose(2)),
        ("rose(3)", fixtures::rose(3)),
        ("rose(4)", fixtures::rose(4)),
        ("salvetti path 3", fixtures::salvetti(3, &[(0, 1), (1, 2)])),
        ("salvetti path 4", fixtures::salvetti(4, &[(0, 1), (1, 2), (2, 3)])),
        ("salvetti square", fixtures::salvetti(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
        ("salvetti triangle+leaf", fixtures::salvetti(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])),
        ("torus double cover", fixtures::torus_double_cover()),
        ("grid 3x2x2", fixtures::grid_box(&[3, 2, 2])),
    ];
    let mut rejected = Vec::new();
    for (name, x) in &good {
        let brute = x.vertices().all(|v| is_flag_brute_force(&link(x, v).unwrap()));
        if !check_npc(x).is_npc() || !brute {
            rejected.push(*name);
        }
    }
    Outcome::new(
        !report.is_npc() && witness_ok && rejected.is_empty(),
        format!("three squares rejected with witness: {witness_ok}; {} npc fixtures, rejected {rejected:?}", good.len()),
    )
}

fn budget_honesty() -> Outcome {
    let torus = Arc::new(fixtures::torus());
    let runs: Vec<(Status, usize)> = HONESTY_BUDGETS
        .iter()
        .map(|&b| {
            let h = subgroup(&torus, &[vec![(0, true), (1, true)]], b);
            (h.completion.status, h.completion.complex().cell_count())
        })
        .collect();
    let exceeded = runs.iter().all(|(s, _)| *s == Status::BudgetExceeded);
    let growing = runs.windows(2).all(|w| w[0].1 < w[1].1);
    let cells: Vec<usize> = runs.iter().map(|r| r.1).collect();
    Outcome::new(exceeded && growing, format!("budgets {HONESTY_BUDGETS:?}, cells {cells:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("free-group completion equals Stallings folding", free_group_equivalence),
        ("completion cover is the hull of the orbit", hull_theorem),
        ("completion is independent of move order", uniqueness),
        ("dual of meeting halfspaces is the hull", duality),
        ("membership agrees with oracles", membership_agreement),
        ("least power within the vertex bound", power_bound),
        ("index by cover and by cosets", index),
        ("normality criteria agree", normality),
        ("npc detection", npc_detection),
        ("budget exhaustion is reported", budget_honesty),
    ];
    let mut failed = 0;
    let mut times = HashMap::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        times.insert(i, start.elapsed());
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {name} [{}] {:.2?}", i + 1, outcome.detail, times[&i]);
        failed += usize::from(!outcome.passed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
