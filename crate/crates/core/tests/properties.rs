use std::sync::Arc;

use proptest::prelude::*;

use cubefold::fixtures::{self, Grid};
use cubefold::format::{emit_complex, emit_letters, parse_complex, parse_letters, Names};
use cubefold::geometry::{convex_hull, Halfspaces};
use cubefold::group::{
    coset_enumeration, core_graph, finite_index, membership, normalized_by, power_membership, reduced_forms,
    words_equal, Subgroup,
};
use cubefold::oracles::{brute_hull, classic_fold, Letter};
use cubefold::{CubeComplex, CubicalWord, DirectedEdge, EdgeId, VertexId};

const BUDGET: usize = 20_000;

fn cubical(letters: &[Letter]) -> CubicalWord {
    CubicalWord::new(VertexId(0), letters.iter().map(|&(g, s)| DirectedEdge::new(EdgeId::from(g), s)).collect())
}

fn word(generators: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..generators, any::<bool>()), 1..=max_len)
}

fn words(generators: usize, count: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<Letter>>> {
    prop::collection::vec(word(generators, max_len), 1..=count)
}

fn subgroup(y: &Arc<CubeComplex>, gens: &[Vec<Letter>]) -> Subgroup {
    Subgroup::complete(y.clone(), gens.iter().map(|w| cubical(w)).collect(), BUDGET).unwrap()
}

fn salvetti_path() -> Arc<CubeComplex> {
    Arc::new(fixtures::salvetti(3, &[(0, 1), (1, 2)]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_forms_are_shortest_and_equal(w in word(3, 7)) {
        let y = salvetti_path();
        let w = cubical(&w);
        let forms = reduced_forms(&y, &w).unwrap();
        prop_assert!(!forms.is_empty() || w.letters.len().is_multiple_of(2));
        if let Some(first) = forms.first() {
            prop_assert!(first.len() <= w.len());
        }
        for r in &forms {
            prop_assert_eq!(r.len(), forms[0].len());
            prop_assert!(words_equal(&y, r, &w).unwrap());
        }
    }

    #[test]
    fn membership_ignores_backtracks(gens in words(2, 3, 5), g in word(2, 6), at in 0usize..7, x in 0usize..2) {
        let y = Arc::new(fixtures::rose(2));
        let h = subgroup(&y, &gens);
        let mut longer = g.clone();
        let at = at.min(g.len());
        longer.splice(at..at, [(x, true), (x, false)]);
        prop_assert_eq!(membership(&h, &cubical(&g)), membership(&h, &cubical(&longer)));
        prop_assert_eq!(membership(&h, &cubical(&g)).unwrap(), classic_fold(&gens).accepts(&g));
    }

    #[test]
    fn membership_ignores_square_slides(m in 1usize..4, n in 1usize..4, g in word(2, 6), at in 0usize..6) {
        let y = Arc::new(fixtures::torus());
        let gens = vec![vec![(0, true); m], vec![(1, true); n]];
        let h = subgroup(&y, &gens);
        let mut slid = g.clone();
        if at + 1 < g.len() && g[at].0 != g[at + 1].0 {
            slid.swap(at, at + 1);
        }
        prop_assert_eq!(membership(&h, &cubical(&g)), membership(&h, &cubical(&slid)));
    }

    #[test]
    fn least_power_is_minimal(gens in words(2, 3, 4), g in word(2, 3)) {
        let y = Arc::new(fixtures::rose(2));
        let h = subgroup(&y, &gens);
        let k = power_membership(&h, &cubical(&g)).unwrap();
        let bound = h.completion.complex().vertex_count();
        prop_assert_eq!(k, classic_fold(&gens).least_power(&g, bound));
        if let Some(k) = k {
            prop_assert!(k <= bound);
            for j in 1..k {
                prop_assert!(!membership(&h, &cubical(&g.repeat(j))).unwrap());
            }
        }
    }

    #[test]
    fn normality_criteria_agree(gens in words(2, 3, 4), g in word(2, 4)) {
        let y = Arc::new(fixtures::rose(2));
        let h = subgroup(&y, &gens);
        let v = normalized_by(&h, &cubical(&g), BUDGET).unwrap();
        prop_assert_eq!(v.by_completion, Some(v.by_conjugates));
    }

    #[test]
    fn core_loops_close_at_the_basepoint(gens in words(3, 3, 5)) {
        let y = salvetti_path();
        let h = Subgroup::complete(y.clone(), gens.iter().map(|w| cubical(w)).collect(), 2000).unwrap();
        prop_assume!(h.is_finished());
        let core = core_graph(&h).unwrap();
        let x = h.completion.complex();
        let base = x.basepoint().unwrap();
        for l in &core.loops {
            prop_assert_eq!(x.trace(base, l), Some(base));
            prop_assert!(l.iter().all(|g| core.subcomplex.edges.contains(&g.edge)));
        }
    }

    #[test]
    fn cover_and_coset_indices_agree(m in 1usize..4, n in 1usize..4, extra in word(2, 3)) {
        let y = Arc::new(fixtures::torus());
        let gens = vec![vec![(0, true); m], vec![(1, true); n], extra];
        let h = subgroup(&y, &gens);
        let cover = finite_index(&h, 50).unwrap();
        prop_assert_eq!(Ok(cover), coset_enumeration(&h, 50));
    }

    #[test]
    fn hull_matches_interval_closure(
        dims in prop::collection::vec(1usize..4, 1..=3),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4),
    ) {
        let g = Grid::new(&dims);
        let x = g.complex();
        let hs = Halfspaces::new(&x).unwrap();
        let s: Vec<VertexId> = picks.iter().map(|i| VertexId::from(i.index(x.vertex_count()))).collect();
        let hull = convex_hull(&x, &hs, &s).unwrap();
        let brute = brute_hull(&x, &s);
        prop_assert_eq!((hull.vertices, hull.edges, hull.cubes), (brute.vertices, brute.edges, brute.cubes));
    }

    #[test]
    fn complexes_round_trip(dims in prop::collection::vec(1usize..3, 1..=3), pick in 0usize..3) {
        let x = match pick {
            0 => fixtures::grid_box(&dims),
            1 => fixtures::n_torus(dims.len()),
            _ => fixtures::salvetti(dims.len() + 1, &[(0, 1)]),
        };
        let names = Names::numeric(&x);
        let text = emit_complex(&x, &names);
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(back.complex.to_raw(), x.to_raw());
        prop_assert_eq!(emit_complex(&back.complex, &back.names), text);
    }

    #[test]
    fn words_round_trip(w in prop::collection::vec((0usize..3, any::<bool>()), 0..8)) {
        let x = fixtures::rose(3);
        let names = Names::numeric(&x);
        let letters = cubical(&w).letters;
        prop_assert_eq!(parse_letters(&emit_letters(&letters, &names), &names).unwrap(), letters);
    }
}
