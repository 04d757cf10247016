use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::*;
use crate::complex::CubeComplex;
use crate::cube::{DirectedEdge, EdgeId, VertexId};
use crate::fixtures::{self, Grid};
use crate::link::check_npc;

fn counts(x: &CubeComplex) -> (usize, usize, usize) {
    (x.vertex_count(), x.edge_count(), x.cube_count())
}

fn ball(y: CubeComplex, r: usize) -> CoverBall {
    universal_cover_ball(Arc::new(y), VertexId(0), r).unwrap()
}

#[test]
fn torus_balls() {
    assert_eq!(counts(ball(fixtures::torus(), 0).complex()), (1, 0, 0));
    assert_eq!(counts(ball(fixtures::torus(), 1).complex()), (5, 4, 0));
    // The diamond |x| + |y| <= 2.
    assert_eq!(counts(ball(fixtures::torus(), 2).complex()), (13, 16, 4));
}

#[test]
fn rose_ball_is_a_tree() {
    let b = ball(fixtures::rose(2), 2);
    assert_eq!(counts(b.complex()), (17, 16, 0));
    assert!(b.complex().is_connected());
}

#[test]
fn three_torus_ball() {
    let b = ball(fixtures::n_torus(3), 2);
    // Octahedral ball of radius 2 in Z^3: 25 vertices.
    assert_eq!(b.complex().vertex_count(), 25);
    assert_eq!(b.complex().cubes().iter().filter(|c| c.dim() == 3).count(), 0);
    let b = ball(fixtures::n_torus(3), 3);
    assert_eq!(b.complex().cubes().iter().filter(|c| c.dim() == 3).count(), 8);
}

#[test]
fn ball_rejects_non_npc() {
    let e = universal_cover_ball(Arc::new(fixtures::three_squares()), VertexId(0), 1).unwrap_err();
    assert_eq!(e, GeometryError::NotNpc(VertexId(0)));
}

#[test]
fn projection_is_a_local_isometry_inside() {
    for y in [fixtures::torus(), fixtures::n_torus(3), fixtures::torus_double_cover(), fixtures::salvetti(4, &[(0, 1), (1, 2), (2, 3)])] {
        let b = ball(y, 3);
        let f = &b.projection;
        let reach = f.codomain().max_dim().max(1);
        for v in b.complex().vertices() {
            assert!(f.immersion_failure_at(v).is_none());
            // Cubes at v reach `reach` steps further out.
            if b.depth[v.index()] + reach <= 3 {
                assert!(f.missing_simplices_at(v).is_empty());
            }
            if b.depth[v.index()] < 3 {
                assert_eq!(b.complex().degree(v), f.codomain().degree(f.vertex_image(v)));
            }
        }
    }
}

#[test]
fn distance_is_separating_hyperplane_count() {
    for y in [fixtures::torus(), fixtures::n_torus(3), fixtures::salvetti(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])] {
        let b = ball(y, 3);
        let x = b.complex();
        for u in x.vertices() {
            let dist = x.distances_from(u);
            for v in x.vertices() {
                assert_eq!(Some(b.halfspaces.distance(u, v)), dist[v.index()]);
            }
        }
    }
}

#[test]
fn halfspaces_partition_and_disconnect() {
    let x = fixtures::grid_box(&[2, 3]);
    let hs = Halfspaces::new(&x).unwrap();
    assert_eq!(hs.len(), 5);
    for h in 0..hs.len() {
        let plus = hs.plus_side(h);
        let dual: Vec<EdgeId> = hs.hyperplanes.classes[h].dual_edges.clone();
        for (i, e) in x.edges().iter().enumerate() {
            let crosses = plus[e.source.index()] != plus[e.target.index()];
            assert_eq!(crosses, dual.contains(&EdgeId::from(i)));
        }
        assert!(plus[x.edge(dual[0]).target.index()]);
    }
}

#[test]
fn cycles_are_not_simply_connected() {
    assert_eq!(Halfspaces::new(&fixtures::cycle(3)).unwrap_err(), GeometryError::NotSimplyConnected);
}

#[test]
fn grid_geodesics() {
    let g = Grid::new(&[2, 2]);
    let x = g.complex();
    let hs = Halfspaces::new(&x).unwrap();
    let o = g.vertex(&[0, 0]);
    let paths = geodesics(&x, &hs, o, g.vertex(&[1, 1]));
    assert_eq!(paths.len(), 2);
    assert!(paths.iter().all(|p| p.len() == 2));
    let paths = geodesics(&x, &hs, o, g.vertex(&[2, 0]));
    assert_eq!(paths.len(), 1);
    assert_eq!(geodesics(&x, &hs, o, o), vec![Vec::<DirectedEdge>::new()]);
    assert_eq!(geodesics(&x, &hs, o, g.vertex(&[2, 2])).len(), 6);
}

#[test]
fn ball_geodesics_respect_the_margin() {
    let b = ball(fixtures::torus(), 3);
    let c = b.center;
    let v = b.lift_from_center(&[DirectedEdge::forward(EdgeId(0)), DirectedEdge::forward(EdgeId(1))]).unwrap();
    let paths = b.geodesics(c, v).unwrap();
    assert_eq!(paths.len(), 2);
    let far = b.lift_from_center(&[DirectedEdge::forward(EdgeId(0)); 3]).unwrap();
    assert!(matches!(b.geodesics(c, far), Err(GeometryError::TooCloseToBoundary { .. })));
}

#[test]
fn grid_hulls() {
    let g = Grid::new(&[3, 3]);
    let x = g.complex();
    let hs = Halfspaces::new(&x).unwrap();
    let h = convex_hull(&x, &hs, &[g.vertex(&[0, 0]), g.vertex(&[2, 1])]).unwrap();
    assert_eq!((h.vertices.len(), h.edges.len(), h.cubes.len()), (6, 7, 2));
    let h = convex_hull(&x, &hs, &[g.vertex(&[1, 1])]).unwrap();
    assert_eq!(h.vertices, vec![g.vertex(&[1, 1])]);
    assert!(h.edges.is_empty());
    let h = convex_hull(&x, &hs, &[g.vertex(&[0, 0]), g.vertex(&[1, 1])]).unwrap();
    assert_eq!((h.vertices.len(), h.edges.len(), h.cubes.len()), (4, 4, 1));
    assert_eq!(convex_hull(&x, &hs, &[]).unwrap_err(), GeometryError::EmptySet);
}

#[test]
fn hull_is_idempotent_and_convex() {
    let g = Grid::new(&[2, 2, 2]);
    let x = g.complex();
    let hs = Halfspaces::new(&x).unwrap();
    let s = [g.vertex(&[0, 1, 0]), g.vertex(&[2, 0, 1]), g.vertex(&[1, 2, 0])];
    let h = convex_hull(&x, &hs, &s).unwrap();
    let again = convex_hull(&x, &hs, &h.vertices).unwrap();
    assert_eq!(h, again);
    assert!(is_convex(&x, &hs, &h.vertices));
    assert!(!is_convex(&x, &hs, &s));
}

#[test]
fn subcomplex_extraction() {
    let g = Grid::new(&[2, 2]);
    let x = g.complex();
    let hs = Halfspaces::new(&x).unwrap();
    let h = convex_hull(&x, &hs, &[g.vertex(&[1, 0]), g.vertex(&[2, 2])]).unwrap();
    let (sub, old) = h.extract(&x);
    assert_eq!(counts(&sub), (6, 7, 2));
    assert_eq!(old, h.vertices);
    assert!(check_npc(&sub).is_npc());
}

#[test]
fn dual_of_one_hyperplane_is_an_edge() {
    let p = HalfspacePoset::generated(1, &[]).unwrap();
    let d = sageev_dual(&p).unwrap();
    assert_eq!(counts(&d.complex), (2, 1, 0));
}

#[test]
fn dual_of_transverse_pair_is_a_square() {
    let p = HalfspacePoset::generated(2, &[]).unwrap();
    let d = sageev_dual(&p).unwrap();
    assert_eq!(counts(&d.complex), (4, 4, 1));
    assert!(check_npc(&d.complex).is_npc());
}

#[test]
fn dual_of_nested_pair_is_a_path() {
    // The + side of hyperplane 0 lies inside the + side of hyperplane 1.
    let p = HalfspacePoset::generated(2, &[(0, 2)]).unwrap();
    let d = sageev_dual(&p).unwrap();
    assert_eq!(counts(&d.complex), (3, 2, 0));
    let mut bad = FixedBitSet::with_capacity(2);
    bad.insert(0);
    assert!(d.vertex_of(&bad).is_none());
}

#[test]
fn inconsistent_posets_are_rejected() {
    // 0 within 2 without 3 within 1: complement is not order-reversing.
    let mut leq = vec![FixedBitSet::with_capacity(4); 4];
    for (a, row) in leq.iter_mut().enumerate() {
        row.insert(a);
    }
    leq[0].insert(2);
    assert_eq!(HalfspacePoset::new(vec![0, 1], leq).unwrap_err(), GeometryError::InconsistentPoset);
    // A halfspace inside its own complement and vice versa.
    assert!(HalfspacePoset::generated(1, &[(0, 1), (1, 0)]).is_err());
}

#[test]
fn dual_vertices_land_in_the_grid() {
    let g = Grid::new(&[2, 2]);
    let x = g.complex();
    let hs = Halfspaces::new(&x).unwrap();
    let corners = [g.vertex(&[0, 0]), g.vertex(&[1, 0]), g.vertex(&[0, 1]), g.vertex(&[1, 1])];
    let p = halfspaces_meeting(&x, &hs, &corners);
    assert_eq!(p.hyperplane_count(), 2);
    let q = corners[0];
    let at_q = ambient_orientation(&p, &hs, q);
    assert_eq!(dual_to_ambient(&p, &hs, &at_q, q), Some(q));
    let mut both_plus = FixedBitSet::with_capacity(2);
    both_plus.insert_range(..);
    assert_eq!(dual_to_ambient(&p, &hs, &both_plus, q), Some(g.vertex(&[1, 1])));
}

/// The dual of the meeting halfspaces maps isomorphically onto the hull.
fn assert_duality(x: &CubeComplex, hs: &Halfspaces, s: &[VertexId]) {
    let hull = convex_hull(x, hs, s).unwrap();
    let p = halfspaces_meeting(x, hs, s);
    let d = sageev_dual(&p).unwrap();
    let q = s[0];
    let image: Vec<VertexId> = d.orientations.iter().map(|z| dual_to_ambient(&p, hs, z, q).unwrap()).collect();
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted, hull.vertices);
    assert_eq!(d.complex.edge_count(), hull.edges.len());
    assert_eq!(d.complex.cube_count(), hull.cubes.len());
    for e in d.complex.edges() {
        let (a, b) = (image[e.source.index()], image[e.target.index()]);
        assert_eq!(hs.distance(a, b), 1);
    }
}

#[test]
fn dual_matches_hull_in_grids() {
    let g = Grid::new(&[3, 2, 2]);
    let x = g.complex();
    let hs = Halfspaces::new(&x).unwrap();
    assert_duality(&x, &hs, &[g.vertex(&[0, 0, 0]), g.vertex(&[2, 1, 0])]);
    assert_duality(&x, &hs, &[g.vertex(&[0, 1, 0]), g.vertex(&[3, 0, 2]), g.vertex(&[1, 2, 1])]);
    assert_duality(&x, &hs, &[g.vertex(&[1, 1, 1])]);
}

#[test]
fn dual_matches_hull_in_a_ball() {
    let b = ball(fixtures::salvetti(4, &[(0, 1), (1, 2), (2, 3)]), 4);
    let a = DirectedEdge::forward(EdgeId(0));
    let bb = DirectedEdge::forward(EdgeId(1));
    let c = DirectedEdge::forward(EdgeId(2));
    let s = [b.center, b.lift_from_center(&[a, bb]).unwrap(), b.lift_from_center(&[c]).unwrap()];
    let hull = b.convex_hull(&s).unwrap();
    assert!(hull.vertices.len() >= 5);
    assert_duality(b.complex(), &b.halfspaces, &s);
}
