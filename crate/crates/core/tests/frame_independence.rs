//! The construction depends on a base edge of the graph; every invariant must not.

use hsmanifold::assembly::{cusp_analysis, edge_cycle_check, total_volume, HsManifold};
use hsmanifold::geodesics::closed_geodesic_suite;
use hsmanifold::hsg::build_hsg;
use hsmanifold::symmetry::{automorphism_group, build_flag_graph, orbit_report};

#[test]
fn invariants_for_several_base_edges() {
    let g = build_hsg().unwrap();
    let edges = g.edges();
    for &e in [edges[0], edges[17], edges[88], edges[174]].iter() {
        for e in [e, (e.1, e.0)] {
            let m = HsManifold::from_graph(g.clone(), e, [0, 1, 2, 3]).unwrap();
            assert!((total_volume(&m.region) - 81.1953).abs() < 5e-4);
            assert!(edge_cycle_check(&m).ok());
            assert!(cusp_analysis(&m).unwrap().ok());
            let sg = automorphism_group(&build_flag_graph(&m).unwrap());
            assert_eq!(sg.order(), 48);
            assert!(orbit_report(&sg, &m).unwrap().ok());
            assert!(closed_geodesic_suite(&m, 1e-8).unwrap().ok(), "base edge {e:?}");
        }
    }
}

#[test]
fn other_row_quadruples() {
    let g = build_hsg().unwrap();
    for rows in [[0, 1, 2, 4], [1, 2, 4, 5], [0, 3, 4, 5]] {
        let m = HsManifold::from_graph(g.clone(), (0, 1), rows).unwrap();
        assert!(cusp_analysis(&m).unwrap().ok());
        assert!(closed_geodesic_suite(&m, 1e-8).unwrap().ok(), "rows {rows:?}");
    }
}
