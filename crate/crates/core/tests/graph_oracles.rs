mod common;

use hsmanifold::graph::automorphism_order;
use hsmanifold::hsg::{build_hsg, build_petersen, pentagon_census};

#[test]
fn pentagon_count_matches_walk_count() {
    let g = build_hsg().unwrap();
    assert_eq!(common::pentagons_brute_force(&g), 1260);
    assert_eq!(pentagon_census(&g).pentagon_count, 1260);
    assert_eq!(common::pentagons_brute_force(&build_petersen()), 12);
}

#[test]
fn petersen_subgraphs_from_pentagon_pairs() {
    let g = build_hsg().unwrap();
    assert_eq!(common::petersen_subgraphs_brute_force(&g), 525);
    assert_eq!(common::petersen_subgraphs_brute_force(&build_petersen()), 1);
}

#[test]
fn automorphism_orders() {
    assert_eq!(automorphism_order(&build_hsg().unwrap()), 252_000);
    assert_eq!(automorphism_order(&build_petersen()), 120);
}
