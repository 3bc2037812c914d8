//! Builds the Hoffman–Singleton graph and checks its invariants, its automorphism group
//! order and the Petersen census.
//!
//! Run with `cargo run --release --example hoffman_singleton`.

use std::time::Instant;

use hsmanifold::graph::automorphism_order;
use hsmanifold::hsg::{build_hsg, build_petersen, pentagon_census, petersen_census};

fn main() -> hsmanifold::Result<()> {
    let g = build_hsg()?;
    let inv = g.invariants()?;
    println!(
        "{} vertices, {} edges, degree {}..{}, girth {:?}, diameter {}",
        inv.vertex_count, inv.edge_count, inv.min_degree, inv.max_degree, inv.girth, inv.diameter
    );

    let started = Instant::now();
    println!("|Aut(HSG)| = {} ({:.1?})", automorphism_order(&g), started.elapsed());
    println!("|Aut(Petersen)| = {}", automorphism_order(&build_petersen()));

    let pc = pentagon_census(&g);
    println!("pentagons: {}, every 3-path closes uniquely: {}", pc.pentagon_count, pc.unique_completion);

    let started = Instant::now();
    let census = petersen_census(&g)?;
    println!(
        "extension lemma: {} cases, unique: {}, {} Petersen subgraphs ({:.1?})",
        census.cases,
        census.all_unique,
        census.subgraph_count,
        started.elapsed()
    );
    Ok(())
}
