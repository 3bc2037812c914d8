//! The two kinds of torus maps on the Sylvester graph, the maniplex they form, and the
//! planar layout of the big map's twelve hexagons.
//!
//! Run with `cargo run --release --example torus_maps`.

use hsmanifold::hsg::{build_hsg, edge_frame, sylvester_checks};
use hsmanifold::torusmaps::{build_maniplex, develop_layout};

fn main() -> hsmanifold::Result<()> {
    let g = build_hsg()?;
    let frame = edge_frame(&g, (0, 1))?;
    let syl = sylvester_checks(&g, &frame)?;
    let mp = build_maniplex(&syl, [0, 1, 2, 3])?;

    for (i, m) in mp.small_maps.iter().enumerate() {
        let e = m.euler();
        println!("small map {i}: V={} E={} F={} chi={}", e.vertices, e.edges, e.faces, e.characteristic());
    }
    let e = mp.big_map.euler();
    println!("big map: V={} E={} F={} chi={}", e.vertices, e.edges, e.faces, e.characteristic());
    println!("maps per hexagon: {:?}", mp.membership_counts());

    let ig = mp.identified_graph();
    println!("identified graph is K6 plus a perfect matching: {}", ig.is_k6_plus_matching());
    println!("doubled column pairs: {:?}", ig.doubled_pairs);

    let layout = develop_layout(&mp.big_map)?;
    println!("layout periods {:?}, {} hexagons, area ratio {:.3}", layout.periods, layout.face_count(), layout.area_ratio());
    Ok(())
}
