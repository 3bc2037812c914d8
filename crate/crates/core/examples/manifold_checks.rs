//! Poincaré conditions for the glued region: edge cycles, vertex links and cusps.
//!
//! Run with `cargo run --release --example manifold_checks`.

use hsmanifold::assembly::{cusp_analysis, edge_cycle_check, total_volume, vertex_link_check, HsManifold};

fn main() -> hsmanifold::Result<()> {
    let m = HsManifold::build((0, 1))?;
    println!("{} tetrahedra, volume {:.7}", m.region.tet_count(), total_volume(&m.region));

    let cycles = edge_cycle_check(&m);
    println!(
        "{} edge classes, max angle-sum error {:.1e}, returns identity: {}",
        cycles.classes, cycles.max_angle_error, cycles.returns_identity
    );
    println!("hexagon edge fans {:?}, fans below vertices {:?}", cycles.hexagon_edge_fans, cycles.below_vertex_fans);

    let links = vertex_link_check(&m);
    for c in &links.classes {
        println!("vertex class {:?}: {} tetrahedra, link chi {}", c.labels, c.tets, c.link_euler);
    }

    let cusps = cusp_analysis(&m)?;
    for c in &cusps.classes {
        println!(
            "cusp {:>8}: {} apexes, shape ({:.6}, {:.6}), horoball volume {:.6}, parabolic: {}",
            if c.at_infinity { "infinity" } else { "finite" },
            c.apexes.len(),
            c.shape.0,
            c.shape.1,
            c.horoball_volume,
            c.all_parabolic
        );
    }
    println!("horoball volume ratio big:small = {:.9}", cusps.volume_ratio());
    Ok(())
}
