//! Rebuilds the manifold from several base edges and compares the invariants.
//!
//! Run with `cargo run --release --example frame_independence`.

use hsmanifold::assembly::{cusp_analysis, total_volume, HsManifold};
use hsmanifold::hsg::build_hsg;
use hsmanifold::symmetry::{automorphism_group, build_flag_graph};

fn main() -> hsmanifold::Result<()> {
    let g = build_hsg()?;
    for &e in g.edges().iter().step_by(29) {
        let m = HsManifold::from_graph(g.clone(), e, [0, 1, 2, 3])?;
        let sg = automorphism_group(&build_flag_graph(&m)?);
        let cusps = cusp_analysis(&m)?;
        println!(
            "base edge {:?}: volume {:.7}, cusps {:?}, symmetry order {}",
            e,
            total_volume(&m.region),
            cusps.class_sizes(),
            sg.order()
        );
    }
    Ok(())
}
