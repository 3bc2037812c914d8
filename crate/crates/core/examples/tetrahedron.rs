//! The characteristic tetrahedron of the {6,3,4} honeycomb: dihedral angles, the hexagon
//! it tiles, and the volume of the manifold built from 288 copies.
//!
//! Run with `cargo run --release --example tetrahedron`.

use std::f64::consts::{FRAC_PI_3, PI};

use hsmanifold::h3geom::{
    honeycomb_patch, lobachevsky, lobachevsky_series_pi3, tetrahedron_volume, CharacteristicTetrahedron, FACE_NAMES,
};

fn main() -> hsmanifold::Result<()> {
    let t = CharacteristicTetrahedron::new();
    let angles = t.dihedral_angles()?;
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for ((a, b), x) in pairs.iter().zip(angles) {
        println!("angle {}{} = pi/{:.6}", FACE_NAMES[*a], FACE_NAMES[*b], PI / x);
    }

    let patch = honeycomb_patch();
    println!("base hexagon has {} vertices, angle at v0 = pi/{:.6}", patch.h0.len(), PI / patch.vertex_angle(0));

    let quad = lobachevsky(FRAC_PI_3);
    let series = lobachevsky_series_pi3(1_000_000);
    println!("L(pi/3) = {quad:.15} (series {series:.15})");
    println!("tetrahedron volume {:.10}, manifold volume {:.7}", tetrahedron_volume(), 288.0 * tetrahedron_volume());
    Ok(())
}
