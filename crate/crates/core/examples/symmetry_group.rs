//! Isometries of the manifold as automorphisms of the flag graph on the 288 tetrahedra.
//!
//! Run with `cargo run --release --example symmetry_group`.

use hsmanifold::assembly::HsManifold;
use hsmanifold::symmetry::{
    automorphism_group, build_flag_graph, coxeter_presentation_check, geometric_reflections, orbit_report,
    rotation_subgroup_orders,
};

fn main() -> hsmanifold::Result<()> {
    let m = HsManifold::build((0, 1))?;
    let fg = build_flag_graph(&m)?;
    let sg = automorphism_group(&fg);
    println!("group order {}, acts freely: {}", sg.order(), sg.is_free());
    println!("orientation-preserving element orders: {:?}", rotation_subgroup_orders(&fg, &sg));

    let w = coxeter_presentation_check(&sg)?;
    println!("involutions {:?} with product orders {:?} generate {}", w.generators, w.product_orders, w.generated_order);

    let orbits = orbit_report(&sg, &m)?;
    println!("hexagon orbits {:?}", orbits.hexagon_orbits);
    println!("green {:?}, purple {:?}", orbits.green, orbits.purple);
    println!("cusp orbits {:?}, big cusp fixed: {}", orbits.cusp_orbits, orbits.big_cusp_fixed);

    let r = geometric_reflections(&m, &fg, &sg)?;
    println!(
        "{} mirrors kept, {} rejected; mirror products have orders {:?} and generate {}",
        r.mirrors.len(),
        r.rejected,
        r.mirror_product_orders,
        r.mirrors_generate
    );
    for x in &r.witness {
        println!("  witness element {}: {:?} {:?}", x.element, x.kind, x.symmetry);
    }
    Ok(())
}
