//! Builds the 39 face pairings, checks them, and searches for a small generating subset.
//!
//! Run with `cargo run --release --example face_pairings`.

use std::time::Instant;

use hsmanifold::assembly::{
    generator_reduction, match_worked_example, pairing_forms, verify_pairings, witness_maps_wall, HsManifold,
    PairingKind,
};

fn main() -> hsmanifold::Result<()> {
    let m = HsManifold::build((0, 1))?;
    let pg = &m.pairings;
    let report = verify_pairings(pg, &m.region);
    println!(
        "generators: {} ({} downward), walls matched {}/72, max error {:.2e}",
        report.generator_count, report.downward_count, report.walls_matched, report.max_error
    );

    for (i, g) in pg.generators.iter().enumerate().filter(|(_, g)| g.kind == PairingKind::Downward).take(4) {
        let (s, t) = (g.source.unwrap(), g.target.unwrap());
        println!("  g{i}: wall ({},{}) -> ({},{})", s.hex, s.slot, t.hex, t.slot);
    }

    if let Some(hit) = match_worked_example(pg, &m.region) {
        println!(
            "worked example = wall ({},{}) -> ({},{}) up to {:?}, error {:.2e}",
            hit.source.hex, hit.source.slot, hit.target.hex, hit.target.slot, hit.symmetry, hit.error
        );
    }

    let forms = pairing_forms(pg, &m.region);
    let rotations = forms.iter().filter(|f| f.alpha == -1).count();
    println!("pairings needing a rotation by pi: {rotations} of {}", forms.len());

    let started = Instant::now();
    let red = generator_reduction(pg, 6);
    println!(
        "reduced to {} generators {:?} in {:.1?}; all covered: {}",
        red.kept.len(),
        red.kept,
        started.elapsed(),
        red.covered_all
    );
    let longest = red.witnesses.iter().map(|w| w.word.len()).max().unwrap_or(0);
    let consistent = red.witnesses.iter().all(|w| witness_maps_wall(pg, &m.region, w));
    println!("longest witness word {longest}, witnesses consistent: {consistent}");
    Ok(())
}
