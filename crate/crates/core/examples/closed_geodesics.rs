//! Closed geodesics in hexagon planes, traced through the identifications.
//!
//! Run with `cargo run --release --example closed_geodesics`.

use hsmanifold::assembly::HsManifold;
use hsmanifold::geodesics::{closed_geodesic_suite, segment_lengths, trace_geodesic, SegmentKind};
use hsmanifold::symmetry::hexagon_colors;

fn main() -> hsmanifold::Result<()> {
    let m = HsManifold::build((0, 1))?;
    let sl = segment_lengths(&m);
    println!("edge {:.10}, height {:.10}, diagonal {:.10}", sl.edge, sl.height, sl.diagonal);

    let suite = closed_geodesic_suite(&m, 1e-8)?;
    for c in &suite.claims {
        println!("{:<36} {:.10} (expected {:.10}) in {} steps", c.claim, c.measured, c.expected, c.steps);
    }
    for f in &suite.form_checks {
        println!("{} vs {} = {:.10}: {}", f.quantity, f.expression, f.value, if f.agrees { "agrees" } else { "disagrees" });
    }

    let (green, _) = hexagon_colors(&m);
    let r = trace_geodesic(&m, SegmentKind::Diagonal, green[0], 2, 0, 64)?;
    println!(
        "diagonal trace: {} segments through hexagons {:?}, holonomy trace {:.6}",
        r.steps(),
        r.segments.iter().map(|s| s.hex).collect::<Vec<_>>(),
        r.holonomy.trace()
    );
    let bicuspid = suite.vertical_lines.iter().filter(|v| v.kind == hsmanifold::geodesics::CuspType::Bicuspid).count();
    println!("vertical lines over hexagon centres that are bicuspid: {bicuspid}/12");
    Ok(())
}
