//! Writes the layout and the two plane tessellations as SVG files into the current
//! directory.
//!
//! Run with `cargo run --release --example render_figures`.

use hsmanifold::assembly::HsManifold;
use hsmanifold::svg::{render_layout, render_plane};
use hsmanifold::symmetry::hexagon_colors;

fn main() -> hsmanifold::Result<()> {
    let m = HsManifold::build((0, 1))?;
    let (green, purple) = hexagon_colors(&m);
    let files = [
        ("layout.svg", render_layout(&m)),
        ("plane-type1.svg", render_plane(&m, purple[0], 3)?),
        ("plane-type2.svg", render_plane(&m, green[0], 3)?),
    ];
    for (name, text) in files {
        std::fs::write(name, &text).map_err(|e| hsmanifold::HsmError::InvalidArgument(e.to_string()))?;
        println!("wrote {name} ({} bytes)", text.len());
    }
    Ok(())
}
