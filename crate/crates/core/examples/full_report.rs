//! Runs every check and prints the JSON report.
//!
//! Run with `cargo run --release --example full_report`.

use hsmanifold::report::{build_report, Options};

fn main() -> hsmanifold::Result<()> {
    let r = build_report(&Options::default())?;
    for (name, s) in r.sections.all() {
        eprintln!("{name}: {}", if s.pass { "pass" } else { "FAIL" });
    }
    print!("{}", r.to_json());
    Ok(())
}
