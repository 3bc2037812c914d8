use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use hsmanifold::assembly::HsManifold;
use hsmanifold::hsg::build_hsg;
use hsmanifold::report::{self, default_base_edge, Options, Section};
use hsmanifold::symmetry::hexagon_colors;
use hsmanifold::{svg, HsmError, Result};

#[derive(Parser)]
#[command(name = "hsmcli", about = "Builds and verifies the Hoffman-Singleton manifold")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file (JSON, or SVG for `render`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Graph edge `a,b` seeding the labeling (default: least edge).
    #[arg(long, global = true, value_parser = parse_edge)]
    base_edge: Option<(usize, usize)>,
    /// Tolerance for geodesic lengths and the worked example.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,
    #[arg(long, global = true, default_value_t = 6)]
    max_word_length: usize,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write the graph as `{"n", "edges"}` JSON.
    #[arg(long, global = true)]
    dump_graph: Option<PathBuf>,
    /// Include section runtimes (makes the output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    VerifyGraph,
    VerifyMaps,
    BuildManifold,
    VerifyManifold,
    Volume,
    Symmetry,
    Geodesics,
    Report,
    Render,
}

fn parse_edge(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| HsmError::InvalidArgument(format!("{}: {e}", path.display())))
}

fn emit(cli: &Cli, v: &Value) -> Result<()> {
    if let Some(p) = &cli.out {
        let mut v = v.clone();
        report::round_floats(&mut v);
        write(p, &(serde_json::to_string_pretty(&v).expect("json") + "\n"))?;
    }
    Ok(())
}

fn status(name: &str, s: &Section) {
    println!("{name}: {}", if s.pass { "PASS" } else { "FAIL" });
}

fn section_json(name: &str, s: &Section) -> Value {
    serde_json::json!({ "schema_version": report::SCHEMA_VERSION, name: s })
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| HsmError::InvalidArgument(e.to_string()))?;
    }
    let g = build_hsg()?;
    if let Some(p) = &cli.dump_graph {
        write(p, &(serde_json::to_string(&g.to_json()).expect("json") + "\n"))?;
    }
    let opts = Options {
        base_edge: cli.base_edge.unwrap_or_else(|| default_base_edge(&g)),
        tolerance: cli.tolerance,
        max_word_length: cli.max_word_length,
        timings: cli.timings,
    };
    let manifold = || HsManifold::from_graph(g.clone(), opts.base_edge, [0, 1, 2, 3]);
    match cli.command {
        Command::VerifyGraph => {
            let s = report::graph_section(&g, &opts)?;
            let v = &s.values;
            println!("invariants: {}", v["invariants"]);
            println!("automorphism order: {}", v["automorphism_order"]);
            println!("Petersen automorphism order: {}", v["petersen_automorphism_order"]);
            println!("extension lemma cases: {}, Petersen subgraphs: {}", v["petersen_census"]["cases"], v["petersen_census"]["subgraph_count"]);
            status("graph", &s);
            emit(cli, &section_json("graph", &s))?;
            Ok(s.pass)
        }
        Command::VerifyMaps => {
            let s = report::maps_section(&manifold()?, &opts)?;
            println!("small maps (V,E,F): {}", s.values["small_maps"]);
            println!("big map (V,E,F): {}", s.values["big_map"]);
            println!("doubled pairs: {}", s.values["identified_graph"]["doubled_pairs"]);
            status("maps", &s);
            emit(cli, &section_json("maps", &s))?;
            Ok(s.pass)
        }
        Command::BuildManifold => {
            let m = manifold()?;
            let s = report::manifold_section(&m, &opts)?;
            let mut v = report::region_export(&m);
            v["verification"] = serde_json::to_value(&s).expect("json");
            println!("{} tetrahedra, {} generators", m.region.tet_count(), m.pairings.generators.len());
            status("manifold", &s);
            emit(cli, &v)?;
            Ok(s.pass)
        }
        Command::VerifyManifold => {
            let m = manifold()?;
            let s = report::manifold_section(&m, &opts)?;
            let c = report::cusps_section(&m, &opts)?;
            let r = &s.values["reduction"];
            println!("edge cycle classes: {}", s.values["edge_cycles"]["classes"]);
            println!("generators kept: {} (longest witness {})", r["count"], r["longest_witness"]);
            println!("cusp class sizes: {}, horoball volume ratio {}", c.values["class_sizes"], c.values["volume_ratio"]);
            status("manifold", &s);
            status("cusps", &c);
            emit(cli, &serde_json::json!({"schema_version": report::SCHEMA_VERSION, "manifold": s, "cusps": c}))?;
            Ok(s.pass && c.pass)
        }
        Command::Volume => {
            let s = report::volume_section(&manifold()?, &opts)?;
            println!("volume: {:.7}", s.values["volume"].as_f64().unwrap_or(f64::NAN));
            status("volume", &s);
            emit(cli, &section_json("volume", &s))?;
            Ok(s.pass)
        }
        Command::Symmetry => {
            let s = report::symmetry_section(&manifold()?, &opts)?;
            let v = &s.values;
            println!("order: {}", v["order"]);
            println!("hexagon orbits: {}", v["orbits"]["hexagon_orbits"]);
            println!("edge orbits: {}", v["orbits"]["edge_orbits"]);
            println!("cusp orbits: {}", v["orbits"]["cusp_orbits"]);
            println!("witness (2,4,3): {}", v["witness"]);
            println!("witness isometries: {}", v["witness_isometries"]);
            status("symmetry", &s);
            emit(cli, &section_json("symmetry", &s))?;
            Ok(s.pass)
        }
        Command::Geodesics => {
            let s = report::geodesics_section(&manifold()?, &opts)?;
            println!("{:<36} {:>14} {:>14} {:>6}", "claim", "expected", "measured", "steps");
            for c in s.values["claims"].as_array().into_iter().flatten() {
                println!(
                    "{:<36} {:>14.10} {:>14.10} {:>6}",
                    c["claim"].as_str().unwrap_or(""),
                    c["expected"].as_f64().unwrap_or(f64::NAN),
                    c["measured"].as_f64().unwrap_or(f64::NAN),
                    c["steps"]
                );
            }
            status("geodesics", &s);
            emit(cli, &section_json("geodesics", &s))?;
            Ok(s.pass)
        }
        Command::Report => {
            let r = report::build_report(&opts)?;
            for (name, s) in r.sections.all() {
                status(name, s);
            }
            let text = r.to_json();
            match &cli.out {
                Some(p) => write(p, &text)?,
                None => print!("{text}"),
            }
            Ok(r.pass)
        }
        Command::Render => {
            let m = manifold()?;
            let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("layout.svg"));
            write(&out, &svg::render_layout(&m))?;
            let (green, purple) = hexagon_colors(&m);
            let stem = out.with_extension("");
            for (suffix, hexes) in [("type1", &purple), ("type2", &green)] {
                if let Some(&h) = hexes.first() {
                    let path = PathBuf::from(format!("{}-{suffix}.svg", stem.display()));
                    write(&path, &svg::render_plane(&m, h, 3)?)?;
                    println!("wrote {}", path.display());
                }
            }
            println!("wrote {}", out.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
