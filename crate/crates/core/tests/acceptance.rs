//! Acceptance suite: one PASS/FAIL line per criterion, run with
//! `cargo test --test acceptance -- --nocapture`.

mod common;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use hsmanifold::assembly::{
    cusp_analysis, edge_cycle_check, generator_reduction, match_worked_example, pairing_forms, total_volume,
    verify_pairings, vertex_link_check, witness_maps_wall, HsManifold,
};
use hsmanifold::geodesics::{closed_geodesic_suite, CuspType};
use hsmanifold::graph::automorphism_order;
use hsmanifold::h3geom::{lobachevsky, lobachevsky_series_pi3, CharacteristicTetrahedron};
use hsmanifold::hsg::{
    build_hsg, build_petersen, edge_frame, hexagon_decomposition, petersen_census, row_triples, sylvester_checks,
};
use hsmanifold::symmetry::{automorphism_group, build_flag_graph, coxeter_presentation_check, orbit_report};

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(results: &mut Vec<(&'static str, bool)>, name: &'static str, f: impl FnOnce() -> Outcome) {
    let started = Instant::now();
    let o = f();
    println!(
        "[{}] {name}: {} ({:.2?})",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        started.elapsed()
    );
    results.push((name, o.pass));
}

fn within(d: Duration, secs: u64) -> bool {
    d < Duration::from_secs(secs)
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let g = build_hsg().unwrap();

    check(&mut results, "HSG invariants", || {
        let started = Instant::now();
        let inv = g.invariants().unwrap();
        let pass = (inv.vertex_count, inv.edge_count, inv.min_degree, inv.max_degree, inv.girth, inv.diameter)
            == (50, 175, 7, 7, Some(5), 2)
            && within(started.elapsed(), 1);
        Outcome { pass, detail: format!("{inv:?}") }
    });

    check(&mut results, "automorphism orders", || {
        let started = Instant::now();
        let hsg = automorphism_order(&g);
        let pet = automorphism_order(&build_petersen());
        Outcome { pass: hsg == 252_000 && pet == 120 && within(started.elapsed(), 120), detail: format!("HSG {hsg}, Petersen {pet}") }
    });

    check(&mut results, "Petersen-extension lemma and census", || {
        let started = Instant::now();
        let census = petersen_census(&g).unwrap();
        let elapsed = started.elapsed();
        let pentagons = common::pentagons_brute_force(&g);
        let subgraphs = common::petersen_subgraphs_brute_force(&g);
        let pass = census.cases == 31_500
            && census.all_unique
            && census.subgraph_count == 525
            && g.pentagons().len() == 1260
            && pentagons == 1260
            && subgraphs == 525
            && within(elapsed, 60);
        Outcome {
            pass,
            detail: format!(
                "{} cases, unique {}, {} subgraphs (oracle {subgraphs}), pentagons oracle {pentagons}, census {elapsed:.1?}",
                census.cases, census.all_unique, census.subgraph_count
            ),
        }
    });

    check(&mut results, "crosses lemma and hexagon decomposition", || {
        let frame = edge_frame(&g, (0, 1)).unwrap();
        let syl = sylvester_checks(&g, &frame);
        let Ok(syl) = syl else { return Outcome { pass: false, detail: format!("{syl:?}") } };
        let ok = row_triples().iter().filter(|&&t| hexagon_decomposition(&syl, t).is_ok()).count();
        Outcome {
            pass: syl.graph.edge_count() == 90 && ok == 20 && row_triples().len() == 20,
            detail: format!("{} Sylvester edges, {ok}/20 triples decompose", syl.graph.edge_count()),
        }
    });

    let m = HsManifold::from_graph(g.clone(), (0, 1), [0, 1, 2, 3]).unwrap();

    check(&mut results, "torus maps and maniplex", || {
        let mp = &m.maniplex;
        let small: Vec<_> = mp.small_maps.iter().map(|s| s.euler()).collect();
        let big = mp.big_map.euler();
        let pass = small.iter().all(|e| (e.vertices, e.edges, e.faces) == (6, 9, 3) && e.characteristic() == 0)
            && (big.vertices, big.edges, big.faces) == (24, 36, 12)
            && big.characteristic() == 0
            && mp.small_orientations_coherent().iter().all(|&o| o)
            && mp.big_map.check().is_ok()
            && mp.membership_counts().iter().all(|&c| c == 2)
            && mp.identified_graph().is_k6_plus_matching();
        Outcome { pass, detail: format!("small {:?}, big {:?}, doubled {:?}", small[0], big, mp.identified_graph().doubled_pairs) }
    });

    check(&mut results, "characteristic tetrahedron", || {
        let angles = CharacteristicTetrahedron::new().dihedral_angles().unwrap();
        let mut got = angles.to_vec();
        got.sort_by(f64::total_cmp);
        let mut want = [TAU / 4.0, TAU / 4.0, TAU / 4.0, FRAC_PI_3, FRAC_PI_4, TAU / 12.0];
        want.sort_by(f64::total_cmp);
        let err = got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        Outcome { pass: err < 1e-9, detail: format!("max angle error {err:.1e}") }
    });

    check(&mut results, "volume", || {
        let v = total_volume(&m.region);
        let quad = lobachevsky(FRAC_PI_3);
        let series = lobachevsky_series_pi3(1_000_000);
        Outcome {
            pass: (v - 81.1953).abs() < 5e-4 && (quad - series).abs() < 1e-10 && m.region.tet_count() == 288,
            detail: format!("volume {v:.7}, quadrature - series = {:.1e}", quad - series),
        }
    });

    check(&mut results, "face pairings", || {
        let rep = verify_pairings(&m.pairings, &m.region);
        let worked = match_worked_example(&m.pairings, &m.region);
        let rotations = pairing_forms(&m.pairings, &m.region).iter().filter(|f| f.alpha == -1).count();
        let err = worked.as_ref().map(|w| w.error).unwrap_or(f64::INFINITY);
        Outcome {
            pass: rep.ok() && rep.generator_count == 39 && err < 1e-8 && rotations > 0,
            detail: format!("{} generators, worked example error {err:.1e}, {rotations} need a rotation by pi", rep.generator_count),
        }
    });

    check(&mut results, "Poincaré conditions", || {
        let cycles = edge_cycle_check(&m);
        let links = vertex_link_check(&m);
        let pass = cycles.ok() && cycles.max_angle_error < 1e-9 && links.ok();
        Outcome {
            pass,
            detail: format!(
                "{} edge classes, angle error {:.1e}, fans {:?} and {:?}, {} vertex classes",
                cycles.classes,
                cycles.max_angle_error,
                cycles.hexagon_edge_fans,
                cycles.below_vertex_fans,
                links.classes.len()
            ),
        }
    });

    check(&mut results, "cusps", || {
        let c = cusp_analysis(&m).unwrap();
        Outcome { pass: c.ok(), detail: format!("class sizes {:?}, horoball ratio {:.9}", c.class_sizes(), c.volume_ratio()) }
    });

    check(&mut results, "generator reduction", || {
        let red = generator_reduction(&m.pairings, 6);
        let longest = red.witnesses.iter().map(|w| w.word.len()).max().unwrap_or(0);
        let consistent = red.witnesses.iter().all(|w| witness_maps_wall(&m.pairings, &m.region, w));
        Outcome {
            pass: red.covered_all && red.kept.len() <= 18 && longest <= 6 && consistent,
            detail: format!("{} of 39 generators kept, longest witness {longest}", red.kept.len()),
        }
    });

    check(&mut results, "symmetry group", || {
        let fg = build_flag_graph(&m).unwrap();
        let sg = automorphism_group(&fg);
        let w = coxeter_presentation_check(&sg);
        let orbits = orbit_report(&sg, &m).unwrap();
        let pass = sg.order() == 48 && w.as_ref().is_ok_and(|w| w.generated_order == 48) && orbits.ok();
        let sizes: Vec<usize> = orbits.hexagon_orbits.iter().map(|o| o.len()).collect();
        Outcome {
            pass,
            detail: format!("order {}, witness {:?}, hexagon orbits {sizes:?}, big cusp fixed {}", sg.order(), w.map(|w| w.product_orders), orbits.big_cusp_fixed),
        }
    });

    check(&mut results, "closed geodesics", || {
        let s = closed_geodesic_suite(&m, 1e-8).unwrap();
        let bicuspid = s.vertical_lines.iter().all(|v| v.kind == CuspType::Bicuspid);
        let lengths: Vec<String> = s.claims.iter().map(|c| format!("{:.7}", c.measured)).collect();
        let flagged = s.form_checks.iter().filter(|f| !f.agrees).count();
        Outcome {
            pass: s.ok() && bicuspid && s.claims.len() == 5,
            detail: format!("lengths {lengths:?}, vertical lines bicuspid {bicuspid}, {flagged} alternative closed forms disagree"),
        }
    });

    check(&mut results, "determinism", || {
        let run = || Command::new(env!("CARGO_BIN_EXE_hsmcli")).arg("report").output().unwrap();
        let (a, b) = (run(), run());
        let pass = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
        Outcome { pass, detail: format!("{} bytes, identical {}", a.stdout.len(), a.stdout == b.stdout) }
    });

    let failed: Vec<&str> = results.iter().filter(|(_, p)| !p).map(|(n, _)| *n).collect();
    println!("{} of {} criteria pass", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failed: {failed:?}");
}
