//! Machine-readable verification report, schema `hsman/1`.
//!
//! Sections come in a fixed order and every float is rounded to 12 significant digits, so
//! two runs with the same options give identical bytes. Runtimes are only included on
//! request since they would break that.

use std::f64::consts::FRAC_PI_3;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::assembly::{
    cusp_analysis, edge_cycle_check, generator_reduction, match_worked_example, pairing_forms, total_volume,
    verify_pairings, vertex_link_check, witness_maps_wall, HsManifold,
};
use crate::error::Result;
use crate::geodesics::closed_geodesic_suite;
use crate::graph::{automorphism_order, Graph};
use crate::h3geom::{lobachevsky, lobachevsky_series_pi3, round12, CharacteristicTetrahedron, EXPECTED_ANGLES};
use crate::hsg::{
    build_hsg, build_petersen, edge_frame, hexagon_decomposition, pentagon_census, petersen_census, row_triples,
    sylvester_checks,
};
use crate::symmetry::{
    automorphism_group, build_flag_graph, coxeter_presentation_check, geometric_reflections, orbit_report,
    rotation_subgroup_orders,
};

pub const SCHEMA_VERSION: &str = "hsman/1";

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Options {
    pub base_edge: (usize, usize),
    /// Tolerance for the geodesic lengths and the worked example.
    pub tolerance: f64,
    pub max_word_length: usize,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { base_edge: (0, 1), tolerance: 1e-8, max_word_length: 6, timings: false }
    }
}

/// Lexicographically least edge.
pub fn default_base_edge(g: &Graph) -> (usize, usize) {
    g.edges()[0]
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub pass: bool,
    pub tolerance: Value,
    pub values: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

fn timed(timings: bool, f: impl FnOnce() -> Result<(bool, Value, Value)>) -> Result<Section> {
    let started = Instant::now();
    let (pass, tolerance, values) = f()?;
    let runtime_ms = timings.then(|| started.elapsed().as_secs_f64() * 1e3);
    Ok(Section { pass, tolerance, values, runtime_ms })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

pub fn graph_section(g: &Graph, opts: &Options) -> Result<Section> {
    timed(opts.timings, || {
        let inv = g.invariants()?;
        let aut = automorphism_order(g);
        let petersen = automorphism_order(&build_petersen());
        let pentagons = pentagon_census(g);
        let census = petersen_census(g)?;
        let frame = edge_frame(g, opts.base_edge)?;
        let syl = sylvester_checks(g, &frame)?;
        let decompositions: Vec<usize> =
            row_triples().iter().map(|&t| hexagon_decomposition(&syl, t).map(|h| h.len())).collect::<Result<_>>()?;
        let pass = inv.vertex_count == 50
            && inv.edge_count == 175
            && inv.min_degree == 7
            && inv.max_degree == 7
            && inv.girth == Some(5)
            && inv.diameter == 2
            && aut == 252_000
            && petersen == 120
            && pentagons.pentagon_count == 1260
            && pentagons.unique_completion
            && census.cases == 31_500
            && census.all_unique
            && census.subgraph_count == 525
            && syl.graph.edge_count() == 90
            && decompositions.len() == 20;
        let values = json!({
            "invariants": inv,
            "automorphism_order": aut,
            "petersen_automorphism_order": petersen,
            "pentagons": pentagons,
            "petersen_census": census,
            "base_edge": opts.base_edge,
            "sylvester_edges": syl.graph.edge_count(),
            "crosses_lemma_edges": syl.graph.edge_count(),
            "hexagon_decompositions": decompositions,
        });
        Ok((pass, json!("exact"), values))
    })
}

pub fn maps_section(m: &HsManifold, opts: &Options) -> Result<Section> {
    timed(opts.timings, || {
        let mp = &m.maniplex;
        let small: Vec<_> = mp.small_maps.iter().map(|s| s.euler()).collect();
        let big = mp.big_map.euler();
        let ig = mp.identified_graph();
        let orientable = mp.small_orientations_coherent();
        let membership = mp.membership_counts();
        let layout = &m.region.layout;
        let pass = small.iter().all(|e| (e.vertices, e.edges, e.faces) == (6, 9, 3))
            && (big.vertices, big.edges, big.faces) == (24, 36, 12)
            && orientable.iter().all(|&o| o)
            && mp.big_map.check().is_ok()
            && membership.iter().all(|&c| c == 2)
            && ig.is_k6_plus_matching()
            && mp.lists_consistent()
            && layout.face_count() == 12
            && layout.period_modulus() == 6;
        let values = json!({
            "rows": mp.rows4,
            "small_maps": small,
            "small_euler": small.iter().map(|e| e.characteristic()).collect::<Vec<_>>(),
            "big_map": big,
            "big_euler": big.characteristic(),
            "orientable": orientable,
            "membership_counts": membership,
            "identified_graph": {
                "edges": ig.edges,
                "multiplicity": ig.multiplicity.iter().map(|(&(a, b), &k)| [a, b, k]).collect::<Vec<_>>(),
                "doubled_pairs": ig.doubled_pairs,
            },
            "k6_plus_matching": ig.is_k6_plus_matching(),
            "layout": {
                "faces": layout.face_count(),
                "periods": layout.periods,
                "period_modulus": layout.period_modulus(),
                "area_ratio": layout.area_ratio(),
            },
        });
        Ok((pass, json!("exact"), values))
    })
}

pub fn manifold_section(m: &HsManifold, opts: &Options) -> Result<Section> {
    timed(opts.timings, || {
        let angles = CharacteristicTetrahedron::new().dihedral_angles()?;
        let angle_error = angles.iter().zip(EXPECTED_ANGLES).map(|(a, e)| (a - e).abs()).fold(0.0, f64::max);
        let pairings = verify_pairings(&m.pairings, &m.region);
        let worked = match_worked_example(&m.pairings, &m.region);
        let forms = pairing_forms(&m.pairings, &m.region);
        let rotations = forms.iter().filter(|f| f.alpha == -1).count();
        let cycles = edge_cycle_check(m);
        let links = vertex_link_check(m);
        let red = generator_reduction(&m.pairings, opts.max_word_length);
        let witnesses_ok = red.witnesses.iter().all(|w| witness_maps_wall(&m.pairings, &m.region, w));
        let worked_ok = worked.as_ref().is_some_and(|w| w.error < opts.tolerance);
        let pass = angle_error < 1e-9
            && pairings.ok()
            && pairings.generator_count == 39
            && worked_ok
            && rotations > 0
            && cycles.ok()
            && links.ok()
            && red.covered_all
            && red.kept.len() <= 18
            && red.max_word_length <= opts.max_word_length
            && witnesses_ok;
        let values = json!({
            "tetrahedra": m.region.tet_count(),
            "dihedral_angles": angles,
            "dihedral_angle_error": angle_error,
            "pairings": pairings,
            "worked_example": worked,
            "rotation_form_pairings": rotations,
            "edge_cycles": cycles,
            "vertex_links": links,
            "reduction": {
                "kept": red.kept,
                "count": red.kept.len(),
                "max_word_length": red.max_word_length,
                "longest_witness": red.witnesses.iter().map(|w| w.word.len()).max().unwrap_or(0),
                "covered_all": red.covered_all,
                "witnesses_consistent": witnesses_ok,
            },
        });
        let tol = json!({"dihedral": 1e-9, "worked_example": opts.tolerance, "angle_sum": 1e-9});
        Ok((pass, tol, values))
    })
}

pub fn cusps_section(m: &HsManifold, opts: &Options) -> Result<Section> {
    timed(opts.timings, || {
        let cusps = cusp_analysis(m)?;
        let values = json!({
            "class_sizes": cusps.class_sizes(),
            "volume_ratio": cusps.volume_ratio(),
            "classes": cusps.classes,
        });
        Ok((cusps.ok(), json!({"shape": 1e-9, "volume_ratio": 1e-9}), values))
    })
}

pub fn volume_section(m: &HsManifold, opts: &Options) -> Result<Section> {
    timed(opts.timings, || {
        let quad = lobachevsky(FRAC_PI_3);
        let series = lobachevsky_series_pi3(1_000_000);
        let volume = total_volume(&m.region);
        let pass = (quad - series).abs() < 1e-10 && (volume - 81.1953).abs() < 5e-4 && m.region.tet_count() == 288;
        let values = json!({
            "lobachevsky_pi3": quad,
            "lobachevsky_pi3_series": series,
            "tetrahedron_volume": volume / m.region.tet_count() as f64,
            "tetrahedra": m.region.tet_count(),
            "volume": volume,
        });
        Ok((pass, json!({"volume": 5e-4, "series": 1e-10}), values))
    })
}

pub fn symmetry_section(m: &HsManifold, opts: &Options) -> Result<Section> {
    timed(opts.timings, || {
        let fg = build_flag_graph(m)?;
        let sg = automorphism_group(&fg);
        let witness = coxeter_presentation_check(&sg)?;
        let orbits = orbit_report(&sg, m)?;
        let reflections = geometric_reflections(m, &fg, &sg)?;
        let rotations = rotation_subgroup_orders(&fg, &sg);
        let pass = sg.order() == 48 && sg.is_free() && witness.generated_order == 48 && orbits.ok() && reflections.ok();
        let values = json!({
            "order": sg.order(),
            "free": sg.is_free(),
            "witness": witness,
            "orbits": orbits,
            "orientation_preserving_orders": rotations,
            "reflections": reflections,
            "witness_isometries": reflections.isometries().iter().map(|g| g.to_json()).collect::<Vec<_>>(),
        });
        Ok((pass, json!("exact"), values))
    })
}

pub fn geodesics_section(m: &HsManifold, opts: &Options) -> Result<Section> {
    timed(opts.timings, || {
        let suite = closed_geodesic_suite(m, opts.tolerance)?;
        Ok((suite.ok(), json!({"length": opts.tolerance, "closed_form": 1e-12}), to_value(&suite)))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Sections {
    pub graph: Section,
    pub maps: Section,
    pub manifold: Section,
    pub cusps: Section,
    pub volume: Section,
    pub symmetry: Section,
    pub geodesics: Section,
}

impl Sections {
    pub fn all(&self) -> [(&'static str, &Section); 7] {
        [
            ("graph", &self.graph),
            ("maps", &self.maps),
            ("manifold", &self.manifold),
            ("cusps", &self.cusps),
            ("volume", &self.volume),
            ("symmetry", &self.symmetry),
            ("geodesics", &self.geodesics),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub options: Options,
    pub pass: bool,
    pub sections: Sections,
}

impl VerificationReport {
    /// Pretty JSON with every float rounded to 12 significant digits.
    pub fn to_json(&self) -> String {
        let mut v = to_value(self);
        round_floats(&mut v);
        serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
    }
}

pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = json!(round12(x));
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn build_report(opts: &Options) -> Result<VerificationReport> {
    let g = build_hsg()?;
    let graph = graph_section(&g, opts)?;
    let m = HsManifold::from_graph(g, opts.base_edge, [0, 1, 2, 3])?;
    let sections = Sections {
        graph,
        maps: maps_section(&m, opts)?,
        manifold: manifold_section(&m, opts)?,
        cusps: cusps_section(&m, opts)?,
        volume: volume_section(&m, opts)?,
        symmetry: symmetry_section(&m, opts)?,
        geodesics: geodesics_section(&m, opts)?,
    };
    let pass = sections.all().iter().all(|(_, s)| s.pass);
    Ok(VerificationReport { schema_version: SCHEMA_VERSION.into(), options: *opts, pass, sections })
}

/// Region export: layout, the 288 tetrahedra and the 39 generators.
pub fn region_export(m: &HsManifold) -> Value {
    let corner = |c: &crate::h3geom::Corner| match c {
        crate::h3geom::Corner::Interior(p) => json!([p.z.re, p.z.im, p.t]),
        crate::h3geom::Corner::Ideal(crate::h3geom::BoundaryPoint::Finite(z)) => json!([z.re, z.im, 0.0]),
        crate::h3geom::Corner::Ideal(crate::h3geom::BoundaryPoint::Infinity) => json!("infinity"),
    };
    let layout: Vec<Value> = m
        .region
        .hexagons
        .iter()
        .map(|h| {
            let c = h.center_c();
            json!({
                "center": [c.re, c.im],
                "vertices": (0..6).map(|k| { let v = h.vertex_c(k); json!([v.re, v.im]) }).collect::<Vec<_>>(),
                "labels": h.labels,
            })
        })
        .collect();
    let tets: Vec<Value> = m
        .region
        .tets
        .iter()
        .map(|t| json!({"hex": t.hex, "edge": t.edge, "half": t.half, "cone": t.cone, "corners": t.corners.iter().map(corner).collect::<Vec<_>>()}))
        .collect();
    let gens: Vec<Value> = m
        .pairings
        .generators
        .iter()
        .map(|g| json!({"kind": g.kind, "source": g.source, "target": g.target, "isometry": g.iso.to_json()}))
        .collect();
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "base_edge": m.base_edge,
        "layout": layout,
        "tetrahedra": tets,
        "generators": gens,
    });
    round_floats(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_idempotent() {
        let mut v = json!({"a": [1.0 / 3.0, 2, "x"], "b": {"c": std::f64::consts::PI}});
        round_floats(&mut v);
        let once = v.clone();
        round_floats(&mut v);
        assert_eq!(once, v);
        assert_eq!(v["a"][0], json!(0.333333333333));
    }

    #[test]
    fn sections_on_one_manifold() {
        let m = HsManifold::build((0, 1)).unwrap();
        let opts = Options::default();
        for s in [
            maps_section(&m, &opts).unwrap(),
            cusps_section(&m, &opts).unwrap(),
            volume_section(&m, &opts).unwrap(),
            geodesics_section(&m, &opts).unwrap(),
        ] {
            assert!(s.pass, "{:#}", s.values);
            assert!(s.runtime_ms.is_none());
        }
    }
}
