//! Fundamental region (12 upward and 12 downward hexagonal cones), its face pairings and
//! the checks that the identifications give a complete hyperbolic manifold.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::eisenstein::{int_lattice_hnf, Eisenstein};
use crate::error::{HsmError, Result};
use crate::graph::Graph;
use crate::h3geom::{
    c, dihedral_profile, lambda, tetra_faces, tetrahedron_volume, BoundaryPoint, Corner, Isometry, PlaneH3, PointH3,
    EXPECTED_ANGLES,
};
use crate::hsg::{build_hsg, edge_frame, sylvester_checks};
use crate::torusmaps::{build_maniplex, develop_layout, Maniplex, PlanarLayout, UnionFind, WVertex};

pub fn vertex_height() -> f64 {
    1.0 / 3f64.sqrt()
}

pub fn midpoint_height() -> f64 {
    1.0 / 2f64.sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Cone {
    Up,
    Down,
}

/// Corner order of every region tetrahedron.
pub const CORNER_NAMES: [&str; 4] = ["vertex", "midpoint", "top", "ideal"];

/// Face `X` omits corner `OMIT[X]` (faces A, B, C, D).
pub const OMIT: [usize; 4] = [3, 0, 1, 2];

pub fn face_opposite(corner: usize) -> usize {
    (corner + 1) % 4
}

#[derive(Clone, Debug, Serialize)]
pub struct Hexagon {
    pub center: Eisenstein,
    pub verts: [Eisenstein; 6],
    pub labels: [WVertex; 6],
    pub triple: [usize; 3],
}

impl Hexagon {
    pub fn center_c(&self) -> Complex64 {
        self.center.to_complex() * lambda()
    }

    pub fn vertex_c(&self, k: usize) -> Complex64 {
        self.verts[k % 6].to_complex() * lambda()
    }

    pub fn vertex_point(&self, k: usize) -> PointH3 {
        PointH3::new(self.vertex_c(k), vertex_height())
    }

    pub fn top(&self) -> PointH3 {
        PointH3::new(self.center_c(), 1.0)
    }
}

#[derive(Clone, Debug)]
pub struct Tet {
    pub hex: usize,
    pub edge: usize,
    pub half: usize,
    pub cone: Cone,
    pub corners: [Corner; 4],
    pub faces: [PlaneH3; 4],
}

pub fn tet_id(hex: usize, edge: usize, half: usize, cone: Cone) -> usize {
    ((hex * 6 + edge) * 2 + half) * 2 + if cone == Cone::Up { 0 } else { 1 }
}

#[derive(Clone, Debug)]
pub struct Region {
    pub layout: PlanarLayout,
    pub hexagons: Vec<Hexagon>,
    pub tets: Vec<Tet>,
}

impl Region {
    pub fn tet_count(&self) -> usize {
        self.tets.len()
    }
}

pub fn build_region(layout: &PlanarLayout) -> Result<Region> {
    let hexagons: Vec<Hexagon> = (0..layout.face_count())
        .map(|f| Hexagon {
            center: layout.centers[f],
            verts: std::array::from_fn(|k| layout.vertex(f, k)),
            labels: layout.labels[f],
            triple: layout.triples[f],
        })
        .collect();
    let mut tets = Vec::with_capacity(hexagons.len() * 24);
    for (h, hex) in hexagons.iter().enumerate() {
        for k in 0..6 {
            let mid = (hex.vertex_c(k) + hex.vertex_c(k + 1)) / 2.0;
            for half in 0..2 {
                for cone in [Cone::Up, Cone::Down] {
                    let ideal = match cone {
                        Cone::Up => BoundaryPoint::Infinity,
                        Cone::Down => BoundaryPoint::Finite(hex.center_c()),
                    };
                    let corners = [
                        Corner::Interior(hex.vertex_point(k + half)),
                        Corner::Interior(PointH3::new(mid, midpoint_height())),
                        Corner::Interior(hex.top()),
                        Corner::Ideal(ideal),
                    ];
                    let faces = tetra_faces(&corners)?;
                    let profile = dihedral_profile(&faces)?;
                    if profile.iter().zip(EXPECTED_ANGLES).any(|(a, e)| (a - e).abs() > 1e-9) {
                        return Err(HsmError::Congruence(format!("tetrahedron ({h},{k},{half},{cone:?}): {profile:?}")));
                    }
                    debug_assert_eq!(tets.len(), tet_id(h, k, half, cone));
                    tets.push(Tet { hex: h, edge: k, half, cone, corners, faces });
                }
            }
        }
    }
    Ok(Region { layout: layout.clone(), hexagons, tets })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WallRef {
    pub hex: usize,
    pub slot: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairingKind {
    Translation,
    Downward,
}

#[derive(Clone, Debug)]
pub struct FacePairing {
    pub source: Option<WallRef>,
    pub target: Option<WallRef>,
    pub iso: Isometry,
    pub kind: PairingKind,
}

#[derive(Clone, Debug)]
pub struct PairingGroup {
    /// Three translations followed by the 36 downward pairings.
    pub generators: Vec<FacePairing>,
    /// Directed map of every downward wall: `down_maps[h][k] = (target wall, isometry)`.
    pub down_maps: Vec<[(WallRef, Isometry); 6]>,
}

impl PairingGroup {
    pub fn isometries(&self) -> Vec<Isometry> {
        self.generators.iter().map(|g| g.iso).collect()
    }
}

/// Sends the down-cone apex `center` to infinity and the wall vertices `p1, p2` to
/// `(0, 1/√3)` and `(λ, 1/√3)`.
pub fn wall_frame(center: Complex64, p1: Complex64, p2: Complex64) -> Result<Isometry> {
    let j = Isometry::mobius(c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), -center);
    let a = j.apply(&PointH3::new(p1, vertex_height()));
    let b = j.apply(&PointH3::new(p2, vertex_height()));
    let d = b.z - a.z;
    if (d.norm() - lambda()).abs() > 1e-9 || (a.t - vertex_height()).abs() > 1e-9 {
        return Err(HsmError::Pairing("wall is not a unit-sphere hexagon wall".into()));
    }
    let alpha = Complex64::new(lambda(), 0.0) / d;
    Ok(Isometry::rigid(alpha, -alpha * a.z).compose(&j))
}

/// The downward wall glued to `(h, k)`: the crosses partner of its `W`-edge in the small
/// map of `h`'s row triple.
pub fn partner_wall(m: &Maniplex, h: usize, k: usize) -> Result<WallRef> {
    let big = &m.big_map;
    let (x, y) = big.slot_ends(h, k);
    let (s, g) = m.hexagon_membership[h];
    let small = &m.small_maps[s];
    let ks = small.faces[g]
        .contains_edge(x, y)
        .ok_or_else(|| HsmError::Pairing("edge missing from small-map hexagon".into()))?;
    let (g2, k2) = small.slot_pairing[g][ks];
    let (u, v) = small.slot_ends(g2, k2);
    if !((u == (x.0, y.1) && v == (y.0, x.1)) || (u == (y.0, x.1) && v == (x.0, y.1))) {
        return Err(HsmError::Pairing(format!("{u:?}-{v:?} is not the crosses partner of {x:?}-{y:?}")));
    }
    let h2 = m
        .hexagon_membership
        .iter()
        .position(|&p| p == (s, g2))
        .ok_or_else(|| HsmError::Pairing("partner hexagon not in the big map".into()))?;
    let k2 = big.faces[h2].contains_edge(u, v).expect("same hexagon");
    Ok(WallRef { hex: h2, slot: k2 })
}

pub fn translation_generators() -> [Isometry; 3] {
    let l = lambda();
    let w = Eisenstein::OMEGA.to_complex();
    [
        Isometry::translation(c(6.0 * l, 0.0)),
        Isometry::translation(w * (6.0 * l)),
        Isometry::translation((w + 1.0) * (6.0 * l)),
    ]
}

pub fn build_face_pairings(region: &Region, maniplex: &Maniplex) -> Result<PairingGroup> {
    let hx = &region.hexagons;
    let mut down_maps = Vec::with_capacity(hx.len());
    for h in 0..hx.len() {
        let mut row = Vec::with_capacity(6);
        for k in 0..6 {
            let t = partner_wall(maniplex, h, k)?;
            let (p1, p2) = (hx[h].vertex_c(k), hx[h].vertex_c(k + 1));
            let (ca, cb) = (hx[h].labels[k].1, hx[h].labels[(k + 1) % 6].1);
            // target points matched by column
            let th = &hx[t.hex];
            let cols = [th.labels[t.slot].1, th.labels[(t.slot + 1) % 6].1];
            let (q1, q2) = if cols == [ca, cb] {
                (th.vertex_c(t.slot), th.vertex_c(t.slot + 1))
            } else if cols == [cb, ca] {
                (th.vertex_c(t.slot + 1), th.vertex_c(t.slot))
            } else {
                return Err(HsmError::Pairing(format!("column labels of wall ({h},{k}) and {t:?} differ")));
            };
            let fs = wall_frame(hx[h].center_c(), p1, p2)?;
            let ft = wall_frame(th.center_c(), q1, q2)?;
            row.push((t, ft.inverse().compose(&fs)));
        }
        down_maps.push(<[(WallRef, Isometry); 6]>::try_from(row).expect("six walls"));
    }
    let mut generators: Vec<FacePairing> = translation_generators()
        .into_iter()
        .map(|iso| FacePairing { source: None, target: None, iso, kind: PairingKind::Translation })
        .collect();
    for h in 0..hx.len() {
        for k in 0..6 {
            let (t, iso) = down_maps[h][k];
            let s = WallRef { hex: h, slot: k };
            if s < t {
                generators.push(FacePairing { source: Some(s), target: Some(t), iso, kind: PairingKind::Downward });
            }
        }
    }
    Ok(PairingGroup { generators, down_maps })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub generator_count: usize,
    pub downward_count: usize,
    pub walls_matched: usize,
    pub inverse_pairs: bool,
    pub orientation_preserving: bool,
    pub interior_to_exterior: bool,
    pub max_error: f64,
    pub failures: Vec<String>,
}

impl PairingReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn down_wall_points(region: &Region, w: WallRef) -> [Corner; 3] {
    let h = &region.hexagons[w.hex];
    [
        Corner::Interior(h.vertex_point(w.slot)),
        Corner::Interior(h.vertex_point(w.slot + 1)),
        Corner::Ideal(BoundaryPoint::Finite(h.center_c())),
    ]
}

fn corner_error(a: &Corner, b: &Corner) -> f64 {
    match (a, b) {
        (Corner::Interior(p), Corner::Interior(q)) => (p.z - q.z).norm() + (p.t - q.t).abs(),
        (Corner::Ideal(BoundaryPoint::Finite(p)), Corner::Ideal(BoundaryPoint::Finite(q))) => (p - q).norm(),
        (Corner::Ideal(BoundaryPoint::Infinity), Corner::Ideal(BoundaryPoint::Infinity)) => 0.0,
        _ => f64::INFINITY,
    }
}

/// Wall plane of a downward wall, oriented with its cone inside.
fn down_wall_plane(region: &Region, w: WallRef) -> PlaneH3 {
    region.tets[tet_id(w.hex, w.slot, 0, Cone::Down)].faces[3]
}

pub fn verify_pairings(pg: &PairingGroup, region: &Region) -> PairingReport {
    let mut failures = Vec::new();
    let mut max_error: f64 = 0.0;
    let mut matched = 0;
    let mut inverse_pairs = true;
    let mut interior_to_exterior = true;
    for (h, row) in pg.down_maps.iter().enumerate() {
        for (k, &(t, iso)) in row.iter().enumerate() {
            let s = WallRef { hex: h, slot: k };
            let src = down_wall_points(region, s);
            let dst = down_wall_points(region, t);
            let imgs: Vec<Corner> = src.iter().map(|p| iso.apply_corner(p)).collect();
            // vertices may swap order; the apex must go to the apex
            let direct = corner_error(&imgs[0], &dst[0]).max(corner_error(&imgs[1], &dst[1]));
            let swapped = corner_error(&imgs[0], &dst[1]).max(corner_error(&imgs[1], &dst[0]));
            let err = direct.min(swapped).max(corner_error(&imgs[2], &dst[2]));
            max_error = max_error.max(err);
            if err < 1e-9 {
                matched += 1;
            } else {
                failures.push(format!("wall {s:?} -> {t:?} misses by {err:e}"));
            }
            let (back, inv) = pg.down_maps[t.hex][t.slot];
            if back != s || !inv.compose(&iso).is_identity(1e-9) {
                inverse_pairs = false;
                failures.push(format!("wall {t:?} does not map back to {s:?}"));
            }
            let moved = down_wall_plane(region, s).transform(&iso);
            if !moved.approx_eq(&down_wall_plane(region, t).flipped(), 1e-8) {
                interior_to_exterior = false;
                failures.push(format!("wall {s:?} pairing keeps its cone on the same side"));
            }
        }
    }
    let orientation_preserving = pg.generators.iter().all(|g| g.iso.orientation == 1);
    if !orientation_preserving {
        failures.push("orientation-reversing generator".into());
    }
    PairingReport {
        generator_count: pg.generators.len(),
        downward_count: pg.generators.iter().filter(|g| g.kind == PairingKind::Downward).count(),
        walls_matched: matched,
        inverse_pairs,
        orientation_preserving,
        interior_to_exterior,
        max_error,
        failures,
    }
}

/// Neighbour across a face: `psi` places `tet` next to the current tetrahedron.
#[derive(Clone, Copy, Debug)]
pub struct Gluing {
    pub tet: usize,
    pub psi: Isometry,
}

/// Face-neighbour table of the 288 tetrahedra, indexed by face A, B, C, D.
pub fn build_gluings(region: &Region, pg: &PairingGroup) -> Result<Vec<[Gluing; 4]>> {
    let id = Isometry::identity();
    let l = lambda();
    let mut out = Vec::with_capacity(region.tets.len());
    for t in &region.tets {
        let (h, k, j, cone) = (t.hex, t.edge, t.half, t.cone);
        let other_cone = if cone == Cone::Up { Cone::Down } else { Cone::Up };
        let a = Gluing { tet: tet_id(h, k, j, other_cone), psi: id };
        let b = Gluing { tet: tet_id(h, k, 1 - j, cone), psi: id };
        let cg = if j == 0 {
            Gluing { tet: tet_id(h, (k + 5) % 6, 1, cone), psi: id }
        } else {
            Gluing { tet: tet_id(h, (k + 1) % 6, 0, cone), psi: id }
        };
        let d = match cone {
            Cone::Up => {
                let (g, kk, tau) = region.layout.neighbor(h, k);
                Gluing { tet: tet_id(g, kk, 1 - j, Cone::Up), psi: Isometry::translation(tau.to_complex() * l) }
            }
            Cone::Down => {
                let (w, iso) = pg.down_maps[h][k];
                let v = iso.apply(&region.hexagons[h].vertex_point(k + j));
                let j2 = (0..2)
                    .find(|&jj| region.hexagons[w.hex].vertex_point(w.slot + jj).approx_eq(&v, 1e-9))
                    .ok_or_else(|| HsmError::Gluing(format!("wall ({h},{k}) vertex lost")))?;
                Gluing { tet: tet_id(w.hex, w.slot, j2, Cone::Down), psi: iso.inverse() }
            }
        };
        out.push([a, b, cg, d]);
    }
    // corner types are preserved and the table is an involution
    for (t, row) in out.iter().enumerate() {
        for (x, g) in row.iter().enumerate() {
            for i in (0..4).filter(|&i| i != OMIT[x]) {
                let img = g.psi.apply_corner(&region.tets[g.tet].corners[i]);
                if !img.approx_eq(&region.tets[t].corners[i], 1e-9) {
                    return Err(HsmError::Gluing(format!("tet {t} face {x}: corner {i} mismatch")));
                }
            }
            let back = out[g.tet][x];
            if back.tet != t || !back.psi.compose(&g.psi).is_identity(1e-9) || g.tet == t {
                return Err(HsmError::Gluing(format!("tet {t} face {x}: gluing is not an involution")));
            }
        }
    }
    Ok(out)
}

/// Everything assembled from one base edge of the graph.
#[derive(Clone, Debug)]
pub struct HsManifold {
    pub graph: Graph,
    pub base_edge: (usize, usize),
    pub maniplex: Maniplex,
    pub region: Region,
    pub pairings: PairingGroup,
    pub gluings: Vec<[Gluing; 4]>,
}

impl HsManifold {
    pub fn build(base_edge: (usize, usize)) -> Result<HsManifold> {
        let graph = build_hsg()?;
        HsManifold::from_graph(graph, base_edge, [0, 1, 2, 3])
    }

    pub fn from_graph(graph: Graph, base_edge: (usize, usize), rows4: [usize; 4]) -> Result<HsManifold> {
        let frame = edge_frame(&graph, base_edge)?;
        let syl = sylvester_checks(&graph, &frame)?;
        let maniplex = build_maniplex(&syl, rows4)?;
        let layout = develop_layout(&maniplex.big_map)?;
        let region = build_region(&layout)?;
        let pairings = build_face_pairings(&region, &maniplex)?;
        let gluings = build_gluings(&region, &pairings)?;
        Ok(HsManifold { graph, base_edge, maniplex, region, pairings, gluings })
    }

    pub fn neighbor(&self, t: usize, face: usize) -> usize {
        self.gluings[t][face].tet
    }
}

const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn edge_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    TET_EDGES.iter().position(|&e| e == (i, j)).expect("tetrahedron edge")
}

/// Dihedral angle of a region tetrahedron at its edge `(i, j)`.
pub fn edge_angle(i: usize, j: usize) -> f64 {
    let others: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
    let (f1, f2) = (face_opposite(others[0]), face_opposite(others[1]));
    let (f1, f2) = if f1 < f2 { (f1, f2) } else { (f2, f1) };
    let idx = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].iter().position(|&p| p == (f1, f2)).expect("pair");
    EXPECTED_ANGLES[idx]
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FanProfile {
    pub edge: (String, String),
    pub cone: Option<Cone>,
    pub fan_size: usize,
    pub angle: f64,
    pub classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeCycleReport {
    pub classes: usize,
    pub max_angle_error: f64,
    pub all_two_pi: bool,
    pub returns_identity: bool,
    pub profiles: Vec<FanProfile>,
    pub hexagon_edge_fans: (usize, f64),
    pub below_vertex_fans: (usize, f64),
}

impl EdgeCycleReport {
    pub fn ok(&self) -> bool {
        self.all_two_pi
            && self.returns_identity
            && self.hexagon_edge_fans.0 == 8
            && (self.hexagon_edge_fans.1 - PI / 4.0).abs() < 1e-12
            && self.below_vertex_fans.0 == 6
            && (self.below_vertex_fans.1 - PI / 3.0).abs() < 1e-12
    }
}

pub fn edge_cycle_check(m: &HsManifold) -> EdgeCycleReport {
    let n = m.region.tets.len();
    let mut uf = UnionFind::new(n * 6);
    for t in 0..n {
        for (x, g) in m.gluings[t].iter().enumerate() {
            for (e, &(i, j)) in TET_EDGES.iter().enumerate() {
                if i != OMIT[x] && j != OMIT[x] {
                    uf.union(t * 6 + e, g.tet * 6 + e);
                }
            }
        }
    }
    let classes = uf.classes();
    let mut max_err: f64 = 0.0;
    let mut returns_identity = true;
    let mut profiles: BTreeMap<(usize, Option<Cone>, usize), usize> = BTreeMap::new();
    for class in &classes {
        let e = class[0] % 6;
        let (i, j) = TET_EDGES[e];
        let sum: f64 = class.iter().map(|&x| edge_angle(TET_EDGES[x % 6].0, TET_EDGES[x % 6].1)).sum();
        max_err = max_err.max((sum - TAU).abs());
        let fan = fan_walk(m, class[0] / 6, i, j);
        if fan.map(|(size, ret)| size != class.len() || !ret.is_identity(1e-9)).unwrap_or(true) {
            returns_identity = false;
        }
        let cones: BTreeSet<Cone> = class.iter().map(|&x| m.region.tets[x / 6].cone).collect();
        let cone = if cones.len() == 1 { cones.into_iter().next() } else { None };
        *profiles.entry((e, cone, class.len())).or_default() += 1;
    }
    let profiles: Vec<FanProfile> = profiles
        .into_iter()
        .map(|((e, cone, size), count)| {
            let (i, j) = TET_EDGES[e];
            FanProfile {
                edge: (CORNER_NAMES[i].to_string(), CORNER_NAMES[j].to_string()),
                cone,
                fan_size: size,
                angle: edge_angle(i, j),
                classes: count,
            }
        })
        .collect();
    let pick = |i: usize, j: usize, cone: Option<Cone>| {
        profiles
            .iter()
            .find(|p| p.edge == (CORNER_NAMES[i].to_string(), CORNER_NAMES[j].to_string()) && (cone.is_none() || p.cone == cone))
            .map(|p| (p.fan_size, p.angle))
            .unwrap_or((0, 0.0))
    };
    EdgeCycleReport {
        classes: classes.len(),
        max_angle_error: max_err,
        all_two_pi: max_err < 1e-9,
        returns_identity,
        hexagon_edge_fans: pick(0, 1, None),
        below_vertex_fans: pick(0, 3, Some(Cone::Down)),
        profiles,
    }
}

/// Walks the fan of tetrahedra around edge `(i, j)` of `t`; returns the fan size and the
/// composed return isometry.
pub fn fan_walk(m: &HsManifold, t: usize, i: usize, j: usize) -> Option<(usize, Isometry)> {
    let others: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
    let faces = [face_opposite(others[0]), face_opposite(others[1])];
    let mut cur = t;
    let mut acc = Isometry::identity();
    let mut steps = 0;
    loop {
        let g = m.gluings[cur][faces[steps % 2]];
        acc = acc.compose(&g.psi);
        cur = g.tet;
        steps += 1;
        if cur == t && steps % 2 == 0 {
            return Some((steps, acc));
        }
        if steps > 4 * m.region.tets.len() {
            return None;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexClass {
    pub labels: Vec<WVertex>,
    pub tets: usize,
    pub link_vertices: usize,
    pub link_edges: usize,
    pub link_faces: usize,
    pub link_euler: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexLinkReport {
    pub classes: Vec<VertexClass>,
}

impl VertexLinkReport {
    pub fn ok(&self) -> bool {
        self.classes.len() == 6
            && self.classes.iter().all(|c| {
                let cols: BTreeSet<usize> = c.labels.iter().map(|l| l.1).collect();
                c.labels.len() == 4 && cols.len() == 1 && c.tets == 48 && c.link_euler == 2
            })
    }
}

pub fn vertex_link_check(m: &HsManifold) -> VertexLinkReport {
    let n = m.region.tets.len();
    let mut corner_uf = UnionFind::new(n);
    let mut edge_uf = UnionFind::new(n * 6);
    for t in 0..n {
        for (x, g) in m.gluings[t].iter().enumerate() {
            if OMIT[x] != 0 {
                corner_uf.union(t, g.tet);
            }
            for (e, &(i, j)) in TET_EDGES.iter().enumerate() {
                if i != OMIT[x] && j != OMIT[x] {
                    edge_uf.union(t * 6 + e, g.tet * 6 + e);
                }
            }
        }
    }
    let mut classes = Vec::new();
    for class in corner_uf.classes() {
        let labels: BTreeSet<WVertex> = class
            .iter()
            .map(|&t| {
                let tet = &m.region.tets[t];
                m.region.hexagons[tet.hex].labels[(tet.edge + tet.half) % 6]
            })
            .collect();
        let link_vertices: BTreeSet<usize> = class
            .iter()
            .flat_map(|&t| [1, 2, 3].map(|other| edge_uf.find(t * 6 + edge_index(0, other))))
            .collect();
        // each tet contributes 3 faces through the vertex; glued in pairs
        let link_faces = class.len();
        let link_edges = class.len() * 3 / 2;
        classes.push(VertexClass {
            labels: labels.into_iter().collect(),
            tets: class.len(),
            link_vertices: link_vertices.len(),
            link_edges,
            link_faces,
            link_euler: link_vertices.len() as i64 - link_edges as i64 + link_faces as i64,
        });
    }
    VertexLinkReport { classes }
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspClass {
    /// Hexagons whose down-cone apex is in the class; empty for the cusp at infinity.
    pub apexes: Vec<usize>,
    pub at_infinity: bool,
    pub tets: usize,
    pub lattice: [(f64, f64); 2],
    pub shape: (f64, f64),
    pub horoball_volume: f64,
    pub holonomy_generators: usize,
    pub all_parabolic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspData {
    pub classes: Vec<CuspClass>,
}

impl CuspData {
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(|c| if c.at_infinity { 1 } else { c.apexes.len() }).collect();
        s.sort_unstable();
        s
    }

    pub fn big(&self) -> Option<&CuspClass> {
        self.classes.iter().find(|c| c.at_infinity)
    }

    pub fn volume_ratio(&self) -> f64 {
        let big = self.big().map(|c| c.horoball_volume).unwrap_or(0.0);
        let small = self.classes.iter().find(|c| !c.at_infinity).map(|c| c.horoball_volume).unwrap_or(f64::NAN);
        big / small
    }

    pub fn ok(&self) -> bool {
        let hex = Complex64::from_polar(1.0, PI / 3.0);
        self.class_sizes() == vec![1, 3, 3, 3, 3]
            && self.classes.iter().all(|c| c.all_parabolic && (c64(c.shape) - hex).norm() < 1e-9)
            && (self.volume_ratio() - 4.0).abs() < 1e-9
    }
}

fn c64(p: (f64, f64)) -> Complex64 {
    c(p.0, p.1)
}

/// Basis of the lattice generated by `vs`, Lagrange-reduced.
pub fn lattice_basis(vs: &[Complex64]) -> Option<(Complex64, Complex64)> {
    let nonzero: Vec<Complex64> = vs.iter().copied().filter(|v| v.norm() > 1e-9).collect();
    let b1 = *nonzero.iter().min_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite"))?;
    let b2 = *nonzero
        .iter()
        .filter(|v| (b1.conj() * *v).im.abs() > 1e-9 * b1.norm() * v.norm())
        .min_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite"))?;
    // solve v = x b1 + y b2 with 2D cross products
    let cross = |a: Complex64, b: Complex64| (a.conj() * b).im;
    let det = cross(b1, b2);
    let coords = |v: Complex64| (cross(v, b2) / det, cross(b1, v) / det);
    let denom = (1..=12).find(|&d| {
        nonzero.iter().all(|&v| {
            let (x, y) = coords(v);
            ((x * d as f64) - (x * d as f64).round()).abs() < 1e-6 && ((y * d as f64) - (y * d as f64).round()).abs() < 1e-6
        })
    })?;
    let ints: Vec<[i64; 2]> = nonzero
        .iter()
        .map(|&v| {
            let (x, y) = coords(v);
            [(x * denom as f64).round() as i64, (y * denom as f64).round() as i64]
        })
        .collect();
    let [[p, q], [_, r]] = int_lattice_hnf(&ints)?;
    let d = denom as f64;
    let mut e1 = (b1 * p as f64 + b2 * q as f64) / d;
    let mut e2 = b2 * r as f64 / d;
    // Lagrange reduction; ties stop the loop
    loop {
        if e2.norm() < e1.norm() {
            std::mem::swap(&mut e1, &mut e2);
        }
        let mu = ((e2 * e1.conj()).re / e1.norm_sqr()).round();
        let next = e2 - e1 * mu;
        if mu == 0.0 || next.norm() >= e2.norm() - 1e-12 {
            break;
        }
        e2 = next;
    }
    Some((e1, e2))
}

/// Modulus of the lattice `<e1, e2>` in the standard fundamental domain, `Re` in `(-1/2, 1/2]`.
pub fn shape_modulus(e1: Complex64, e2: Complex64) -> Complex64 {
    let mut tau = e2 / e1;
    if tau.im < 0.0 {
        tau = tau.conj();
    }
    for _ in 0..64 {
        tau.re -= tau.re.round();
        if tau.re <= -0.5 + 1e-9 {
            tau.re += 1.0;
        }
        if tau.norm() < 1.0 - 1e-9 {
            tau = -tau.inv();
        } else {
            break;
        }
    }
    tau
}

pub fn cusp_analysis(m: &HsManifold) -> Result<CuspData> {
    let n = m.region.tets.len();
    let mut uf = UnionFind::new(n);
    for t in 0..n {
        for (x, g) in m.gluings[t].iter().enumerate() {
            if OMIT[x] != 3 {
                uf.union(t, g.tet);
            }
        }
    }
    let mut out = Vec::new();
    for class in uf.classes() {
        let at_infinity = class.iter().all(|&t| m.region.tets[t].cone == Cone::Up);
        if !at_infinity && class.iter().any(|&t| m.region.tets[t].cone == Cone::Up) {
            return Err(HsmError::Cusp("cusp class mixes cones".into()));
        }
        let apexes: BTreeSet<usize> =
            if at_infinity { BTreeSet::new() } else { class.iter().map(|&t| m.region.tets[t].hex).collect() };
        let start = class[0];
        let p0 = if at_infinity {
            Isometry::identity()
        } else {
            let h = &m.region.hexagons[m.region.tets[start].hex];
            Isometry::mobius(c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), -h.center_c())
        };
        let mut placed: HashMap<usize, Isometry> = HashMap::from([(start, p0)]);
        let mut queue = VecDeque::from([start]);
        let mut holonomy = Vec::new();
        let mut all_parabolic = true;
        while let Some(t) = queue.pop_front() {
            let pt = placed[&t];
            for (x, g) in m.gluings[t].iter().enumerate() {
                if OMIT[x] == 3 {
                    continue;
                }
                let cand = pt.compose(&g.psi);
                match placed.get(&g.tet) {
                    None => {
                        placed.insert(g.tet, cand);
                        queue.push_back(g.tet);
                    }
                    Some(prev) => {
                        let hol = cand.compose(&prev.inverse());
                        if hol.is_identity(1e-9) {
                            continue;
                        }
                        let [a, _, cc, d] = hol.m;
                        let translation = cc.norm() < 1e-9 && (a - d).norm() < 1e-9;
                        if !(translation && hol.is_parabolic(1e-9)) {
                            all_parabolic = false;
                        }
                        holonomy.push(hol.m[1] / hol.m[3]);
                    }
                }
            }
        }
        let (e1, e2) =
            lattice_basis(&holonomy).ok_or_else(|| HsmError::Cusp("cusp holonomy has rank < 2".into()))?;
        let area = (e1.conj() * e2).im.abs();
        let shape = shape_modulus(e1, e2);
        out.push(CuspClass {
            apexes: apexes.into_iter().collect(),
            at_infinity,
            tets: class.len(),
            lattice: [(e1.re, e1.im), (e2.re, e2.im)],
            shape: (shape.re, shape.im),
            horoball_volume: area / 2.0,
            holonomy_generators: holonomy.len(),
            all_parabolic,
        });
    }
    out.sort_by_key(|c| (!c.at_infinity, c.apexes.clone()));
    Ok(CuspData { classes: out })
}

pub fn total_volume(region: &Region) -> f64 {
    region.tets.len() as f64 * tetrahedron_volume()
}

/// A letter of a word: generator index and whether it is inverted.
pub type Letter = (usize, bool);

pub fn eval_word(gens: &[Isometry], word: &[Letter]) -> Isometry {
    word.iter().fold(Isometry::identity(), |acc, &(g, inv)| {
        acc.compose(&if inv { gens[g].inverse() } else { gens[g] })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub generator: usize,
    pub word: Vec<Letter>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub kept: Vec<usize>,
    pub witnesses: Vec<Witness>,
    pub max_word_length: usize,
    pub covered_all: bool,
}

const KEY_GRID: f64 = 1e-6;

/// Words of length at most `len` in `kept` and their inverses, deduplicated by value.
fn word_table(gens: &[Isometry], kept: &[usize], len: usize) -> HashMap<[i64; 9], (Isometry, Vec<Letter>)> {
    let mut table = HashMap::new();
    let id = Isometry::identity();
    table.insert(id.key(KEY_GRID), (id, Vec::new()));
    let mut frontier = vec![(id, Vec::<Letter>::new())];
    for _ in 0..len {
        let mut next = Vec::new();
        for (w, word) in &frontier {
            for &g in kept {
                for inv in [false, true] {
                    let letter = if inv { gens[g].inverse() } else { gens[g] };
                    let x = w.compose(&letter);
                    let k = x.key(KEY_GRID);
                    if let std::collections::hash_map::Entry::Vacant(e) = table.entry(k) {
                        let mut nw = word.clone();
                        nw.push((g, inv));
                        e.insert((x, nw.clone()));
                        next.push((x, nw));
                    }
                }
            }
        }
        frontier = next;
    }
    table
}

fn find_word(
    gens: &[Isometry],
    target: &Isometry,
    left: &HashMap<[i64; 9], (Isometry, Vec<Letter>)>,
    right: &HashMap<[i64; 9], (Isometry, Vec<Letter>)>,
) -> Option<Vec<Letter>> {
    // target = u v  <=>  u = target v^{-1}
    let mut candidates: Vec<&(Isometry, Vec<Letter>)> = right.values().collect();
    candidates.sort_by_key(|(_, w)| (w.len(), w.clone()));
    for (v, vw) in candidates {
        let u = target.compose(&v.inverse());
        if let Some((uu, uw)) = left.get(&u.key(KEY_GRID)) {
            if uu.approx_eq(&u, 1e-8) {
                let mut w = uw.clone();
                w.extend(vw.iter().copied());
                if eval_word(gens, &w).approx_eq(target, 1e-8) {
                    return Some(w);
                }
            }
        }
    }
    None
}

fn coverage(gens: &[Isometry], kept: &[usize], max_len: usize) -> Vec<Option<Vec<Letter>>> {
    let left = word_table(gens, kept, max_len.div_ceil(2));
    let right = word_table(gens, kept, max_len / 2);
    (0..gens.len())
        .map(|g| if kept.contains(&g) { Some(vec![(g, false)]) } else { find_word(gens, &gens[g], &left, &right) })
        .collect()
}

/// Greedy search for a small generating subset: starts from two translations, repeatedly
/// adds the downward pairing that makes the most generators expressible, then drops any
/// generator that is no longer needed.
pub fn generator_reduction(pg: &PairingGroup, max_word_length: usize) -> Reduction {
    let gens = pg.isometries();
    let mut kept = vec![0usize, 1];
    let count = |kept: &[usize]| coverage(&gens, kept, max_word_length).iter().filter(|w| w.is_some()).count();
    let mut covered = count(&kept);
    // cheap greedy with short words, then close the gap with full-length words
    while covered < gens.len() {
        let short = max_word_length.min(4);
        let best = (3..gens.len())
            .filter(|g| !kept.contains(g))
            .map(|g| {
                let mut k = kept.clone();
                k.push(g);
                let c = coverage(&gens, &k, short).iter().filter(|w| w.is_some()).count();
                (c, std::cmp::Reverse(g))
            })
            .max();
        let Some((_, std::cmp::Reverse(g))) = best else { break };
        kept.push(g);
        kept.sort_unstable();
        covered = count(&kept);
    }
    // prune, latest additions first
    for g in kept.clone().into_iter().rev() {
        if g < 2 {
            continue;
        }
        let trial: Vec<usize> = kept.iter().copied().filter(|&x| x != g).collect();
        if count(&trial) == gens.len() {
            kept = trial;
        }
    }
    let cov = coverage(&gens, &kept, max_word_length);
    let covered_all = cov.iter().all(|w| w.is_some());
    let witnesses = cov
        .into_iter()
        .enumerate()
        .filter(|(g, _)| !kept.contains(g))
        .filter_map(|(g, w)| w.map(|word| Witness { generator: g, word }))
        .collect();
    Reduction { kept, witnesses, max_word_length, covered_all }
}

/// Re-evaluates a witness and checks that it maps the generator's source wall to its target.
pub fn witness_maps_wall(pg: &PairingGroup, region: &Region, w: &Witness) -> bool {
    let gens = pg.isometries();
    let g = eval_word(&gens, &w.word);
    let fp = &pg.generators[w.generator];
    match (fp.source, fp.target) {
        (Some(s), Some(t)) => {
            let src = down_wall_points(region, s);
            let dst = down_wall_points(region, t);
            src.iter().all(|p| {
                let q = g.apply_corner(p);
                dst.iter().any(|d| q.approx_eq(d, 1e-8))
            })
        }
        _ => {
            let p = PointH3::new(c(0.1, 0.2), 1.0);
            g.apply(&p).approx_eq(&fp.iso.apply(&p), 1e-8)
        }
    }
}

/// The pairing from the worked example, written with `ω = e^{2πi/3} = w - 1`:
/// translate by `-3λ(ω+2)`, invert in the unit sphere over `-3λ`, invert in the unit
/// sphere over `λ(ω-1)`.
pub fn worked_example_isometry() -> Isometry {
    let l = lambda();
    let omega = Eisenstein::OMEGA.to_complex() - 1.0;
    let t = Isometry::translation(-(omega + 2.0) * (3.0 * l));
    let f = Isometry::inversion(c(-3.0 * l, 0.0), 1.0);
    let cc = Isometry::inversion((omega - 1.0) * l, 1.0);
    cc.compose(&f).compose(&t)
}

/// Source wall of the worked example in lattice units: `4w`, `3w + 1`, apex `3w`.
pub const WORKED_SOURCE: [Eisenstein; 3] = [Eisenstein::new(0, 4), Eisenstein::new(1, 3), Eisenstein::new(0, 3)];

/// Symmetry of the hexagonal tiling, `z -> w^rot . s(z) + shift` in lattice units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TilingSymmetry {
    pub rot: i64,
    pub reflect: bool,
    pub shift: Eisenstein,
}

impl TilingSymmetry {
    pub fn apply(&self, z: Eisenstein) -> Eisenstein {
        let z = if self.reflect { z.conj() } else { z };
        z.rotate(self.rot) + self.shift
    }

    pub fn isometry(&self) -> Isometry {
        let u = Eisenstein::unit(self.rot).to_complex();
        let s = self.shift.to_complex() * lambda();
        if self.reflect {
            Isometry::anti_mobius(u, s, c(0.0, 0.0), c(1.0, 0.0))
        } else {
            Isometry::rigid(u, s)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WorkedExampleMatch {
    pub source: WallRef,
    pub target: WallRef,
    pub symmetry: TilingSymmetry,
    pub period_shift: Eisenstein,
    pub error: f64,
}

/// Looks for a downward wall map that becomes the worked example after a symmetry of the
/// tiling and a period translation of the target.
pub fn match_worked_example(pg: &PairingGroup, region: &Region) -> Option<WorkedExampleMatch> {
    let example = worked_example_isometry();
    let [w1, w2, wc] = WORKED_SOURCE;
    let mut best: Option<WorkedExampleMatch> = None;
    for (h, row) in pg.down_maps.iter().enumerate() {
        for (k, &(t, iso)) in row.iter().enumerate() {
            let hex = &region.hexagons[h];
            let (p1, p2, ch) = (hex.verts[k], hex.verts[(k + 1) % 6], hex.center);
            for rot in 0..6 {
                for reflect in [false, true] {
                    let base = TilingSymmetry { rot, reflect, shift: Eisenstein::ZERO };
                    let shift = wc - base.apply(ch);
                    let s = TilingSymmetry { shift, ..base };
                    let ok = (s.apply(p1) == w1 && s.apply(p2) == w2) || (s.apply(p1) == w2 && s.apply(p2) == w1);
                    if !ok {
                        continue;
                    }
                    let si = s.isometry();
                    let conj = si.compose(&iso).compose(&si.inverse());
                    // period translation of the target apex
                    let target_apex = s.apply(region.hexagons[t.hex].center);
                    let want = Eisenstein::new(-2, 1);
                    let tau = want - target_apex;
                    if tau.a.rem_euclid(6) != 0 || tau.b.rem_euclid(6) != 0 {
                        continue;
                    }
                    let g = Isometry::translation(tau.to_complex() * lambda()).compose(&conj);
                    let err = (0..4)
                        .map(|i| (g.m[i] - example.m[i]).norm())
                        .fold(0.0f64, f64::max)
                        .min((0..4).map(|i| (g.m[i] + example.m[i]).norm()).fold(0.0f64, f64::max));
                    if best.as_ref().is_none_or(|b| err < b.error) {
                        best = Some(WorkedExampleMatch {
                            source: WallRef { hex: h, slot: k },
                            target: t,
                            symmetry: s,
                            period_shift: tau,
                            error: err,
                        });
                    }
                }
            }
        }
    }
    best
}

/// Factorisation of a downward pairing as inversion ∘ inversion ∘ (rotation by π) ∘ translation.
#[derive(Clone, Debug, Serialize)]
pub struct PairingForm {
    pub generator: usize,
    /// Centre of the intermediate hexagon, lattice units.
    pub intermediate: Option<Eisenstein>,
    /// `+1` for translation form, `-1` when a rotation by π is needed.
    pub alpha: i8,
}

fn to_lattice(z: Complex64) -> Option<Eisenstein> {
    let z = z / lambda();
    let b = z.im / (3f64.sqrt() / 2.0);
    let a = z.re - b / 2.0;
    let (ar, br) = (a.round(), b.round());
    if (a - ar).abs() < 1e-7 && (b - br).abs() < 1e-7 {
        Some(Eisenstein::new(ar as i64, br as i64))
    } else {
        None
    }
}

pub fn pairing_forms(pg: &PairingGroup, region: &Region) -> Vec<PairingForm> {
    let mut out = Vec::new();
    for (i, fp) in pg.generators.iter().enumerate() {
        let Some(t) = fp.target else { continue };
        let c2 = region.hexagons[t.hex].center_c();
        let inv2 = Isometry::inversion(c2, 1.0);
        let y = match fp.iso.apply_boundary(&BoundaryPoint::Infinity) {
            BoundaryPoint::Finite(z) => inv2.apply_boundary(&BoundaryPoint::Finite(z)),
            BoundaryPoint::Infinity => BoundaryPoint::Finite(c2),
        };
        let BoundaryPoint::Finite(y) = y else {
            out.push(PairingForm { generator: i, intermediate: None, alpha: 0 });
            continue;
        };
        let u = Isometry::inversion(y, 1.0).compose(&inv2).compose(&fp.iso);
        let [a, _, cc, d] = u.m;
        let alpha = if cc.norm() > 1e-9 {
            0
        } else {
            let r = a / d;
            if (r - 1.0).norm() < 1e-9 {
                1
            } else if (r + 1.0).norm() < 1e-9 {
                -1
            } else {
                0
            }
        };
        let lat = to_lattice(y).filter(|e| e.color() == 0);
        out.push(PairingForm { generator: i, intermediate: lat, alpha });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn manifold() -> &'static HsManifold {
        static M: OnceLock<HsManifold> = OnceLock::new();
        M.get_or_init(|| HsManifold::build((0, 1)).unwrap())
    }

    #[test]
    fn region_shape() {
        let m = manifold();
        assert_eq!(m.region.tets.len(), 288);
        let h = &m.region.hexagons[0];
        for k in 0..6 {
            let v = h.vertex_point(k);
            assert!(((v.z - h.center_c()).norm() - lambda()).abs() < 1e-12);
        }
        assert!((total_volume(&m.region) - 81.1953).abs() < 5e-4);
    }

    #[test]
    fn pairings_verify() {
        let m = manifold();
        let r = verify_pairings(&m.pairings, &m.region);
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.generator_count, 39);
        assert_eq!(r.walls_matched, 72);
    }

    #[test]
    fn translations_relation() {
        let [a, b, ab] = translation_generators();
        assert!(a.compose(&b).approx_eq(&ab, 1e-12));
    }

    #[test]
    fn edge_cycles() {
        let r = edge_cycle_check(manifold());
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn vertex_links() {
        let r = vertex_link_check(manifold());
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn cusps() {
        let d = cusp_analysis(manifold()).unwrap();
        assert!(d.ok(), "{d:?}");
        assert!((d.big().unwrap().horoball_volume - 6.0 * 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn lattice_basis_finds_generators() {
        let w = Complex64::from_polar(1.0, PI / 3.0);
        let vs = [c(2.0, 0.0), w * 3.0, w * 2.0 + 4.0, c(1.0, 0.0) - w];
        let (e1, e2) = lattice_basis(&vs).unwrap();
        assert!((e1.norm() - 1.0).abs() < 1e-9 && (e2.norm() - 1.0).abs() < 1e-9);
        assert!((shape_modulus(e1, e2) - w).norm() < 1e-9);
    }

    #[test]
    fn worked_example_and_forms() {
        let m = manifold();
        let hit = match_worked_example(&m.pairings, &m.region).unwrap();
        assert!(hit.error < 1e-8, "{hit:?}");
        let forms = pairing_forms(&m.pairings, &m.region);
        assert_eq!(forms.len(), 36);
        assert!(forms.iter().all(|f| f.alpha != 0 && f.intermediate.is_some()));
        assert!(forms.iter().any(|f| f.alpha == -1));
    }
}
