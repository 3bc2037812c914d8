//! Closed geodesics lying in hexagon planes, traced hexagon by hexagon through the
//! identifications, and the vertical lines over hexagon centres.
//!
//! A tile is a copy `place(hexagon)` of a region hexagon in the developed tessellation.
//! Tiles of one plane meet across edges; the neighbour across an edge is found by turning
//! around the edge through three face gluings (`D`, `A`, `D`), a half turn of `4 · π/4`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::assembly::{midpoint_height, tet_id, Cone, HsManifold};
use crate::error::{HsmError, Result};
use crate::h3geom::{dist, midpoint, BoundaryPoint, Isometry, PlaneH3, PointH3};
use crate::symmetry::{doubled_edge_flags, hexagon_colors};
use crate::torusmaps::UnionFind;

const FACE_A: usize = 0;
const FACE_D: usize = 3;

/// Complete geodesic of `H^3`, given by its two ends.
#[derive(Clone, Copy, Debug)]
pub struct GeodesicLine {
    pub endpoints: [BoundaryPoint; 2],
}

impl GeodesicLine {
    /// The line through two distinct points, oriented from `p` to `q`.
    pub fn through(p: &PointH3, q: &PointH3) -> Result<GeodesicLine> {
        let d = q.z - p.z;
        if d.norm() < 1e-12 {
            if (p.t - q.t).abs() < 1e-12 {
                return Err(HsmError::Geodesic("coincident points".into()));
            }
            let (lo, hi) = (BoundaryPoint::Finite(p.z), BoundaryPoint::Infinity);
            return Ok(GeodesicLine { endpoints: if q.t > p.t { [lo, hi] } else { [hi, lo] } });
        }
        // semicircle in the vertical plane over the segment p.z, q.z
        let len = d.norm();
        let u = d / len;
        let centre = (len * len + q.t * q.t - p.t * p.t) / (2.0 * len);
        let r = (centre * centre + p.t * p.t).sqrt();
        let ends = [p.z + u * (centre - r), p.z + u * (centre + r)];
        Ok(GeodesicLine { endpoints: ends.map(BoundaryPoint::Finite) })
    }

    /// Isometry taking the line to the vertical axis over `0`, first end to `0`.
    fn normalizer(&self) -> Isometry {
        let one = num_complex::Complex64::new(1.0, 0.0);
        let zero = num_complex::Complex64::new(0.0, 0.0);
        match self.endpoints {
            [BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)] => Isometry::mobius(one, -a, one, -b),
            [BoundaryPoint::Finite(a), BoundaryPoint::Infinity] => Isometry::mobius(one, -a, zero, one),
            [BoundaryPoint::Infinity, BoundaryPoint::Finite(b)] => Isometry::mobius(zero, one, one, -b),
            [BoundaryPoint::Infinity, BoundaryPoint::Infinity] => Isometry::identity(),
        }
    }

    pub fn distance_to(&self, p: &PointH3) -> f64 {
        let q = self.normalizer().apply(p);
        (q.z.norm() / q.t).asinh()
    }

    /// Largest displacement of the two ends under `g`, measured on the normalised line.
    pub fn endpoint_error(&self, g: &Isometry) -> f64 {
        let n = self.normalizer();
        let h = n.compose(g).compose(&n.inverse());
        [BoundaryPoint::Finite(num_complex::Complex64::new(0.0, 0.0)), BoundaryPoint::Infinity]
            .iter()
            .map(|e| match (h.apply_boundary(e), e) {
                (BoundaryPoint::Finite(z), BoundaryPoint::Finite(_)) => z.norm(),
                (BoundaryPoint::Finite(z), BoundaryPoint::Infinity) => 1.0 / z.norm(),
                (BoundaryPoint::Infinity, BoundaryPoint::Finite(_)) => f64::INFINITY,
                (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => 0.0,
            })
            .fold(0.0, f64::max)
    }
}

/// Copy of region hexagon `hex` placed by `place`.
#[derive(Clone, Copy, Debug)]
pub struct Tile {
    pub hex: usize,
    pub place: Isometry,
}

impl Tile {
    pub fn region(hex: usize) -> Tile {
        Tile { hex, place: Isometry::identity() }
    }

    pub fn vertex(&self, m: &HsManifold, k: usize) -> PointH3 {
        self.place.apply(&m.region.hexagons[self.hex].vertex_point(k))
    }

    /// Midpoint of edge `k` (from vertex `k` to `k + 1`).
    pub fn edge_mid(&self, m: &HsManifold, k: usize) -> PointH3 {
        let h = &m.region.hexagons[self.hex];
        self.place.apply(&PointH3::new((h.vertex_c(k) + h.vertex_c(k + 1)) / 2.0, midpoint_height()))
    }

    pub fn center(&self, m: &HsManifold) -> PointH3 {
        self.place.apply(&m.region.hexagons[self.hex].top())
    }

    pub fn plane(&self, m: &HsManifold) -> PlaneH3 {
        m.region.tets[tet_id(self.hex, 0, 0, Cone::Up)].faces[FACE_A].transform(&self.place)
    }

    pub fn same_as(&self, o: &Tile, m: &HsManifold) -> bool {
        self.hex == o.hex && self.center(m).approx_eq(&o.center(m), 1e-7)
    }
}

/// Result of crossing edge `k` of a tile: the coplanar neighbour, its edge index, and the
/// neighbour's indices of the old vertices `k` and `k + 1`.
#[derive(Clone, Copy, Debug)]
pub struct Crossing {
    pub tile: Tile,
    pub edge: usize,
    pub vertex_map: [usize; 2],
}

pub fn cross(m: &HsManifold, tile: &Tile, k: usize) -> Crossing {
    let mut cur = tet_id(tile.hex, k % 6, 0, Cone::Up);
    let mut acc = Isometry::identity();
    for face in [FACE_D, FACE_A, FACE_D] {
        let g = m.gluings[cur][face];
        acc = acc.compose(&g.psi);
        cur = g.tet;
    }
    let t = &m.region.tets[cur];
    let first = (t.edge + t.half) % 6;
    let second = (t.edge + 1 - t.half) % 6;
    Crossing { tile: Tile { hex: t.hex, place: tile.place.compose(&acc) }, edge: t.edge, vertex_map: [first, second] }
}

/// The other edge of a tile at vertex `v`, given one edge `e` at it.
fn other_edge_at(v: usize, e: usize) -> usize {
    if v == e {
        (e + 5) % 6
    } else {
        v
    }
}

/// Tiles around vertex `v` of `tile`, starting with `tile` itself.
pub fn vertex_star(m: &HsManifold, tile: &Tile, v: usize) -> Vec<Tile> {
    let mut out = vec![*tile];
    let (mut cur, mut vert, mut edge) = (*tile, v % 6, v % 6);
    for _ in 0..16 {
        let cr = cross(m, &cur, edge);
        vert = if vert == edge { cr.vertex_map[0] } else { cr.vertex_map[1] };
        edge = other_edge_at(vert, cr.edge);
        cur = cr.tile;
        if cur.same_as(tile, m) {
            return out;
        }
        out.push(cur);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SegmentKind {
    /// Between opposite vertices.
    Diagonal,
    /// Between midpoints of opposite edges.
    Height,
    Edge,
}

/// Position of the trace: `feature` is the start vertex (diagonal), start edge (height) or
/// edge index (edge); `from` is `0` or `1` for the end of the edge the trace starts at.
#[derive(Clone, Copy, Debug)]
pub struct TraceState {
    pub tile: Tile,
    pub feature: usize,
    pub from: usize,
}

impl TraceState {
    pub fn ends(&self, m: &HsManifold, kind: SegmentKind) -> (PointH3, PointH3) {
        let (t, f) = (&self.tile, self.feature);
        match kind {
            SegmentKind::Diagonal => (t.vertex(m, f), t.vertex(m, f + 3)),
            SegmentKind::Height => (t.edge_mid(m, f), t.edge_mid(m, f + 3)),
            SegmentKind::Edge => (t.vertex(m, f + self.from), t.vertex(m, f + 1 - self.from)),
        }
    }

    fn next(&self, m: &HsManifold, kind: SegmentKind) -> TraceState {
        match kind {
            SegmentKind::Diagonal => {
                // through the far vertex into the opposite tile of its star
                let v = (self.feature + 3) % 6;
                let c1 = cross(m, &self.tile, v);
                let u = c1.vertex_map[0];
                let c2 = cross(m, &c1.tile, other_edge_at(u, c1.edge));
                let w = if other_edge_at(u, c1.edge) == u { c2.vertex_map[0] } else { c2.vertex_map[1] };
                TraceState { tile: c2.tile, feature: w, from: 0 }
            }
            SegmentKind::Height => {
                let c1 = cross(m, &self.tile, (self.feature + 3) % 6);
                TraceState { tile: c1.tile, feature: c1.edge, from: 0 }
            }
            SegmentKind::Edge => {
                // straight on at the far vertex: skip one edge of the star
                let e = self.feature;
                let v = (e + 1 - self.from) % 6;
                let f = other_edge_at(v, e);
                let c1 = cross(m, &self.tile, f);
                let u = if v == f { c1.vertex_map[0] } else { c1.vertex_map[1] };
                let g = other_edge_at(u, c1.edge);
                TraceState { tile: c1.tile, feature: g, from: if u == g { 0 } else { 1 } }
            }
        }
    }
}

/// Region copies of a segment, with the isometry taking each copy onto the given one.
///
/// Segments through hexagon interiors have a single copy; an edge is shared by all region
/// edges around it, found by turning through the fan of tetrahedra at its first half.
fn segment_copies(m: &HsManifold, kind: SegmentKind, hex: usize, feature: usize, from: usize) -> Vec<((usize, usize, usize), Isometry)> {
    if kind != SegmentKind::Edge {
        return vec![((hex, feature, 0), Isometry::identity())];
    }
    let start = tet_id(hex, feature, from, Cone::Up);
    let mut out = Vec::new();
    let (mut cur, mut acc) = (start, Isometry::identity());
    for step in 0.. {
        let t = &m.region.tets[cur];
        if step % 2 == 0 {
            out.push(((t.hex, t.edge, t.half), acc));
        }
        let g = m.gluings[cur][if step % 2 == 0 { FACE_A } else { FACE_D }];
        acc = acc.compose(&g.psi);
        cur = g.tet;
        if cur == start && step % 2 == 1 {
            break;
        }
    }
    out
}

/// Classes of region edges `(hex, k)` under the identifications.
pub fn edge_classes(m: &HsManifold) -> Vec<usize> {
    let n = m.region.hexagons.len();
    let mut uf = UnionFind::new(n * 6);
    for h in 0..n {
        for k in 0..6 {
            for from in 0..2 {
                for ((h2, k2, _), _) in segment_copies(m, SegmentKind::Edge, h, k, from) {
                    uf.union(h * 6 + k, h2 * 6 + k2);
                }
            }
        }
    }
    (0..n * 6).map(|i| uf.find(i)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceSegment {
    pub hex: usize,
    pub entry: [f64; 3],
    pub exit: [f64; 3],
    pub length: f64,
}

fn coords(p: &PointH3) -> [f64; 3] {
    [p.z.re, p.z.im, p.t]
}

#[derive(Clone, Debug)]
pub struct TraceResult {
    pub kind: SegmentKind,
    pub line: GeodesicLine,
    pub segments: Vec<TraceSegment>,
    /// Deck transformation carrying the first segment onto its return.
    pub holonomy: Isometry,
    pub translation_length: f64,
    /// Rotation about the axis, from the imaginary part of the complex length.
    pub rotation: f64,
    pub closed: bool,
    /// Largest distance of a traced point from the line.
    pub straightness_error: f64,
    pub endpoint_error: f64,
    /// Sum of the traced segment lengths.
    pub traced_length: f64,
}

impl TraceResult {
    pub fn steps(&self) -> usize {
        self.segments.len()
    }

    /// `arccosh(|tr|^2 / 2 - 1)`, equal to the translation length when there is no twist.
    pub fn trace_length(&self) -> f64 {
        (self.holonomy.trace().norm_sqr() / 2.0 - 1.0).acosh()
    }
}

/// Traces the geodesic continuing segment `(kind, feature, from)` of region hexagon `hex`
/// until the segment recurs, up to `max_steps` segments.
pub fn trace_geodesic(m: &HsManifold, kind: SegmentKind, hex: usize, feature: usize, from: usize, max_steps: usize) -> Result<TraceResult> {
    let first = TraceState { tile: Tile::region(hex), feature: feature % 6, from };
    let (p0, q0) = first.ends(m, kind);
    let line = GeodesicLine::through(&p0, &q0)?;
    let copies = segment_copies(m, kind, hex, feature % 6, from);
    let mut state = first;
    let mut segments = Vec::new();
    let mut straightness_error: f64 = 0.0;
    for _ in 0..max_steps {
        let (p, q) = state.ends(m, kind);
        straightness_error = straightness_error.max(line.distance_to(&p)).max(line.distance_to(&q));
        let mid = midpoint(&p, &q);
        straightness_error = straightness_error.max(line.distance_to(&mid));
        segments.push(TraceSegment { hex: state.tile.hex, entry: coords(&p), exit: coords(&q), length: dist(&p, &q) });
        state = state.next(m, kind);
        let key = (state.tile.hex, state.feature, state.from);
        if let Some((_, acc)) = copies.iter().find(|(k, _)| *k == key) {
            let holonomy = state.tile.place.compose(&acc.inverse());
            let cl = holonomy.complex_length();
            return Ok(TraceResult {
                kind,
                line,
                traced_length: segments.iter().map(|s| s.length).sum(),
                segments,
                endpoint_error: line.endpoint_error(&holonomy),
                holonomy,
                translation_length: cl.re.abs(),
                rotation: wrap_angle(cl.im),
                closed: true,
                straightness_error,
            });
        }
    }
    Ok(TraceResult {
        kind,
        line,
        traced_length: segments.iter().map(|s| s.length).sum(),
        segments,
        holonomy: state.tile.place,
        translation_length: 0.0,
        rotation: 0.0,
        closed: false,
        straightness_error,
        endpoint_error: f64::NAN,
    })
}

/// Angle in `[0, 2π)`, with values within `1e-9` of `2π` sent to `0`.
fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(std::f64::consts::TAU);
    if std::f64::consts::TAU - r < 1e-9 {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SegmentLengths {
    pub edge: f64,
    pub height: f64,
    pub diagonal: f64,
}

/// Lengths measured on region hexagon `0`.
pub fn segment_lengths(m: &HsManifold) -> SegmentLengths {
    let t = Tile::region(0);
    SegmentLengths {
        edge: dist(&t.vertex(m, 0), &t.vertex(m, 1)),
        height: dist(&t.edge_mid(m, 0), &t.edge_mid(m, 3)),
        diagonal: dist(&t.vertex(m, 0), &t.vertex(m, 3)),
    }
}

/// Closed forms: `ln(2+√3)`, `2 ln(1+√2)`, `ln(5+2√6)`.
pub fn segment_lengths_closed_form() -> SegmentLengths {
    SegmentLengths {
        edge: (2.0 + 3f64.sqrt()).ln(),
        height: 2.0 * (1.0 + 2f64.sqrt()).ln(),
        diagonal: (5.0 + 2.0 * 6f64.sqrt()).ln(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TessellationKind {
    /// Purple hexagons: single and doubled edges alternate.
    TypeI,
    /// Green hexagons: single edges only.
    TypeII,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneTessellation {
    #[serde(skip)]
    pub plane: PlaneH3,
    pub kind: TessellationKind,
    /// Region hexagons met by the tiles explored.
    pub hexagons: BTreeSet<usize>,
    pub tiles: usize,
    /// Tiles around each vertex of the explored tiles.
    pub vertex_degrees: BTreeSet<usize>,
}

/// Explores the tiles of the plane through region hexagon `hex` up to `depth` edge
/// crossings and classifies the tessellation.
pub fn classify_plane(m: &HsManifold, hex: usize, depth: usize) -> Result<PlaneTessellation> {
    let (green, purple) = hexagon_colors(m);
    let base = Tile::region(hex);
    let plane = base.plane(m);
    let mut tiles = vec![base];
    let mut frontier = vec![base];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            for k in 0..6 {
                let n = cross(m, t, k).tile;
                if !tiles.iter().any(|x| x.same_as(&n, m)) {
                    tiles.push(n);
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    if let Some(t) = tiles.iter().find(|t| !t.plane(m).same_plane(&plane, 1e-7)) {
        return Err(HsmError::Geodesic(format!("tile of hexagon {} leaves the plane", t.hex)));
    }
    let hexagons: BTreeSet<usize> = tiles.iter().map(|t| t.hex).collect();
    let kind = if hexagons.iter().all(|h| green.contains(h)) {
        TessellationKind::TypeII
    } else if hexagons.iter().all(|h| purple.contains(h)) {
        TessellationKind::TypeI
    } else {
        return Err(HsmError::Geodesic(format!("plane through hexagon {hex} mixes colours: {hexagons:?}")));
    };
    let inner = tiles.len().min(7);
    let vertex_degrees = tiles[..inner].iter().flat_map(|t| (0..6).map(move |v| vertex_star(m, t, v).len())).collect();
    Ok(PlaneTessellation { plane, kind, hexagons, tiles: tiles.len(), vertex_degrees })
}

/// Cusp class of a boundary point that is an ideal vertex of the region: `0` for `∞`,
/// `1 + i` for the apex of a downward cone in small map `i`.
pub fn cusp_class(m: &HsManifold, p: &BoundaryPoint) -> Option<usize> {
    match p {
        BoundaryPoint::Infinity => Some(0),
        BoundaryPoint::Finite(z) => m
            .region
            .hexagons
            .iter()
            .position(|h| (h.center_c() - z).norm() < 1e-9)
            .map(|h| 1 + m.maniplex.hexagon_membership[h].0),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CuspType {
    Bicuspid,
    Unicuspid,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerticalLine {
    pub hex: usize,
    pub cusps: [Option<usize>; 2],
    pub kind: CuspType,
}

/// The vertical line over the centre of hexagon `hex`. Both ends are fixed points of
/// parabolic elements, so no loxodromic element preserves it and it never closes.
pub fn vertical_center_line(m: &HsManifold, hex: usize) -> VerticalLine {
    let z = m.region.hexagons[hex].center_c();
    let line = GeodesicLine { endpoints: [BoundaryPoint::Finite(z), BoundaryPoint::Infinity] };
    let cusps = line.endpoints.map(|e| cusp_class(m, &e));
    let kind = match cusps.iter().filter(|c| c.is_some()).count() {
        2 => CuspType::Bicuspid,
        1 => CuspType::Unicuspid,
        _ => CuspType::Neither,
    };
    VerticalLine { hex, cusps, kind }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    pub kind: SegmentKind,
    pub plane: TessellationKind,
    pub hex: usize,
    pub feature: usize,
    pub expected: f64,
    pub measured: f64,
    pub steps: usize,
    pub expected_steps: usize,
    pub rotation: f64,
    pub endpoint_error: f64,
    pub straightness_error: f64,
    pub ok: bool,
}

/// Candidate closed forms that disagree with the measured lengths.
#[derive(Clone, Debug, Serialize)]
pub struct FormCheck {
    pub quantity: String,
    pub expression: String,
    pub value: f64,
    pub measured: f64,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeodesicSuite {
    pub segment_lengths: SegmentLengths,
    pub closed_form_error: f64,
    pub claims: Vec<ClaimResult>,
    /// Type I heights: the point after two heights lies on the same edge class as the start,
    /// which is a doubled edge.
    pub self_intersection_class_match: bool,
    pub planes: Vec<(usize, TessellationKind)>,
    pub vertical_lines: Vec<VerticalLine>,
    pub form_checks: Vec<FormCheck>,
}

impl GeodesicSuite {
    pub fn ok(&self) -> bool {
        self.closed_form_error < 1e-12
            && self.claims.iter().all(|c| c.ok)
            && self.self_intersection_class_match
            && self.vertical_lines.iter().all(|v| v.kind == CuspType::Bicuspid)
    }
}

struct ClaimSpec {
    claim: &'static str,
    kind: SegmentKind,
    plane: TessellationKind,
    hex: usize,
    feature: usize,
    expected: f64,
    expected_steps: usize,
}

pub fn closed_geodesic_suite(m: &HsManifold, tol: f64) -> Result<GeodesicSuite> {
    let (green, purple) = hexagon_colors(m);
    let (g, p) = match (green.first(), purple.first()) {
        (Some(&g), Some(&p)) => (g, p),
        _ => return Err(HsmError::Geodesic("missing green or purple hexagons".into())),
    };
    let dbl = doubled_edge_flags(m, p);
    let doubled = (0..6).find(|&k| dbl[k]).expect("purple hexagon has a doubled edge");
    let cf = segment_lengths_closed_form();
    let specs = [
        ClaimSpec { claim: "two diagonals", kind: SegmentKind::Diagonal, plane: TessellationKind::TypeII, hex: g, feature: 0, expected: 2.0 * cf.diagonal, expected_steps: 2 },
        ClaimSpec { claim: "two heights, type II", kind: SegmentKind::Height, plane: TessellationKind::TypeII, hex: g, feature: 0, expected: 2.0 * cf.height, expected_steps: 2 },
        ClaimSpec { claim: "four edges, type II", kind: SegmentKind::Edge, plane: TessellationKind::TypeII, hex: g, feature: 0, expected: 4.0 * cf.edge, expected_steps: 4 },
        ClaimSpec { claim: "two doubled edges, type I", kind: SegmentKind::Edge, plane: TessellationKind::TypeI, hex: p, feature: doubled, expected: 2.0 * cf.edge, expected_steps: 2 },
        ClaimSpec { claim: "four heights, type I (non-simple)", kind: SegmentKind::Height, plane: TessellationKind::TypeI, hex: p, feature: doubled, expected: 4.0 * cf.height, expected_steps: 4 },
    ];
    let claims: Vec<ClaimResult> = specs
        .par_iter()
        .map(|s| {
            let r = trace_geodesic(m, s.kind, s.hex, s.feature, 0, 64)?;
            let ok = r.closed
                && (r.translation_length - s.expected).abs() < tol
                && (r.traced_length - s.expected).abs() < tol
                && r.steps() == s.expected_steps
                && r.endpoint_error < 1e-9
                && r.straightness_error < 1e-9;
            Ok(ClaimResult {
                claim: s.claim.to_string(),
                kind: s.kind,
                plane: s.plane,
                hex: s.hex,
                feature: s.feature,
                expected: s.expected,
                measured: r.translation_length,
                steps: r.steps(),
                expected_steps: s.expected_steps,
                rotation: r.rotation,
                endpoint_error: r.endpoint_error,
                straightness_error: r.straightness_error,
                ok,
            })
        })
        .collect::<Result<_>>()?;

    // the fourth height of type I: after two heights the trace is back on the doubled edge
    let classes = edge_classes(m);
    let start = TraceState { tile: Tile::region(p), feature: doubled, from: 0 };
    let half = start.next(m, SegmentKind::Height).next(m, SegmentKind::Height);
    let self_intersection_class_match =
        classes[half.tile.hex * 6 + half.feature] == classes[p * 6 + doubled] && doubled_edge_flags(m, half.tile.hex)[half.feature];

    let planes = [g, p].iter().map(|&h| classify_plane(m, h, 2).map(|t| (h, t.kind))).collect::<Result<_>>()?;
    let vertical_lines = (0..m.region.hexagons.len()).map(|h| vertical_center_line(m, h)).collect();

    let sl = segment_lengths(m);
    let closed_form_error =
        [(sl.edge, cf.edge), (sl.height, cf.height), (sl.diagonal, cf.diagonal)].iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let form = |quantity: &str, expression: &str, value: f64, measured: f64| FormCheck {
        quantity: quantity.into(),
        expression: expression.into(),
        value,
        measured,
        agrees: (value - measured).abs() < 1e-9,
    };
    let form_checks = vec![
        form("diagonal", "ln(1+2/sqrt(3))", (1.0 + 2.0 / 3f64.sqrt()).ln(), sl.diagonal),
        form("edge", "ln(2-sqrt(3))", (2.0 - 3f64.sqrt()).ln(), sl.edge),
        form("edge", "ln(2+sqrt(3))", cf.edge, sl.edge),
    ];
    Ok(GeodesicSuite { segment_lengths: sl, closed_form_error, claims, self_intersection_class_match, planes, vertical_lines, form_checks })
}

#[cfg(test)]
mod tests {
    use std::sync::OnceLock;

    use super::*;

    fn manifold() -> &'static HsManifold {
        static M: OnceLock<HsManifold> = OnceLock::new();
        M.get_or_init(|| HsManifold::build((0, 1)).unwrap())
    }

    #[test]
    fn crossing_is_coplanar_and_an_involution() {
        let m = manifold();
        for h in 0..12 {
            let t = Tile::region(h);
            for k in 0..6 {
                let c = cross(m, &t, k);
                assert!(c.tile.plane(m).same_plane(&t.plane(m), 1e-8));
                assert!(c.tile.vertex(m, c.vertex_map[0]).approx_eq(&t.vertex(m, k), 1e-9));
                assert!(c.tile.vertex(m, c.vertex_map[1]).approx_eq(&t.vertex(m, k + 1), 1e-9));
                assert!(!c.tile.center(m).approx_eq(&t.center(m), 1e-6));
                let back = cross(m, &c.tile, c.edge);
                assert!(back.tile.same_as(&t, m));
            }
        }
    }

    #[test]
    fn four_tiles_per_vertex() {
        let m = manifold();
        for h in 0..12 {
            for v in 0..6 {
                assert_eq!(vertex_star(m, &Tile::region(h), v).len(), 4);
            }
        }
    }

    #[test]
    fn lengths_match_closed_forms() {
        let sl = segment_lengths(manifold());
        let cf = segment_lengths_closed_form();
        assert!((sl.edge - 2f64.acosh()).abs() < 1e-12 && (cf.edge - 2f64.acosh()).abs() < 1e-12);
        assert!((sl.height - 3f64.acosh()).abs() < 1e-12 && (cf.height - 3f64.acosh()).abs() < 1e-12);
        assert!((sl.diagonal - 5f64.acosh()).abs() < 1e-12 && (cf.diagonal - 5f64.acosh()).abs() < 1e-12);
    }

    #[test]
    fn planes_are_monochromatic() {
        let m = manifold();
        let (green, purple) = hexagon_colors(m);
        for &h in &green {
            let t = classify_plane(m, h, 2).unwrap();
            assert_eq!(t.kind, TessellationKind::TypeII);
            assert_eq!(t.vertex_degrees, BTreeSet::from([4]));
        }
        for &h in &purple {
            assert_eq!(classify_plane(m, h, 2).unwrap().kind, TessellationKind::TypeI);
        }
    }

    #[test]
    fn suite() {
        let s = closed_geodesic_suite(manifold(), 1e-8).unwrap();
        for c in &s.claims {
            eprintln!("{c:?}");
        }
        assert!(s.ok(), "{s:#?}");
    }

    #[test]
    fn length_independent_of_start_segment() {
        let m = manifold();
        let (green, _) = hexagon_colors(m);
        for kind in [SegmentKind::Diagonal, SegmentKind::Height, SegmentKind::Edge] {
            let a = trace_geodesic(m, kind, green[0], 1, 0, 64).unwrap();
            let seg = TraceState { tile: Tile::region(green[0]), feature: 1, from: 0 }.next(m, kind);
            // restart from the second segment, pulled back to its region hexagon
            let b = trace_geodesic(m, kind, seg.tile.hex, seg.feature, seg.from, 64).unwrap();
            assert!(a.closed && b.closed);
            assert!((a.translation_length - b.translation_length).abs() < 1e-9);
        }
    }

    #[test]
    fn every_start_segment() {
        let m = manifold();
        let (green, purple) = hexagon_colors(m);
        let cf = segment_lengths_closed_form();
        let check = |kind, h, k, steps: usize, len: f64| {
            let r = trace_geodesic(m, kind, h, k, 0, 64).unwrap();
            assert_eq!(r.steps(), steps, "{kind:?} {h} {k}");
            assert!((r.translation_length - len).abs() < 1e-8);
            assert!(r.endpoint_error < 1e-9);
        };
        for &h in &green {
            for k in 0..6 {
                check(SegmentKind::Diagonal, h, k, 2, 2.0 * cf.diagonal);
                check(SegmentKind::Height, h, k, 2, 2.0 * cf.height);
                check(SegmentKind::Edge, h, k, 4, 4.0 * cf.edge);
            }
        }
        for &h in &purple {
            let dbl = doubled_edge_flags(m, h);
            for k in (0..6).filter(|&k| dbl[k]) {
                check(SegmentKind::Edge, h, k, 2, 2.0 * cf.edge);
                check(SegmentKind::Height, h, k, 4, 4.0 * cf.height);
            }
        }
    }

    #[test]
    fn vertical_lines_are_bicuspid() {
        let m = manifold();
        assert!((0..12).all(|h| vertical_center_line(m, h).kind == CuspType::Bicuspid));
    }
}
