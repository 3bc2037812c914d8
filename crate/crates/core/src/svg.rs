//! SVG 1.1 drawings: the twelve hexagons of the layout in their period parallelogram, and
//! the tessellation of a hexagon plane in the Poincaré disk.

use std::fmt::Write;

use num_complex::Complex64;

use crate::assembly::HsManifold;
use crate::error::Result;
use crate::geodesics::{classify_plane, cross, GeodesicLine, TessellationKind, Tile};
use crate::h3geom::{midpoint, BoundaryPoint, Isometry, PointH3};
use crate::symmetry::doubled_edge_flags;

const SIZE: f64 = 640.0;

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">
<rect width="100%" height="100%" fill="white"/>"#
    );
}

fn polygon(out: &mut String, pts: &[(f64, f64)], fill: &str, stroke_width: f64) {
    let p: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(out, r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="{stroke_width:.2}"/>"#, p.join(" "));
}

/// The layout in lattice units: hexagons with their column labels and the period
/// parallelogram.
pub fn render_layout(m: &HsManifold) -> String {
    let layout = &m.region.layout;
    let [p, q] = layout.periods.map(|e| e.to_complex());
    let hexes = &m.region.hexagons;
    let all: Vec<Complex64> = hexes.iter().flat_map(|h| h.verts.iter().map(|v| v.to_complex())).chain([Complex64::new(0.0, 0.0), p, q, p + q]).collect();
    let (xmin, xmax) = all.iter().fold((f64::MAX, f64::MIN), |(a, b), z| (a.min(z.re), b.max(z.re)));
    let (ymin, ymax) = all.iter().fold((f64::MAX, f64::MIN), |(a, b), z| (a.min(z.im), b.max(z.im)));
    let scale = (SIZE - 40.0) / (xmax - xmin).max(ymax - ymin);
    let to = |z: Complex64| (20.0 + (z.re - xmin) * scale, 20.0 + (ymax - z.im) * scale);
    let (w, h) = (40.0 + (xmax - xmin) * scale, 40.0 + (ymax - ymin) * scale);
    let mut out = String::new();
    header(&mut out, w, h);
    for (i, hex) in hexes.iter().enumerate() {
        let pts: Vec<(f64, f64)> = hex.verts.iter().map(|v| to(v.to_complex())).collect();
        let fill = if hex.triple.contains(&m.maniplex.rows4[0]) { "#e8e0f4" } else { "#e0f0e0" };
        polygon(&mut out, &pts, fill, 1.0);
        let (cx, cy) = to(hex.center.to_complex());
        let _ = writeln!(out, r#"<text x="{cx:.3}" y="{cy:.3}" font-size="11" text-anchor="middle">H{i}</text>"#);
        for k in 0..6 {
            let v = hex.verts[k].to_complex();
            let z = v + (hex.center.to_complex() - v) * 0.22;
            let (x, y) = to(z);
            let _ = writeln!(out, r#"<text x="{x:.3}" y="{:.3}" font-size="9" text-anchor="middle">{}</text>"#, y + 3.0, hex.labels[k].1 + 1);
        }
    }
    let corners = [Complex64::new(0.0, 0.0), p, p + q, q].map(to);
    let c: Vec<String> = corners.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(out, r#"<polygon points="{}" fill="none" stroke="red" stroke-dasharray="6,4" stroke-width="1.5"/>"#, c.join(" "));
    out.push_str("</svg>\n");
    out
}

/// Isometry carrying the plane of `tile` to the vertical plane over the real axis, with the
/// tile centre above `i`.
fn plane_normalizer(m: &HsManifold, tile: &Tile) -> Result<Isometry> {
    let line = GeodesicLine::through(&tile.center(m), &tile.vertex(m, 0))?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let n = match line.endpoints {
        [BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)] => Isometry::mobius(one, -a, one, -b),
        [BoundaryPoint::Finite(a), BoundaryPoint::Infinity] => Isometry::mobius(one, -a, zero, one),
        [BoundaryPoint::Infinity, BoundaryPoint::Finite(b)] => Isometry::mobius(zero, one, one, -b),
        _ => Isometry::identity(),
    };
    // rotate the plane onto the real axis, then scale the centre to height 1
    let w = n.apply(&tile.vertex(m, 1)).z;
    let rot = Isometry::rigid(Complex64::from_polar(1.0, -w.arg()), zero);
    let n = rot.compose(&n);
    let t = n.apply(&tile.center(m)).t;
    Ok(Isometry::mobius(Complex64::new(1.0 / t, 0.0), zero, zero, one).compose(&n))
}

fn to_disk(p: &PointH3) -> Complex64 {
    let w = Complex64::new(p.z.re, p.t);
    let i = Complex64::new(0.0, 1.0);
    (w - i) / (w + i)
}

fn geodesic_points(a: &PointH3, b: &PointH3, depth: usize, out: &mut Vec<PointH3>) {
    if depth == 0 {
        out.push(*b);
        return;
    }
    let m = midpoint(a, b);
    geodesic_points(a, &m, depth - 1, out);
    geodesic_points(&m, b, depth - 1, out);
}

/// Tiles of the plane through region hexagon `hex` up to `depth` crossings, drawn in the
/// Poincaré disk; doubled edges are drawn thick.
pub fn render_plane(m: &HsManifold, hex: usize, depth: usize) -> Result<String> {
    let tess = classify_plane(m, hex, 0)?;
    let base = Tile::region(hex);
    let n = plane_normalizer(m, &base)?;
    let mut tiles = vec![base];
    let mut frontier = vec![base];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            for k in 0..6 {
                let c = cross(m, t, k).tile;
                if !tiles.iter().any(|x| x.same_as(&c, m)) {
                    tiles.push(c);
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    let r = SIZE / 2.0 - 10.0;
    let to = |z: Complex64| (SIZE / 2.0 + r * z.re, SIZE / 2.0 - r * z.im);
    let fill = match tess.kind {
        TessellationKind::TypeI => "#e8e0f4",
        TessellationKind::TypeII => "#e0f0e0",
    };
    let mut out = String::new();
    header(&mut out, SIZE, SIZE);
    let _ = writeln!(out, r#"<circle cx="{0:.3}" cy="{0:.3}" r="{r:.3}" fill="none" stroke="gray"/>"#, SIZE / 2.0);
    for t in &tiles {
        let mut pts = Vec::new();
        for k in 0..6 {
            let mut seg = Vec::new();
            geodesic_points(&n.apply(&t.vertex(m, k)), &n.apply(&t.vertex(m, k + 1)), 3, &mut seg);
            pts.extend(seg.iter().map(|p| to(to_disk(p))));
        }
        polygon(&mut out, &pts, fill, 0.6);
        let dbl = doubled_edge_flags(m, t.hex);
        for k in (0..6).filter(|&k| dbl[k]) {
            let mut seg = vec![n.apply(&t.vertex(m, k))];
            geodesic_points(&seg[0].clone(), &n.apply(&t.vertex(m, k + 1)), 3, &mut seg);
            let p: Vec<String> = seg.iter().map(|q| to(to_disk(q))).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
            let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="purple" stroke-width="2.5"/>"#, p.join(" "));
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drawings() {
        let m = HsManifold::build((0, 1)).unwrap();
        let layout = render_layout(&m);
        assert_eq!(layout.matches("<polygon").count(), 13);
        let plane = render_plane(&m, 0, 2).unwrap();
        assert!(plane.starts_with("<?xml") && plane.trim_end().ends_with("</svg>"));
        assert_eq!(plane, render_plane(&m, 0, 2).unwrap());
        // base tile centre at the disk centre
        let n = plane_normalizer(&m, &Tile::region(0)).unwrap();
        assert!(to_disk(&n.apply(&Tile::region(0).center(&m))).norm() < 1e-9);
    }
}
