//! Upper half-space geometry: points, oriented planes, isometries acting through the
//! Poincaré extension, the Lobachevsky function and the characteristic tetrahedron.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{HsmError, Result};

pub const EPS: f64 = 1e-9;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointH3 {
    pub z: Complex64,
    pub t: f64,
}

impl PointH3 {
    pub fn new(z: Complex64, t: f64) -> Self {
        debug_assert!(t > 0.0);
        PointH3 { z, t }
    }

    pub fn approx_eq(&self, o: &PointH3, tol: f64) -> bool {
        (self.z - o.z).norm() < tol && (self.t - o.t).abs() < tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryPoint {
    Finite(Complex64),
    Infinity,
}

impl BoundaryPoint {
    pub fn approx_eq(&self, o: &BoundaryPoint, tol: f64) -> bool {
        match (self, o) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => (a - b).norm() < tol,
            _ => false,
        }
    }
}

/// Corner of a region tetrahedron: interior point or ideal point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Corner {
    Interior(PointH3),
    Ideal(BoundaryPoint),
}

impl Corner {
    pub fn approx_eq(&self, o: &Corner, tol: f64) -> bool {
        match (self, o) {
            (Corner::Interior(a), Corner::Interior(b)) => a.approx_eq(b, tol),
            (Corner::Ideal(a), Corner::Ideal(b)) => a.approx_eq(b, tol),
            _ => false,
        }
    }
}

pub fn dist(p: &PointH3, q: &PointH3) -> f64 {
    let num = (p.z - q.z).norm_sqr() + (p.t - q.t).powi(2);
    (1.0 + num / (2.0 * p.t * q.t)).max(1.0).acosh()
}

/// Isometry `x -> M . s(x)` where `s` is complex conjugation when `orientation == -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    pub m: [Complex64; 4],
    pub orientation: i8,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry::mobius(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
    }

    /// `z -> (az+b)/(cz+d)`, normalised to determinant 1.
    pub fn mobius(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Self {
        Isometry { m: normalize([a, b, cc, d]), orientation: 1 }
    }

    /// `z -> (a conj(z) + b)/(c conj(z) + d)`.
    pub fn anti_mobius(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Self {
        Isometry { m: normalize([a, b, cc, d]), orientation: -1 }
    }

    pub fn translation(w: Complex64) -> Self {
        Isometry::mobius(c(1.0, 0.0), w, c(0.0, 0.0), c(1.0, 0.0))
    }

    /// `z -> alpha z + beta` with `|alpha| = 1`.
    pub fn rigid(alpha: Complex64, beta: Complex64) -> Self {
        Isometry::mobius(alpha, beta, c(0.0, 0.0), c(1.0, 0.0))
    }

    /// Rotation by `angle` about the vertical geodesic over `p`.
    pub fn rotation_about(p: Complex64, angle: f64) -> Self {
        let a = Complex64::from_polar(1.0, angle);
        Isometry::rigid(a, p - a * p)
    }

    /// Inversion in the sphere `|x - center| = radius`.
    pub fn inversion(center: Complex64, radius: f64) -> Self {
        Isometry::anti_mobius(center, c(radius * radius - center.norm_sqr(), 0.0), c(1.0, 0.0), -center.conj())
    }

    pub fn det(&self) -> Complex64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0] + self.m[3]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let o = if self.orientation < 0 { conj4(other.m) } else { other.m };
        Isometry { m: normalize(mul4(self.m, o)), orientation: self.orientation * other.orientation }
    }

    pub fn inverse(&self) -> Isometry {
        let [a, b, cc, d] = self.m;
        let inv = [d, -b, -cc, a];
        let m = if self.orientation < 0 { conj4(inv) } else { inv };
        Isometry { m: normalize(m), orientation: self.orientation }
    }

    pub fn pow(&self, n: u32) -> Isometry {
        (0..n).fold(Isometry::identity(), |acc, _| acc.compose(self))
    }

    pub fn apply(&self, p: &PointH3) -> PointH3 {
        let z = if self.orientation < 0 { p.z.conj() } else { p.z };
        let [a, b, cc, d] = self.m;
        let czd = cc * z + d;
        let den = czd.norm_sqr() + cc.norm_sqr() * p.t * p.t;
        PointH3 { z: ((a * z + b) * czd.conj() + a * cc.conj() * p.t * p.t) / den, t: p.t / den }
    }

    pub fn apply_boundary(&self, p: &BoundaryPoint) -> BoundaryPoint {
        let [a, b, cc, d] = self.m;
        match *p {
            BoundaryPoint::Infinity => {
                if cc.norm() < 1e-12 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(a / cc)
                }
            }
            BoundaryPoint::Finite(z) => {
                let z = if self.orientation < 0 { z.conj() } else { z };
                let den = cc * z + d;
                if den.norm() < 1e-12 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((a * z + b) / den)
                }
            }
        }
    }

    pub fn apply_corner(&self, p: &Corner) -> Corner {
        match p {
            Corner::Interior(q) => Corner::Interior(self.apply(q)),
            Corner::Ideal(q) => Corner::Ideal(self.apply_boundary(q)),
        }
    }

    /// Projective equality `M ≈ ±N` with equal orientation.
    pub fn approx_eq(&self, o: &Isometry, tol: f64) -> bool {
        if self.orientation != o.orientation {
            return false;
        }
        let plus = (0..4).all(|i| (self.m[i] - o.m[i]).norm() < tol);
        let minus = (0..4).all(|i| (self.m[i] + o.m[i]).norm() < tol);
        plus || minus
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Isometry::identity(), tol)
    }

    /// Sign-normalised matrix rounded to a grid, for hashing.
    pub fn key(&self, grid: f64) -> [i64; 9] {
        let first = self.m.iter().find(|x| x.norm() > 1e-6).copied().unwrap_or(c(1.0, 0.0));
        let flip = first.re < -1e-7 || (first.re.abs() <= 1e-7 && first.im < 0.0);
        let s = if flip { -1.0 } else { 1.0 };
        let mut k = [0i64; 9];
        for i in 0..4 {
            k[2 * i] = (s * self.m[i].re / grid).round() as i64;
            k[2 * i + 1] = (s * self.m[i].im / grid).round() as i64;
        }
        k[8] = self.orientation as i64;
        k
    }

    pub fn is_parabolic(&self, tol: f64) -> bool {
        self.orientation > 0 && !self.is_identity(tol) && (self.trace().norm_sqr() - 4.0).abs() < tol && self.trace().im.abs() < tol
    }

    /// Complex translation length `2 arccosh(tr/2)`; real part is the translation length.
    pub fn complex_length(&self) -> Complex64 {
        let t = self.trace();
        let t = if t.re < 0.0 { -t } else { t };
        (t / 2.0).acosh() * 2.0
    }

    pub fn translation_length(&self) -> f64 {
        self.complex_length().re.abs()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.m.iter().map(|x| json!([round12(x.re), round12(x.im)])).collect();
        json!([entries[0], entries[1], entries[2], entries[3], self.orientation])
    }
}

/// Rounds to 12 significant digits (report formatting).
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { 0.0 } else { x };
    }
    let v: f64 = format!("{x:.11e}").parse().expect("float formatting");
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn mul4(x: [Complex64; 4], y: [Complex64; 4]) -> [Complex64; 4] {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

fn conj4(x: [Complex64; 4]) -> [Complex64; 4] {
    [x[0].conj(), x[1].conj(), x[2].conj(), x[3].conj()]
}

fn normalize(m: [Complex64; 4]) -> [Complex64; 4] {
    let s = (m[0] * m[3] - m[1] * m[2]).sqrt();
    [m[0] / s, m[1] / s, m[2] / s, m[3] / s]
}

/// Oriented hyperbolic half-space `{ f < 0 }` with
/// `f(z, t) = a(|z|^2 + t^2) + 2 Re(conj(beta) z) + d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneH3 {
    pub a: f64,
    pub beta: Complex64,
    pub d: f64,
}

/// Euclidean description of a plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PlaneShape {
    Vertical { normal: Complex64, offset: f64 },
    Hemisphere { center: Complex64, radius: f64 },
}

impl PlaneH3 {
    /// Half-space `Re(conj(n) z) < offset` (normal made unit).
    pub fn vertical(normal: Complex64, offset: f64) -> Self {
        let n = normal.norm();
        PlaneH3 { a: 0.0, beta: normal / (2.0 * n), d: -offset / n }.normalized()
    }

    /// Inside of the hemisphere `|z - center|^2 + t^2 < radius^2`.
    pub fn hemisphere(center: Complex64, radius: f64) -> Self {
        PlaneH3 { a: 1.0, beta: -center, d: center.norm_sqr() - radius * radius }.normalized()
    }

    fn normalized(self) -> Self {
        let s = (self.beta.norm_sqr() - self.a * self.d).sqrt();
        PlaneH3 { a: self.a / s, beta: self.beta / s, d: self.d / s }
    }

    pub fn flipped(&self) -> Self {
        PlaneH3 { a: -self.a, beta: -self.beta, d: -self.d }
    }

    pub fn eval(&self, p: &PointH3) -> f64 {
        self.a * (p.z.norm_sqr() + p.t * p.t) + 2.0 * (self.beta.conj() * p.z).re + self.d
    }

    /// Sign of the form at a boundary point (the leading coefficient at infinity).
    pub fn eval_boundary(&self, p: &BoundaryPoint) -> f64 {
        match p {
            BoundaryPoint::Finite(z) => self.a * z.norm_sqr() + 2.0 * (self.beta.conj() * z).re + self.d,
            BoundaryPoint::Infinity => self.a,
        }
    }

    pub fn eval_corner(&self, p: &Corner) -> f64 {
        match p {
            Corner::Interior(q) => self.eval(q),
            Corner::Ideal(q) => self.eval_boundary(q),
        }
    }

    pub fn contains_corner(&self, p: &Corner, tol: f64) -> bool {
        match p {
            Corner::Ideal(BoundaryPoint::Infinity) => self.a.abs() < tol,
            _ => self.eval_corner(p).abs() < tol,
        }
    }

    pub fn shape(&self) -> PlaneShape {
        if self.a.abs() < 1e-12 {
            let n = self.beta * 2.0;
            let k = n.norm();
            PlaneShape::Vertical { normal: n / k, offset: -self.d / k }
        } else {
            let center = -self.beta / self.a;
            let r2 = center.norm_sqr() - self.d / self.a;
            PlaneShape::Hemisphere { center, radius: r2.max(0.0).sqrt() }
        }
    }

    /// Plane through three corners, oriented so that `inside` is in the open half-space.
    pub fn through(p: [Corner; 3], inside: &Corner) -> Result<PlaneH3> {
        let rows: Vec<[f64; 4]> = p.iter().map(coefficients).collect();
        let v = null_vector(&rows).ok_or_else(|| HsmError::Construction("degenerate plane".into()))?;
        let pl = PlaneH3 { a: v[0], beta: c(v[1], v[2]), d: v[3] };
        if pl.beta.norm_sqr() - pl.a * pl.d <= 1e-14 {
            return Err(HsmError::Construction("points do not span a hyperbolic plane".into()));
        }
        let pl = pl.normalized();
        let s = pl.eval_corner(inside);
        if s.abs() < 1e-12 {
            return Err(HsmError::Construction("reference corner lies on the plane".into()));
        }
        Ok(if s < 0.0 { pl } else { pl.flipped() })
    }

    /// Image under an isometry, with the same inside.
    pub fn transform(&self, g: &Isometry) -> PlaneH3 {
        // f'(x) = f(g^{-1} x); on hermitian forms H' = g^{-*} H g^{-1}
        let gi = g.inverse();
        let [a, b, cc, d] = gi.m;
        let (ha, hb, hd) = (c(self.a, 0.0), self.beta, c(self.d, 0.0));
        let h = [ha, hb, hb.conj(), hd];
        // hermitian form of z is [z 1]^* H [z 1]; g^{-1} z = (a z + b)/(c z + d)
        let gm = [a, b, cc, d];
        let gstar = [gm[0].conj(), gm[2].conj(), gm[1].conj(), gm[3].conj()];
        let r = mul4(gstar, mul4(h, gm));
        let mut out = PlaneH3 { a: r[0].re, beta: r[1], d: r[3].re };
        if gi.orientation < 0 {
            // conjugation acts first: f(conj z) swaps beta with its conjugate
            out.beta = out.beta.conj();
        }
        out.normalized()
    }

    pub fn approx_eq(&self, o: &PlaneH3, tol: f64) -> bool {
        (self.a - o.a).abs() < tol && (self.beta - o.beta).norm() < tol && (self.d - o.d).abs() < tol
    }

    /// Same plane, either orientation.
    pub fn same_plane(&self, o: &PlaneH3, tol: f64) -> bool {
        self.approx_eq(o, tol) || self.approx_eq(&o.flipped(), tol)
    }
}

fn coefficients(p: &Corner) -> [f64; 4] {
    match p {
        Corner::Interior(q) => [q.z.norm_sqr() + q.t * q.t, 2.0 * q.z.re, 2.0 * q.z.im, 1.0],
        Corner::Ideal(BoundaryPoint::Finite(z)) => [z.norm_sqr(), 2.0 * z.re, 2.0 * z.im, 1.0],
        Corner::Ideal(BoundaryPoint::Infinity) => [1.0, 0.0, 0.0, 0.0],
    }
}

/// Generalised cross product of three vectors in R^4.
fn null_vector(r: &[[f64; 4]]) -> Option<[f64; 4]> {
    let minor = |skip: usize| -> f64 {
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
        let m = |i: usize, j: usize| r[i][cols[j]];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    let v = [minor(0), -minor(1), minor(2), -minor(3)];
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n < 1e-14 {
        None
    } else {
        Some([v[0] / n, v[1] / n, v[2] / n, v[3] / n])
    }
}

pub fn reflection_in_plane(pl: &PlaneH3) -> Isometry {
    match pl.shape() {
        PlaneShape::Vertical { normal, offset } => {
            // z -> z - 2 (Re(conj(n) z) - offset) n = -n^2 conj(z) + 2 offset n
            Isometry::anti_mobius(-normal * normal, normal * (2.0 * offset), c(0.0, 0.0), c(1.0, 0.0))
        }
        PlaneShape::Hemisphere { center, radius } => Isometry::inversion(center, radius),
    }
}

/// Interior dihedral angle of the wedge `pl1 ∩ pl2` of two half-spaces.
pub fn dihedral_angle(p1: &PlaneH3, p2: &PlaneH3) -> Result<f64> {
    let cos = (p1.beta * p2.beta.conj()).re - (p1.a * p2.d + p2.a * p1.d) / 2.0;
    if cos.abs() >= 1.0 - 1e-12 {
        return Err(HsmError::NoIntersection);
    }
    Ok(PI - cos.acos())
}

/// Unit tangent at `p` of the geodesic from `p` to `q`, as `(x, y, t)`.
pub fn tangent(p: &PointH3, q: &PointH3) -> [f64; 3] {
    let h = q.z - p.z;
    let s = h.norm();
    let v = if s < 1e-14 {
        [0.0, 0.0, (q.t - p.t).signum()]
    } else {
        let u = h / s;
        let x0 = (s * s + q.t * q.t - p.t * p.t) / (2.0 * s);
        [p.t * u.re, p.t * u.im, x0]
    };
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Angle at `p` between the geodesics towards `q` and `r`.
pub fn angle_at(p: &PointH3, q: &PointH3, r: &PointH3) -> f64 {
    let a = tangent(p, q);
    let b = tangent(p, r);
    (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0).acos()
}

/// Hyperbolic midpoint of two points at equal height.
pub fn midpoint(p: &PointH3, q: &PointH3) -> PointH3 {
    // the geodesic is a semicircle; by symmetry the midpoint is its top
    let zc = (p.z + q.z) / 2.0;
    let half = (p.z - q.z).norm() / 2.0;
    if (p.t - q.t).abs() > 1e-12 {
        // general case: bisect numerically along the geodesic
        let total = dist(p, q);
        let mut lo = 0.0;
        let mut hi = 1.0;
        let along = |s: f64| geodesic_point(p, q, s);
        for _ in 0..100 {
            let mid = (lo + hi) / 2.0;
            if dist(p, &along(mid)) < total / 2.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return along(lo);
    }
    PointH3::new(zc, (half * half + p.t * p.t).sqrt())
}

/// Point of the Euclidean circle through `p, q` orthogonal to the boundary, parametrised by
/// horizontal fraction `s`.
fn geodesic_point(p: &PointH3, q: &PointH3, s: f64) -> PointH3 {
    let h = q.z - p.z;
    let len = h.norm();
    if len < 1e-14 {
        return PointH3::new(p.z, p.t + s * (q.t - p.t));
    }
    let x0 = (len * len + q.t * q.t - p.t * p.t) / (2.0 * len);
    let r2 = x0 * x0 + p.t * p.t;
    let x = s * len;
    PointH3::new(p.z + h * s, (r2 - (x - x0) * (x - x0)).max(1e-300).sqrt())
}

pub fn lambda() -> f64 {
    (2.0f64 / 3.0).sqrt()
}

/// The orthoscheme with dihedral angles pi/2 (AB, AC, BD), pi/3 (CD), pi/4 (AD), pi/6 (BC).
#[derive(Clone, Debug)]
pub struct CharacteristicTetrahedron {
    pub v0: PointH3,
    pub v1: PointH3,
    pub v2: PointH3,
    /// Faces A, B, C, D oriented with the tetrahedron inside.
    pub faces: [PlaneH3; 4],
}

pub const FACE_NAMES: [&str; 4] = ["A", "B", "C", "D"];

impl CharacteristicTetrahedron {
    pub fn new() -> Self {
        let s2 = 2f64.sqrt();
        let s3 = 3f64.sqrt();
        let v0 = PointH3::new(c(-lambda(), 0.0), 1.0 / s3);
        let v1 = PointH3::new(c(-s3 / (2.0 * s2), -1.0 / (2.0 * s2)), 1.0 / s2);
        let v2 = PointH3::new(c(0.0, 0.0), 1.0);
        let corners = [
            Corner::Interior(v0),
            Corner::Interior(v1),
            Corner::Interior(v2),
            Corner::Ideal(BoundaryPoint::Infinity),
        ];
        let faces = tetra_faces(&corners).expect("characteristic tetrahedron is non-degenerate");
        CharacteristicTetrahedron { v0, v1, v2, faces }
    }

    pub fn corners(&self) -> [Corner; 4] {
        [
            Corner::Interior(self.v0),
            Corner::Interior(self.v1),
            Corner::Interior(self.v2),
            Corner::Ideal(BoundaryPoint::Infinity),
        ]
    }

    /// Dihedral angles in the order AB, AC, AD, BC, BD, CD.
    pub fn dihedral_angles(&self) -> Result<[f64; 6]> {
        dihedral_profile(&self.faces)
    }
}

impl Default for CharacteristicTetrahedron {
    fn default() -> Self {
        Self::new()
    }
}

/// Expected angles, ordered as in [`CharacteristicTetrahedron::dihedral_angles`].
pub const EXPECTED_ANGLES: [f64; 6] = [FRAC_PI_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, FRAC_PI_2, FRAC_PI_3];

/// Face `X` is opposite corner `X`: A = (1,2,3), B = (0,2,3) ... with corners
/// ordered vertex, midpoint, top, ideal. Face A is opposite the ideal corner.
pub fn tetra_faces(corners: &[Corner; 4]) -> Result<[PlaneH3; 4]> {
    // face A omits the ideal corner (3), B omits the vertex (0), C the midpoint (1), D the top (2)
    let omit = [3usize, 0, 1, 2];
    let mut out = [PlaneH3 { a: 0.0, beta: c(0.0, 0.0), d: 0.0 }; 4];
    for (f, &o) in omit.iter().enumerate() {
        let others: Vec<Corner> = (0..4).filter(|&i| i != o).map(|i| corners[i]).collect();
        out[f] = PlaneH3::through([others[0], others[1], others[2]], &corners[o])?;
    }
    Ok(out)
}

pub fn dihedral_profile(faces: &[PlaneH3; 4]) -> Result<[f64; 6]> {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut out = [0.0; 6];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        out[i] = dihedral_angle(&faces[x], &faces[y])?;
    }
    Ok(out)
}

/// Reflections `R_A, R_B, R_C, R_D` in the faces of the characteristic tetrahedron.
pub fn coxeter_generators() -> [Isometry; 4] {
    let t = CharacteristicTetrahedron::new();
    t.faces.map(|f| reflection_in_plane(&f))
}

#[derive(Clone, Debug)]
pub struct HoneycombPatch {
    /// Edge `(v0, R_B v0)`.
    pub a0: (PointH3, PointH3),
    /// Vertices of the base hexagon in cyclic order.
    pub h0: Vec<PointH3>,
    pub center: PointH3,
    /// `R_B, R_C, R_D`.
    pub t0_seed: [Isometry; 3],
}

impl HoneycombPatch {
    pub fn vertex_angle(&self, k: usize) -> f64 {
        let n = self.h0.len();
        angle_at(&self.h0[k], &self.h0[(k + n - 1) % n], &self.h0[(k + 1) % n])
    }
}

pub fn honeycomb_patch() -> HoneycombPatch {
    let t = CharacteristicTetrahedron::new();
    let [_, rb, rc, rd] = coxeter_generators();
    let mut orbit = vec![t.v0];
    let mut i = 0;
    while i < orbit.len() {
        for g in [&rb, &rc] {
            let q = g.apply(&orbit[i]);
            if !orbit.iter().any(|p| p.approx_eq(&q, 1e-9)) {
                orbit.push(q);
            }
        }
        i += 1;
    }
    orbit.sort_by(|p, q| p.z.arg().partial_cmp(&q.z.arg()).expect("finite"));
    HoneycombPatch { a0: (t.v0, rb.apply(&t.v0)), h0: orbit, center: t.v2, t0_seed: [rb, rc, rd] }
}

/// Lobachevsky function `-∫_0^θ ln|2 sin t| dt`.
pub fn lobachevsky(theta: f64) -> f64 {
    // odd and pi-periodic
    let mut x = theta.rem_euclid(PI);
    if x > FRAC_PI_2 {
        x -= PI;
    }
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let x = x.abs();
    const DELTA: f64 = 1e-3;
    let series = |y: f64| {
        if y == 0.0 {
            0.0
        } else {
            y - y * (2.0 * y).ln() + y.powi(3) / 18.0 + y.powi(5) / 900.0
        }
    };
    if x <= DELTA {
        return sign * series(x);
    }
    let f = |t: f64| -(2.0 * t.sin()).ln();
    sign * (series(DELTA) + adaptive_gk(&f, DELTA, x, 1e-14, 40))
}

const GK_X: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let h = (b - a) / 2.0;
    let m = (a + b) / 2.0;
    let mut k = GK_WK[7] * f(m);
    let mut g = GK_WG[3] * f(m);
    for i in 0..7 {
        let s = f(m - h * GK_X[i]) + f(m + h * GK_X[i]);
        k += GK_WK[i] * s;
        if i % 2 == 1 {
            g += GK_WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

fn adaptive_gk(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (v, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return v;
    }
    let m = (a + b) / 2.0;
    adaptive_gk(f, a, m, tol / 2.0, depth - 1) + adaptive_gk(f, m, b, tol / 2.0, depth - 1)
}

pub fn tetrahedron_volume() -> f64 {
    5.0 / 6.0 * lobachevsky(FRAC_PI_3)
}

/// `½ Σ sin(2nθ)/n²` at `θ = π/3`, summed over `3 · groups` terms grouped by period
/// three; the tail is below `1 / (4 groups²)`.
pub fn lobachevsky_series_pi3(groups: u64) -> f64 {
    let mut s = 0.0;
    for k in (0..groups).rev() {
        let a = (3 * k + 1) as f64;
        let b = (3 * k + 2) as f64;
        s += 1.0 / (a * a) - 1.0 / (b * b);
    }
    3f64.sqrt() / 2.0 * s / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn distances() {
        let p = PointH3::new(c(0.0, 0.0), 1.0);
        let q = PointH3::new(c(0.0, 0.0), std::f64::consts::E);
        assert!((dist(&p, &q) - 1.0).abs() < 1e-12);
        let patch = honeycomb_patch();
        assert!((dist(&patch.a0.0, &patch.a0.1) - 2f64.acosh()).abs() < 1e-12);
        let v = patch.h0[0];
        let opp = patch.h0[3];
        assert!((dist(&v, &opp) - 5f64.acosh()).abs() < 1e-12);
    }

    #[test]
    fn apply_examples() {
        let l = lambda();
        let p = PointH3::new(c(0.0, 0.0), 1.0);
        let q = Isometry::translation(c(6.0 * l, 0.0)).apply(&p);
        assert!(q.approx_eq(&PointH3::new(c(6.0 * l, 0.0), 1.0), 1e-12));
        let inv = Isometry::inversion(c(0.0, 0.0), 1.0);
        assert!(inv.apply(&PointH3::new(c(0.0, 0.0), 2.0)).approx_eq(&PointH3::new(c(0.0, 0.0), 0.5), 1e-12));
        assert_eq!(inv.orientation, -1);
        assert!(inv.compose(&inv).is_identity(1e-12));
    }

    #[test]
    fn reflections_of_simple_planes() {
        let r = reflection_in_plane(&PlaneH3::vertical(c(0.0, 1.0), 0.0));
        let p = PointH3::new(c(0.3, 0.7), 0.4);
        assert!(r.apply(&p).approx_eq(&PointH3::new(c(0.3, -0.7), 0.4), 1e-12));
        let s = reflection_in_plane(&PlaneH3::hemisphere(c(0.0, 0.0), 1.0));
        assert!(s.approx_eq(&Isometry::inversion(c(0.0, 0.0), 1.0), 1e-12));
    }

    #[test]
    fn tetrahedron_angles() {
        let t = CharacteristicTetrahedron::new();
        let got = t.dihedral_angles().unwrap();
        for (g, e) in got.iter().zip(EXPECTED_ANGLES) {
            assert!((g - e).abs() < 1e-9, "{got:?}");
        }
        // face A is the unit hemisphere
        assert!(t.faces[0].same_plane(&PlaneH3::hemisphere(c(0.0, 0.0), 1.0), 1e-9));
    }

    #[test]
    fn coxeter_relations() {
        let [ra, rb, rc, rd] = coxeter_generators();
        let cases = [(&ra, &rb, 2), (&ra, &rc, 2), (&ra, &rd, 4), (&rb, &rc, 6), (&rb, &rd, 2), (&rc, &rd, 3)];
        for (x, y, n) in cases {
            let p = x.compose(y);
            assert!(p.pow(n).is_identity(1e-9));
            for k in 1..n {
                assert!(!p.pow(k).is_identity(1e-6));
            }
        }
        let t = CharacteristicTetrahedron::new();
        assert!(ra.apply(&t.v1).approx_eq(&t.v1, 1e-12));
        assert!(ra.apply(&t.v2).approx_eq(&t.v2, 1e-12));
    }

    #[test]
    fn base_hexagon() {
        let patch = honeycomb_patch();
        assert_eq!(patch.h0.len(), 6);
        for (k, v) in patch.h0.iter().enumerate() {
            assert!((v.t - 1.0 / 3f64.sqrt()).abs() < 1e-12);
            assert!((v.z.norm_sqr() + v.t * v.t - 1.0).abs() < 1e-12);
            assert!((patch.vertex_angle(k) - FRAC_PI_2).abs() < 1e-9);
        }
        assert!(patch.center.approx_eq(&PointH3::new(c(0.0, 0.0), 1.0), 1e-12));
        let m = midpoint(&patch.h0[0], &patch.h0[1]);
        assert!((m.t - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        let m2 = midpoint(&patch.h0[3], &patch.h0[4]);
        assert!((dist(&m, &m2) - 3f64.acosh()).abs() < 1e-12);
    }

    #[test]
    fn lobachevsky_values() {
        assert_eq!(lobachevsky(0.0), 0.0);
        let oracle = lobachevsky_series_pi3(1_000_000);
        assert!((lobachevsky(FRAC_PI_3) - oracle).abs() < 1e-10);
        assert!((oracle - 0.3383139).abs() < 1e-6);
        assert!((lobachevsky(FRAC_PI_6) - 1.5 * lobachevsky(FRAC_PI_3)).abs() < 1e-10);
        assert!((lobachevsky(-0.4) + lobachevsky(0.4)).abs() < 1e-14);
        assert!((lobachevsky(0.4 + PI) - lobachevsky(0.4)).abs() < 1e-12);
        let v = tetrahedron_volume();
        assert!((v - 0.2819283).abs() < 1e-6);
        assert!((288.0 * v - 81.1953).abs() < 5e-4);
    }

    #[test]
    fn dihedral_of_parallel_planes_fails() {
        let a = PlaneH3::vertical(c(1.0, 0.0), 0.0);
        let b = PlaneH3::vertical(c(1.0, 0.0), 1.0);
        assert_eq!(dihedral_angle(&a, &b), Err(HsmError::NoIntersection));
    }

    #[test]
    fn plane_transform_tracks_points() {
        let t = CharacteristicTetrahedron::new();
        let g = Isometry::inversion(c(0.3, 0.1), 1.7).compose(&Isometry::rotation_about(c(1.0, -2.0), 0.7));
        let pl = t.faces[1];
        let img = pl.transform(&g);
        for p in [t.v1, t.v2] {
            assert!(img.eval(&g.apply(&p)).abs() < 1e-9);
        }
        assert!(img.eval(&g.apply(&t.v0)) < 0.0);
    }

    fn word() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(0usize..4, 0..=8)
    }

    fn point() -> impl Strategy<Value = PointH3> {
        (-2.0f64..2.0, -2.0f64..2.0, 0.2f64..3.0).prop_map(|(x, y, t)| PointH3::new(c(x, y), t))
    }

    fn eval_word(w: &[usize]) -> Isometry {
        let gens = coxeter_generators();
        w.iter().fold(Isometry::identity(), |acc, &i| acc.compose(&gens[i]))
    }

    proptest! {
        #[test]
        fn words_preserve_distance(w in word(), p in point(), q in point()) {
            let g = eval_word(&w);
            prop_assert!((dist(&g.apply(&p), &g.apply(&q)) - dist(&p, &q)).abs() < 1e-9);
        }

        #[test]
        fn composition_and_inverse(w1 in word(), w2 in word(), p in point()) {
            let g = eval_word(&w1);
            let h = eval_word(&w2);
            let gh = g.compose(&h);
            prop_assert!(gh.apply(&p).approx_eq(&g.apply(&h.apply(&p)), 1e-9 * (1.0 + p.t)));
            prop_assert_eq!(gh.orientation, g.orientation * h.orientation);
            prop_assert!(g.inverse().compose(&g).is_identity(1e-9));
        }

        #[test]
        fn reflections_are_involutions(x in -2.0f64..2.0, y in -2.0f64..2.0, r in 0.1f64..3.0, ang in 0.0f64..6.3, vertical in any::<bool>()) {
            let pl = if vertical {
                PlaneH3::vertical(Complex64::from_polar(1.0, ang), x)
            } else {
                PlaneH3::hemisphere(c(x, y), r)
            };
            let g = reflection_in_plane(&pl);
            prop_assert_eq!(g.orientation, -1);
            prop_assert!(g.compose(&g).is_identity(1e-9));
            // fixes points of the plane
            let p = match pl.shape() {
                PlaneShape::Vertical { normal, offset } => PointH3::new(normal * offset + normal * c(0.0, 1.0) * y, r),
                PlaneShape::Hemisphere { center, radius } => PointH3::new(center + Complex64::from_polar(radius * 0.6, ang), radius * 0.8),
            };
            prop_assert!(g.apply(&p).approx_eq(&p, 1e-9));
        }
    }
}
