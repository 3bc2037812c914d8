//! Isometries of the manifold as automorphisms of the flag graph on the 288 tetrahedra,
//! the cube-group presentation, orbit tables and the geometric mirror reflections.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::assembly::{tet_id, Cone, HsManifold, TilingSymmetry, WallRef};
use crate::eisenstein::Eisenstein;
use crate::error::{HsmError, Result};
use crate::graph::orbits;
use crate::h3geom::{lambda, Isometry};

pub type Perm = Vec<usize>;

/// The four face-adjacency involutions `s_A, s_B, s_C, s_D`.
#[derive(Clone, Debug, Serialize)]
pub struct FlagGraph {
    pub s: [Vec<usize>; 4],
}

impl FlagGraph {
    pub fn len(&self) -> usize {
        self.s[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for s in &self.s {
                if !seen[s[t]] {
                    seen[s[t]] = true;
                    queue.push_back(s[t]);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    pub fn commutes(&self, p: &[usize]) -> bool {
        self.s.iter().all(|s| (0..self.len()).all(|t| p[s[t]] == s[p[t]]))
    }
}

pub fn build_flag_graph(m: &HsManifold) -> Result<FlagGraph> {
    let n = m.region.tets.len();
    let s: [Vec<usize>; 4] = std::array::from_fn(|x| (0..n).map(|t| m.gluings[t][x].tet).collect());
    for (x, sx) in s.iter().enumerate() {
        if (0..n).any(|t| sx[t] == t || sx[sx[t]] != t) {
            return Err(HsmError::Gluing(format!("face type {x} is not a fixed-point-free involution")));
        }
    }
    let fg = FlagGraph { s };
    if !fg.is_connected() {
        return Err(HsmError::Gluing("flag graph is disconnected".into()));
    }
    Ok(fg)
}

/// The automorphism sending `0` to `image`, if the propagation is consistent.
pub fn propagate(fg: &FlagGraph, image: usize) -> Option<Perm> {
    let n = fg.len();
    let mut p = vec![usize::MAX; n];
    let mut used = vec![false; n];
    p[0] = image;
    used[image] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for s in &fg.s {
            let (u, v) = (s[t], s[p[t]]);
            if p[u] == usize::MAX {
                if used[v] {
                    return None;
                }
                p[u] = v;
                used[v] = true;
                queue.push_back(u);
            } else if p[u] != v {
                return None;
            }
        }
    }
    Some(p)
}

#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub elements: Vec<Perm>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.elements.iter().any(|e| e.as_slice() == p)
    }

    pub fn is_free(&self) -> bool {
        self.elements.iter().all(|e| is_identity(e) || e.iter().enumerate().all(|(i, &x)| i != x))
    }

    pub fn is_closed(&self) -> bool {
        let set: HashSet<&Perm> = self.elements.iter().collect();
        self.elements.iter().all(|a| self.elements.iter().all(|b| set.contains(&compose(a, b))))
    }
}

pub fn automorphism_group(fg: &FlagGraph) -> SymmetryGroup {
    let elements = (0..fg.len()).filter_map(|b| propagate(fg, b)).collect();
    SymmetryGroup { elements }
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// `a ∘ b`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn element_order(p: &[usize]) -> usize {
    let mut q = p.to_vec();
    let mut k = 1;
    while !is_identity(&q) {
        q = compose(p, &q);
        k += 1;
    }
    k
}

/// Order of the group generated by `gens` (closure by BFS).
pub fn generated_order(gens: &[Perm]) -> usize {
    let n = gens.first().map(|g| g.len()).unwrap_or(0);
    let id: Perm = (0..n).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterWitness {
    /// Indices into the group's element list.
    pub generators: [usize; 3],
    /// Orders of `g0 g2`, `g0 g1`, `g1 g2`.
    pub product_orders: [usize; 3],
    pub generated_order: usize,
}

fn profile(a: &[usize], b: &[usize], c: &[usize]) -> [usize; 3] {
    [element_order(&compose(a, c)), element_order(&compose(a, b)), element_order(&compose(b, c))]
}

/// Involutions `g0, g1, g2` with `(g0g2, g0g1, g1g2)` of orders `(2, 4, 3)` generating the
/// group; with 48 elements this identifies the group as `[4,3]`.
pub fn coxeter_presentation_check(sg: &SymmetryGroup) -> Result<CoxeterWitness> {
    let inv: Vec<usize> =
        (0..sg.order()).filter(|&i| !is_identity(&sg.elements[i]) && element_order(&sg.elements[i]) == 2).collect();
    for &a in &inv {
        for &b in &inv {
            for &cc in &inv {
                let (x, y, z) = (&sg.elements[a], &sg.elements[b], &sg.elements[cc]);
                if profile(x, y, z) != [2, 4, 3] {
                    continue;
                }
                let order = generated_order(&[x.clone(), y.clone(), z.clone()]);
                if order == sg.order() {
                    return Ok(CoxeterWitness { generators: [a, b, cc], product_orders: [2, 4, 3], generated_order: order });
                }
            }
        }
    }
    Err(HsmError::Symmetry("no involution triple with product orders (2,4,3) generates the group".into()))
}

/// Maniplex edge key: sorted row pair and sorted column pair.
pub type EdgeKey = ((usize, usize), (usize, usize));

fn sorted(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn edge_key(m: &HsManifold, t: usize) -> EdgeKey {
    let tet = &m.region.tets[t];
    let l = &m.region.hexagons[tet.hex].labels;
    let (x, y) = (l[tet.edge], l[(tet.edge + 1) % 6]);
    (sorted(x.0, y.0), sorted(x.1, y.1))
}

fn vertex_column(m: &HsManifold, t: usize) -> usize {
    let tet = &m.region.tets[t];
    m.region.hexagons[tet.hex].labels[(tet.edge + tet.half) % 6].1
}

/// Cusp of a tetrahedron: `0` for the cusp at infinity, otherwise `1 + ` small-map index.
fn cusp_of(m: &HsManifold, t: usize) -> usize {
    let tet = &m.region.tets[t];
    match tet.cone {
        Cone::Up => 0,
        Cone::Down => 1 + m.maniplex.hexagon_membership[tet.hex].0,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub hexagon_orbits: Vec<Vec<usize>>,
    pub edge_orbits: Vec<Vec<EdgeKey>>,
    pub vertex_orbits: Vec<Vec<usize>>,
    pub cusp_orbits: Vec<Vec<usize>>,
    /// Hexagons with only single projected edges.
    pub green: Vec<usize>,
    /// Hexagons alternating single and doubled projected edges.
    pub purple: Vec<usize>,
    pub doubled_edges: Vec<EdgeKey>,
    pub big_cusp_fixed: bool,
    pub preserves_up_tets: bool,
    pub has_double_transposition: bool,
}

impl OrbitReport {
    pub fn ok(&self) -> bool {
        let mut hs: Vec<usize> = self.hexagon_orbits.iter().map(|o| o.len()).collect();
        hs.sort_unstable();
        let doubled: BTreeSet<&EdgeKey> = self.doubled_edges.iter().collect();
        let doubled_orbit = self.edge_orbits.iter().any(|o| o.len() == 6 && o.iter().all(|e| doubled.contains(e)));
        let mut es: Vec<usize> = self.edge_orbits.iter().map(|o| o.len()).collect();
        es.sort_unstable();
        let mut green = self.green.clone();
        green.sort_unstable();
        hs == vec![4, 8]
            && es == vec![6, 12]
            && doubled_orbit
            && self.hexagon_orbits.iter().any(|o| {
                let mut o = o.clone();
                o.sort_unstable();
                o == green
            })
            && self.big_cusp_fixed
            && self.preserves_up_tets
            && self.has_double_transposition
    }
}

/// Induced map on a labelled set, checked to be well defined.
fn induced<K: Ord + Copy>(m: &HsManifold, p: &[usize], key: impl Fn(&HsManifold, usize) -> K) -> Result<BTreeMap<K, K>> {
    let mut out = BTreeMap::new();
    for t in 0..p.len() {
        let (a, b) = (key(m, t), key(m, p[t]));
        if let Some(prev) = out.insert(a, b) {
            if prev != b {
                return Err(HsmError::Symmetry("induced action is not well defined".into()));
            }
        }
    }
    Ok(out)
}

fn orbits_of<K: Ord + Copy>(maps: &[BTreeMap<K, K>]) -> Vec<Vec<K>> {
    let keys: Vec<K> = maps.first().map(|m| m.keys().copied().collect()).unwrap_or_default();
    let index = |k: &K| keys.iter().position(|x| x == k).expect("key");
    let gens: Vec<Vec<usize>> = maps.iter().map(|m| keys.iter().map(|k| index(&m[k])).collect()).collect();
    orbits(keys.len(), &gens).into_iter().map(|o| o.into_iter().map(|i| keys[i]).collect()).collect()
}

pub fn orbit_report(sg: &SymmetryGroup, m: &HsManifold) -> Result<OrbitReport> {
    let up: Vec<usize> = (0..m.region.tets.len()).filter(|&t| m.region.tets[t].cone == Cone::Up).collect();
    let preserves_up_tets = sg.elements.iter().all(|p| up.iter().all(|&t| m.region.tets[p[t]].cone == Cone::Up));
    let hex_maps: Vec<_> =
        sg.elements.iter().map(|p| induced(m, p, |m, t| m.region.tets[t].hex)).collect::<Result<_>>()?;
    let edge_maps: Vec<_> = sg.elements.iter().map(|p| induced(m, p, edge_key)).collect::<Result<_>>()?;
    let vertex_maps: Vec<_> = sg.elements.iter().map(|p| induced(m, p, vertex_column)).collect::<Result<_>>()?;
    let cusp_maps: Vec<_> = sg.elements.iter().map(|p| induced(m, p, cusp_of)).collect::<Result<_>>()?;
    let big_cusp_fixed = cusp_maps.iter().all(|c| c[&0] == 0);
    let has_double_transposition = vertex_maps.iter().any(|v| {
        let moved: Vec<usize> = v.iter().filter(|(a, b)| a != b).map(|(a, _)| *a).collect();
        moved.len() == 4 && moved.iter().all(|a| v[&v[a]] == *a)
    });
    let ig = m.maniplex.identified_graph();
    let doubled_cols: BTreeSet<(usize, usize)> = ig.doubled_pairs.iter().copied().collect();
    let doubled_edges: Vec<EdgeKey> = ig.edges.iter().copied().filter(|(_, c)| doubled_cols.contains(c)).collect();
    let (green, purple) = hexagon_colors(m);
    Ok(OrbitReport {
        hexagon_orbits: orbits_of(&hex_maps),
        edge_orbits: orbits_of(&edge_maps),
        vertex_orbits: orbits_of(&vertex_maps),
        cusp_orbits: orbits_of(&cusp_maps),
        green,
        purple,
        doubled_edges,
        big_cusp_fixed,
        preserves_up_tets,
        has_double_transposition,
    })
}

/// Which edges of hexagon `h` project to one of the doubled edges of the identified graph.
pub fn doubled_edge_flags(m: &HsManifold, h: usize) -> [bool; 6] {
    let doubled = m.maniplex.identified_graph().doubled_pairs;
    let l = &m.region.hexagons[h].labels;
    std::array::from_fn(|k| doubled.contains(&sorted(l[k].1, l[(k + 1) % 6].1)))
}

/// Green hexagons (single edges only) and purple hexagons (alternating single and doubled).
pub fn hexagon_colors(m: &HsManifold) -> (Vec<usize>, Vec<usize>) {
    let mut green = Vec::new();
    let mut purple = Vec::new();
    for h in 0..m.region.hexagons.len() {
        let dbl = doubled_edge_flags(m, h);
        if dbl.iter().all(|d| !d) {
            green.push(h);
        } else if (0..6).all(|k| dbl[k] != dbl[(k + 1) % 6]) {
            purple.push(h);
        }
    }
    (green, purple)
}

/// Image of a tetrahedron under a symmetry of the tiling, with the period translation it
/// lands on.
fn tiling_tet(m: &HsManifold, f: &TilingSymmetry, t: usize) -> Option<(usize, Eisenstein)> {
    let tet = &m.region.tets[t];
    let hex = &m.region.hexagons[tet.hex];
    let v = f.apply(hex.verts[(tet.edge + tet.half) % 6]);
    let w = f.apply(hex.verts[(tet.edge + 1 - tet.half) % 6]);
    let (h2, tau) = m.region.layout.locate(f.apply(hex.center))?;
    let verts = &m.region.hexagons[h2].verts;
    let i = (0..6).find(|&i| verts[i] + tau == v)?;
    let (edge, half) = if verts[(i + 1) % 6] + tau == w {
        (i, 0)
    } else if verts[(i + 5) % 6] + tau == w {
        ((i + 5) % 6, 1)
    } else {
        return None;
    };
    Some((tet_id(h2, edge, half, tet.cone), tau))
}

pub fn tiling_permutation(m: &HsManifold, f: &TilingSymmetry) -> Option<Perm> {
    let p: Perm = (0..m.region.tets.len()).map(|t| tiling_tet(m, f, t).map(|(x, _)| x)).collect::<Option<_>>()?;
    let distinct: BTreeSet<&usize> = p.iter().collect();
    (distinct.len() == p.len()).then_some(p)
}

/// `F g F^{-1} = T(τ2) g' T(τ1)^{-1}` for every downward wall map `g`.
pub fn normalizes_pairings(m: &HsManifold, f: &TilingSymmetry) -> bool {
    let r = f.isometry();
    let l = lambda();
    for (h, row) in m.pairings.down_maps.iter().enumerate() {
        for (k, &(t, g)) in row.iter().enumerate() {
            let Some((s_img, tau1)) = tiling_tet(m, f, tet_id(h, k, 0, Cone::Down)) else { return false };
            let Some((t_img, tau2)) = tiling_tet(m, f, tet_id(t.hex, t.slot, 0, Cone::Down)) else { return false };
            let src = &m.region.tets[s_img];
            let dst = &m.region.tets[t_img];
            let (t2, g2) = m.pairings.down_maps[src.hex][src.edge];
            if t2 != (WallRef { hex: dst.hex, slot: dst.edge }) {
                return false;
            }
            let lhs = r.compose(&g).compose(&r.inverse());
            let rhs = Isometry::translation(tau2.to_complex() * l)
                .compose(&g2)
                .compose(&Isometry::translation(-tau1.to_complex() * l));
            if !lhs.approx_eq(&rhs, 1e-8) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SymmetryKind {
    Identity,
    Translation,
    /// Rotation about a vertical geodesic by `2π / order`.
    Rotation { order: u8 },
    /// Reflection in a vertical plane.
    Mirror,
    GlideReflection,
}

/// Kind of the isometry induced on the manifold, choosing the best lift modulo periods.
pub fn classify(f: &TilingSymmetry) -> SymmetryKind {
    let lifts = (-2..=2).flat_map(|a| (-2..=2).map(move |b| Eisenstein::new(6 * a, 6 * b)));
    if f.reflect {
        // twice is the translation by w^rot conj(t) + t
        let u = Eisenstein::unit(f.rot);
        let mirror = lifts.into_iter().any(|tau| {
            let t = f.shift + tau;
            t.conj() * u + t == Eisenstein::ZERO
        });
        if mirror {
            SymmetryKind::Mirror
        } else {
            SymmetryKind::GlideReflection
        }
    } else {
        match f.rot.rem_euclid(6) {
            0 if f.shift.reduce(6) == Eisenstein::ZERO => SymmetryKind::Identity,
            0 => SymmetryKind::Translation,
            r => SymmetryKind::Rotation { order: (6 / gcd6(r)) as u8 },
        }
    }
}

fn gcd6(r: i64) -> i64 {
    match r {
        3 => 3,
        2 | 4 => 2,
        _ => 1,
    }
}

/// A group element together with a tiling isometry inducing it.
#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub element: usize,
    pub symmetry: TilingSymmetry,
    pub kind: SymmetryKind,
    pub orientation: i8,
}

/// Realises flag-graph automorphisms by isometries `z -> w^k s(z) + t` of the tiling,
/// `t` running over the lattice modulo the periods.
pub fn realize_group(m: &HsManifold, fg: &FlagGraph, sg: &SymmetryGroup) -> Vec<Realization> {
    let mut out: Vec<Realization> = Vec::new();
    for reflect in [false, true] {
        for rot in 0..6 {
            for a in 0..6 {
                for b in 0..6 {
                    let f = TilingSymmetry { rot, reflect, shift: Eisenstein::new(a, b) };
                    let Some(p) = tiling_permutation(m, &f) else { continue };
                    let Some(element) = sg.elements.iter().position(|e| *e == p) else { continue };
                    if out.iter().any(|r| r.element == element) || !fg.commutes(&p) || !normalizes_pairings(m, &f) {
                        continue;
                    }
                    out.push(Realization { element, symmetry: f, kind: classify(&f), orientation: if reflect { -1 } else { 1 } });
                }
            }
        }
    }
    out.sort_by_key(|r| r.element);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionReport {
    /// Mirrors of the tiling (modulo periods) tried as candidates.
    pub mirror_candidates: usize,
    pub rejected: usize,
    /// Accepted mirrors, one per induced automorphism.
    pub mirrors: Vec<TilingSymmetry>,
    /// Orders of products of two accepted mirrors.
    pub mirror_product_orders: Vec<usize>,
    pub mirrors_generate: usize,
    /// Three mirrors with product orders (2, 4, 3), when they exist.
    pub mirror_triple: Option<[TilingSymmetry; 3]>,
    pub realized: usize,
    /// Involutions realising the (2, 4, 3) presentation, preferring mirrors.
    pub witness: Vec<Realization>,
    pub witness_generates: usize,
}

impl ReflectionReport {
    pub fn ok(&self) -> bool {
        self.rejected > 0 && self.mirrors_generate == 48 && self.realized == 48 && self.witness_generates == 48
    }

    pub fn isometries(&self) -> Vec<Isometry> {
        self.witness.iter().map(|r| r.symmetry.isometry()).collect()
    }
}

pub fn geometric_reflections(m: &HsManifold, fg: &FlagGraph, sg: &SymmetryGroup) -> Result<ReflectionReport> {
    let realized = realize_group(m, fg, sg);
    let mut mirror_candidates = 0;
    let mut rejected = 0;
    for rot in 0..6 {
        for a in 0..6 {
            for b in 0..6 {
                let f = TilingSymmetry { rot, reflect: true, shift: Eisenstein::new(a, b) };
                // only mirrors whose axis passes through hexagon centres
                if classify(&f) != SymmetryKind::Mirror || !maps_centres(&f) {
                    continue;
                }
                mirror_candidates += 1;
                if !realized.iter().any(|r| r.symmetry == f) {
                    rejected += 1;
                }
            }
        }
    }
    let mirrors: Vec<&Realization> = realized.iter().filter(|r| r.kind == SymmetryKind::Mirror).collect();
    let perms: Vec<&Perm> = mirrors.iter().map(|r| &sg.elements[r.element]).collect();
    let mut mirror_product_orders: Vec<usize> = perms
        .iter()
        .flat_map(|a| perms.iter().map(move |b| element_order(&compose(a, b))))
        .filter(|&o| o > 1)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    mirror_product_orders.sort_unstable();
    let mirrors_generate = generated_order(&perms.iter().map(|p| (*p).clone()).collect::<Vec<_>>());
    let mut mirror_triple = None;
    'outer: for a in &mirrors {
        for b in &mirrors {
            for cc in &mirrors {
                let (x, y, z) = (&sg.elements[a.element], &sg.elements[b.element], &sg.elements[cc.element]);
                if profile(x, y, z) == [2, 4, 3] && generated_order(&[x.clone(), y.clone(), z.clone()]) == sg.order() {
                    mirror_triple = Some([a.symmetry, b.symmetry, cc.symmetry]);
                    break 'outer;
                }
            }
        }
    }
    let involutions: Vec<&Realization> =
        realized.iter().filter(|r| element_order(&sg.elements[r.element]) == 2).collect();
    let mut best: Option<(usize, [&Realization; 3])> = None;
    for a in &involutions {
        for b in &involutions {
            for cc in &involutions {
                let (x, y, z) = (&sg.elements[a.element], &sg.elements[b.element], &sg.elements[cc.element]);
                if profile(x, y, z) != [2, 4, 3] {
                    continue;
                }
                let score = [a, b, cc].iter().filter(|r| r.kind == SymmetryKind::Mirror).count();
                if best.as_ref().is_some_and(|(s, _)| *s >= score) {
                    continue;
                }
                if generated_order(&[x.clone(), y.clone(), z.clone()]) == sg.order() {
                    best = Some((score, [*a, *b, *cc]));
                }
            }
        }
    }
    let (_, triple) =
        best.ok_or_else(|| HsmError::Symmetry("no realised involution triple has product orders (2,4,3)".into()))?;
    let witness: Vec<Realization> = triple.iter().map(|r| (*r).clone()).collect();
    let witness_generates = generated_order(&witness.iter().map(|r| sg.elements[r.element].clone()).collect::<Vec<_>>());
    Ok(ReflectionReport {
        mirror_candidates,
        rejected,
        mirrors: mirrors.iter().map(|r| r.symmetry).collect(),
        mirror_product_orders,
        mirrors_generate,
        mirror_triple,
        realized: realized.len(),
        witness,
        witness_generates,
    })
}

fn maps_centres(f: &TilingSymmetry) -> bool {
    f.apply(Eisenstein::ZERO).color() == 0
}

/// Orientation character: `+1` if the automorphism preserves the bipartition of the flag
/// graph (orientation-preserving isometry).
pub fn orientation_character(fg: &FlagGraph, p: &[usize]) -> i8 {
    let n = fg.len();
    let mut col = vec![u8::MAX; n];
    col[0] = 0;
    let mut stack = vec![0usize];
    while let Some(t) = stack.pop() {
        for s in &fg.s {
            if col[s[t]] == u8::MAX {
                col[s[t]] = 1 - col[t];
                stack.push(s[t]);
            }
        }
    }
    if col[p[0]] == col[0] {
        1
    } else {
        -1
    }
}

/// Element-order histogram of the orientation-preserving subgroup.
pub fn rotation_subgroup_orders(fg: &FlagGraph, sg: &SymmetryGroup) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for p in sg.elements.iter().filter(|p| orientation_character(fg, p) == 1) {
        *h.entry(element_order(p)).or_default() += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn setup() -> &'static (HsManifold, FlagGraph, SymmetryGroup) {
        static S: OnceLock<(HsManifold, FlagGraph, SymmetryGroup)> = OnceLock::new();
        S.get_or_init(|| {
            let m = HsManifold::build((0, 1)).unwrap();
            let fg = build_flag_graph(&m).unwrap();
            let sg = automorphism_group(&fg);
            (m, fg, sg)
        })
    }

    #[test]
    fn group_order_and_freeness() {
        let (_, fg, sg) = setup();
        assert_eq!(fg.len(), 288);
        assert_eq!(sg.order(), 48);
        assert!(sg.is_free());
        assert!(sg.is_closed());
        assert!(sg.elements.iter().all(|p| fg.commutes(p)));
        assert!(propagate(fg, 0).is_some_and(|p| is_identity(&p)));
    }

    #[test]
    fn cube_presentation() {
        let (_, _, sg) = setup();
        let w = coxeter_presentation_check(sg).unwrap();
        assert_eq!(w.generated_order, 48);
    }

    #[test]
    fn orbits() {
        let (m, _, sg) = setup();
        let r = orbit_report(sg, m).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.green.len(), 4);
        assert_eq!(r.purple.len(), 8);
    }

    #[test]
    fn mirrors() {
        let (m, fg, sg) = setup();
        let r = geometric_reflections(m, fg, sg).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.mirrors.len(), 12);
        // products of two mirrors are rotations of order 2, 3 or 6, never 4
        assert_eq!(r.mirror_product_orders, vec![2, 3, 6]);
        assert!(r.mirror_triple.is_none());
        for x in &r.mirrors {
            let iso = x.isometry();
            assert_eq!(iso.orientation, -1);
            assert!(iso.compose(&iso).approx_eq(&Isometry::identity(), 1e-9) || classify(x) == SymmetryKind::Mirror);
        }
    }

    #[test]
    fn orientation_preserving_subgroup() {
        let (_, fg, sg) = setup();
        let h = rotation_subgroup_orders(fg, sg);
        assert_eq!(h, BTreeMap::from([(1, 1), (2, 7), (3, 8), (6, 8)]));
    }

    #[test]
    fn generated_order_of_small_groups() {
        let swap: Perm = vec![1, 0, 2];
        let cyc: Perm = vec![1, 2, 0];
        assert_eq!(generated_order(std::slice::from_ref(&swap)), 2);
        assert_eq!(generated_order(&[swap, cyc]), 6);
    }
}
