//! The four 3-hexagon torus maps, the 12-hexagon torus map, the maniplex they form, and
//! the development of the 12-hexagon map into the hexagonal tiling of the plane.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::eisenstein::{lattice_hnf, Eisenstein};
use crate::error::{HsmError, Result};
use crate::hsg::{hexagon_decomposition, Sylvester, WHexagon};

/// `(row, col)` label of a vertex of `W`.
pub type WVertex = (usize, usize);

/// What a map identifies when it glues two slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gluing {
    /// Vertices are identified through their column (the 3-hexagon maps).
    Column,
    /// Vertices are identified as vertices of `W` (the 12-hexagon map).
    WVertex,
}

/// Oriented torus map built from hexagons of `W`.
///
/// Slot `(f, k)` is the edge of face `f` running from `cycle[k]` to `cycle[k+1]`.
#[derive(Clone, Debug, Serialize)]
pub struct TorusMap {
    pub faces: Vec<WHexagon>,
    pub gluing: Gluing,
    pub slot_pairing: Vec<[(usize, usize); 6]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl EulerCounts {
    pub fn characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

impl TorusMap {
    fn label(&self, w: WVertex) -> WVertex {
        match self.gluing {
            Gluing::Column => (usize::MAX, w.1),
            Gluing::WVertex => w,
        }
    }

    pub fn slot_ends(&self, f: usize, k: usize) -> (WVertex, WVertex) {
        let c = &self.faces[f].cycle;
        (c[k], c[(k + 1) % 6])
    }

    /// Classes of face corners under the gluing; corner `(f, k)` is `cycle[k]` of face `f`.
    pub fn corner_classes(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.faces.len() * 6;
        let mut uf = UnionFind::new(n);
        for f in 0..self.faces.len() {
            for k in 0..6 {
                let (g, kk) = self.slot_pairing[f][k];
                uf.union(f * 6 + k, g * 6 + (kk + 1) % 6);
                uf.union(f * 6 + (k + 1) % 6, g * 6 + kk);
            }
        }
        uf.classes().into_iter().map(|c| c.into_iter().map(|x| (x / 6, x % 6)).collect()).collect()
    }

    pub fn euler(&self) -> EulerCounts {
        EulerCounts {
            vertices: self.corner_classes().len(),
            edges: self.faces.len() * 6 / 2,
            faces: self.faces.len(),
        }
    }

    /// Fixed-point-free involution, opposite traversal on every glued pair, and corner
    /// classes carrying a single label.
    pub fn check(&self) -> Result<()> {
        for f in 0..self.faces.len() {
            for k in 0..6 {
                let (g, kk) = self.slot_pairing[f][k];
                if (g, kk) == (f, k) || self.slot_pairing[g][kk] != (f, k) {
                    return Err(HsmError::Map(format!("slot ({f},{k}) pairing is not a fixed-point-free involution")));
                }
                let (a, b) = self.slot_ends(f, k);
                let (c, d) = self.slot_ends(g, kk);
                if self.label(a) != self.label(d) || self.label(b) != self.label(c) {
                    return Err(HsmError::Map(format!("slots ({f},{k}) and ({g},{kk}) are not traversed oppositely")));
                }
            }
        }
        for class in self.corner_classes() {
            let labels: BTreeSet<WVertex> = class.iter().map(|&(f, k)| self.label(self.faces[f].cycle[k])).collect();
            if labels.len() != 1 {
                return Err(HsmError::Map("a vertex class mixes labels".into()));
            }
        }
        if self.euler().characteristic() != 0 {
            return Err(HsmError::Map(format!("Euler characteristic {} is not 0", self.euler().characteristic())));
        }
        if !self.is_connected() {
            return Err(HsmError::Map("map is disconnected".into()));
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.faces.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(f) = queue.pop_front() {
            for &(g, _) in &self.slot_pairing[f] {
                if !seen[g] {
                    seen[g] = true;
                    queue.push_back(g);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Index of the face with the same vertex set as `hex`, if any.
    pub fn find_face(&self, hex: &WHexagon) -> Option<usize> {
        let key: BTreeSet<WVertex> = hex.cycle.iter().copied().collect();
        self.faces.iter().position(|f| f.cycle.iter().copied().collect::<BTreeSet<_>>() == key)
    }

    /// Projected column pairs of the edges (one entry per glued pair of slots).
    pub fn projected_edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for f in 0..self.faces.len() {
            for k in 0..6 {
                if (f, k) < self.slot_pairing[f][k] {
                    let (a, b) = self.slot_ends(f, k);
                    out.push((sorted_pair(a.0, b.0), sorted_pair(a.1, b.1)));
                }
            }
        }
        out
    }
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Classes sorted by smallest member, each sorted.
    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        by_root.into_values().collect()
    }
}

/// Orients `faces` so that `partner` slots are traversed oppositely, by BFS from face 0.
///
/// `partner(faces, f, k)` returns the face and slot glued to slot `(f, k)` of the current
/// (possibly reversed) faces; `same_dir` says whether the two slots run in the same
/// direction, in which case the neighbour has to be reversed.
fn orient_and_pair(
    mut faces: Vec<WHexagon>,
    gluing: Gluing,
    partner_edge: impl Fn(WVertex, WVertex) -> (WVertex, WVertex),
) -> Result<TorusMap> {
    let n = faces.len();
    let find_slot = |faces: &[WHexagon], a: WVertex, b: WVertex, skip: (usize, usize)| -> Option<(usize, usize, bool)> {
        for (g, h) in faces.iter().enumerate() {
            for k in 0..6 {
                if (g, k) == skip {
                    continue;
                }
                let (x, y) = (h.cycle[k], h.cycle[(k + 1) % 6]);
                if x == a && y == b {
                    return Some((g, k, true));
                }
                if x == b && y == a {
                    return Some((g, k, false));
                }
            }
        }
        None
    };
    let mut fixed = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    fixed[0] = true;
    while let Some(f) = queue.pop_front() {
        for k in 0..6 {
            let (a, b) = (faces[f].cycle[k], faces[f].cycle[(k + 1) % 6]);
            // the glued edge must run from the image of b to the image of a
            let (pa, pb) = partner_edge(a, b);
            let (g, _, forward) = find_slot(&faces, pb, pa, (f, k))
                .ok_or_else(|| HsmError::Map(format!("no partner for edge {a:?}-{b:?}")))?;
            if !forward {
                if fixed[g] {
                    return Err(HsmError::Map("non-orientable gluing".into()));
                }
                faces[g].cycle.reverse();
            }
            if !fixed[g] {
                fixed[g] = true;
                queue.push_back(g);
            }
        }
    }
    let mut slot_pairing = vec![[(0, 0); 6]; n];
    for f in 0..n {
        for k in 0..6 {
            let (a, b) = (faces[f].cycle[k], faces[f].cycle[(k + 1) % 6]);
            let (pa, pb) = partner_edge(a, b);
            let (g, kk, forward) = find_slot(&faces, pb, pa, (f, k)).expect("checked above");
            if !forward {
                return Err(HsmError::Map("non-orientable gluing".into()));
            }
            slot_pairing[f][k] = (g, kk);
        }
    }
    let map = TorusMap { faces, gluing, slot_pairing };
    map.check()?;
    Ok(map)
}

/// The torus map `{6,3}_(1,1)` on the three hexagons of a row triple.
///
/// The slot of the `W`-edge `(i,a)(j,b)` is glued to the slot of its crosses partner
/// `(i,b)(j,a)`; after projecting to columns both become the map edge `{a, b}`.
pub fn small_map(syl: &Sylvester, triple: [usize; 3]) -> Result<TorusMap> {
    let faces = hexagon_decomposition(syl, triple)?;
    // (i,a)->(j,b) is glued to the partner running (j,a)->(i,b) reversed, i.e. b-column first
    orient_and_pair(faces, Gluing::Column, |(i, a), (j, b)| ((j, a), (i, b)))
}

/// The 12-hexagon torus map `{6,3}_(2,2)` on the hexagons of the four triples in `rows4`.
pub fn big_map(syl: &Sylvester, rows4: [usize; 4]) -> Result<TorusMap> {
    let mut faces = Vec::new();
    for t in triples_of(rows4) {
        faces.extend(hexagon_decomposition(syl, t)?);
    }
    // every W-edge must lie in exactly two hexagons
    let mut count: BTreeMap<(WVertex, WVertex), usize> = BTreeMap::new();
    for h in &faces {
        for k in 0..6 {
            let (a, b) = (h.cycle[k], h.cycle[(k + 1) % 6]);
            *count.entry(if a < b { (a, b) } else { (b, a) }).or_default() += 1;
        }
    }
    if let Some((e, c)) = count.iter().find(|(_, &c)| c != 2) {
        return Err(HsmError::LemmaViolation(format!("edge {e:?} lies in {c} hexagons")));
    }
    orient_and_pair(faces, Gluing::WVertex, |a, b| (a, b))
}

/// The four 3-subsets of `rows4`, lexicographic.
pub fn triples_of(rows4: [usize; 4]) -> Vec<[usize; 3]> {
    let mut r = rows4;
    r.sort_unstable();
    vec![[r[0], r[1], r[2]], [r[0], r[1], r[3]], [r[0], r[2], r[3]], [r[1], r[2], r[3]]]
}

/// Rank-4 structure: four small maps and the big map, glued along common hexagons.
#[derive(Clone, Debug, Serialize)]
pub struct Maniplex {
    pub rows4: [usize; 4],
    pub small_maps: Vec<TorusMap>,
    pub big_map: TorusMap,
    /// For each face of the big map: `(small map, face within it)`.
    pub hexagon_membership: Vec<(usize, usize)>,
}

/// Identified multigraph on the six columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentifiedGraph {
    /// Maniplex edges as `(row pair, column pair)`.
    pub edges: Vec<((usize, usize), (usize, usize))>,
    pub multiplicity: BTreeMap<(usize, usize), usize>,
    pub doubled_pairs: Vec<(usize, usize)>,
}

impl IdentifiedGraph {
    pub fn is_k6_plus_matching(&self) -> bool {
        let all_pairs = (0..6).all(|a| (a + 1..6).all(|b| self.multiplicity.get(&(a, b)).copied().unwrap_or(0) >= 1));
        let covered: BTreeSet<usize> = self.doubled_pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        all_pairs
            && self.multiplicity.values().all(|&m| m <= 2)
            && self.doubled_pairs.len() == 3
            && covered.len() == 6
            && self.edges.len() == 18
    }
}

impl Maniplex {
    /// Every hexagon lies in exactly two of the five maps.
    pub fn membership_counts(&self) -> Vec<usize> {
        self.big_map
            .faces
            .iter()
            .map(|h| 1 + self.small_maps.iter().filter(|m| m.find_face(h).is_some()).count())
            .collect()
    }

    pub fn identified_graph(&self) -> IdentifiedGraph {
        let mut edges: Vec<_> = self.small_maps.iter().flat_map(|m| m.projected_edges()).collect();
        edges.sort_unstable();
        edges.dedup();
        let mut multiplicity = BTreeMap::new();
        for &(_, cols) in &edges {
            *multiplicity.entry(cols).or_insert(0) += 1;
        }
        let doubled_pairs = multiplicity.iter().filter(|(_, &m)| m == 2).map(|(&p, _)| p).collect();
        IdentifiedGraph { edges, multiplicity, doubled_pairs }
    }

    /// Whether the big map's orientation restricts to a coherent orientation of each small
    /// map (needed for the orientation-preserving gluing of the lower cones).
    pub fn small_orientations_coherent(&self) -> Vec<bool> {
        self.small_maps
            .iter()
            .map(|m| {
                let agree: BTreeSet<bool> = m
                    .faces
                    .iter()
                    .map(|h| {
                        let big = &self.big_map.faces[self.big_map.find_face(h).expect("member")];
                        same_cyclic_orientation(&h.cycle, &big.cycle)
                    })
                    .collect();
                agree.len() == 1
            })
            .collect()
    }

    /// Each hexagon's cyclic vertex list agrees (up to rotation and reversal) in both maps.
    pub fn lists_consistent(&self) -> bool {
        self.hexagon_membership.iter().enumerate().all(|(f, &(s, g))| {
            let a = &self.big_map.faces[f].cycle;
            let b = &self.small_maps[s].faces[g].cycle;
            same_cycle(a, b)
        })
    }

    pub fn relabel_columns(&self, perm: &[usize; 6]) -> Maniplex {
        let fix = |m: &TorusMap| -> TorusMap {
            let mut m = m.clone();
            for h in &mut m.faces {
                for w in &mut h.cycle {
                    w.1 = perm[w.1];
                }
            }
            m
        };
        Maniplex {
            rows4: self.rows4,
            small_maps: self.small_maps.iter().map(fix).collect(),
            big_map: fix(&self.big_map),
            hexagon_membership: self.hexagon_membership.clone(),
        }
    }

    /// `W`-edges of the four rows with rows renumbered `0..4` by their rank in `rows4`.
    pub fn h4_edges(&self) -> BTreeSet<(WVertex, WVertex)> {
        let mut rows = self.rows4;
        rows.sort_unstable();
        let rank = |r: usize| rows.iter().position(|&x| x == r).expect("row of rows4");
        let mut out = BTreeSet::new();
        for h in &self.big_map.faces {
            for k in 0..6 {
                let (a, b) = (h.cycle[k], h.cycle[(k + 1) % 6]);
                let (a, b) = ((rank(a.0), a.1), (rank(b.0), b.1));
                out.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
        out
    }

    /// Canonical form of the row/column-labeled structure, minimised over row permutations
    /// and the column permutations that preserve the standard doubled matching.
    pub fn canonical_form(&self) -> Vec<(WVertex, WVertex)> {
        let edges = self.h4_edges();
        let mut best: Option<Vec<(WVertex, WVertex)>> = None;
        for rp in permutations(4) {
            for cp in matching_preserving_perms() {
                let mut img: Vec<(WVertex, WVertex)> = edges
                    .iter()
                    .map(|&(a, b)| {
                        let a = (rp[a.0], cp[a.1]);
                        let b = (rp[b.0], cp[b.1]);
                        if a < b {
                            (a, b)
                        } else {
                            (b, a)
                        }
                    })
                    .collect();
                img.sort_unstable();
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
        best.unwrap_or_default()
    }
}

fn same_cycle(a: &[WVertex], b: &[WVertex]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    (0..n).any(|s| (0..n).all(|k| a[k] == b[(s + k) % n]) || (0..n).all(|k| a[k] == b[(s + n - k) % n]))
}

fn same_cyclic_orientation(a: &[WVertex], b: &[WVertex]) -> bool {
    let n = a.len();
    (0..n).any(|s| (0..n).all(|k| a[k] == b[(s + k) % n]))
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn matching_preserving_perms() -> Vec<Vec<usize>> {
    permutations(6)
        .into_iter()
        .filter(|p| [(0, 1), (2, 3), (4, 5)].iter().all(|&(a, b)| p[a] / 2 == p[b] / 2))
        .collect()
}

pub fn build_maniplex(syl: &Sylvester, rows4: [usize; 4]) -> Result<Maniplex> {
    let mut sorted = rows4;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted[3] >= 6 {
        return Err(HsmError::InvalidArgument(format!("bad row set {rows4:?}")));
    }
    let small_maps: Vec<TorusMap> = triples_of(rows4).into_iter().map(|t| small_map(syl, t)).collect::<Result<_>>()?;
    let big_map = big_map(syl, rows4)?;
    let mut hexagon_membership = Vec::new();
    for h in &big_map.faces {
        let hits: Vec<(usize, usize)> = small_maps
            .iter()
            .enumerate()
            .filter_map(|(s, m)| m.find_face(h).map(|g| (s, g)))
            .collect();
        if hits.len() != 1 {
            return Err(HsmError::Map(format!("hexagon lies in {} small maps", hits.len())));
        }
        hexagon_membership.push(hits[0]);
    }
    let m = Maniplex { rows4, small_maps, big_map, hexagon_membership };
    if m.membership_counts().iter().any(|&c| c != 2) {
        return Err(HsmError::Map("hexagon membership count differs from 2".into()));
    }
    Ok(m)
}

/// Lexicographically least column permutation sending the doubled pairs to
/// `{0,1}, {2,3}, {4,5}`, applied to the maniplex. Returns the permutation as well.
pub fn canonical_relabel(m: &Maniplex) -> Result<(Maniplex, [usize; 6])> {
    let doubled = m.identified_graph().doubled_pairs;
    let perm = canonical_column_perm(&doubled)?;
    Ok((m.relabel_columns(&perm), perm))
}

pub fn canonical_column_perm(doubled: &[(usize, usize)]) -> Result<[usize; 6]> {
    if doubled.len() != 3 {
        return Err(HsmError::Map(format!("{} doubled pairs", doubled.len())));
    }
    permutations(6)
        .into_iter()
        .find(|p| doubled.iter().all(|&(a, b)| p[a] / 2 == p[b] / 2))
        .map(|p| p.try_into().expect("length 6"))
        .ok_or_else(|| HsmError::Map("doubled pairs do not form a perfect matching".into()))
}

/// Planar development of the 12-hexagon map into the hexagonal tiling of edge length `lambda`.
///
/// Coordinates are exact in units of `lambda`: vertex `k` of face `f` sits at
/// `centers[f] + w^(offsets[f] + k)`.
#[derive(Clone, Debug, Serialize)]
pub struct PlanarLayout {
    pub centers: Vec<Eisenstein>,
    pub offsets: Vec<i64>,
    pub periods: [Eisenstein; 2],
    /// Column label of vertex `k` of face `f`.
    pub columns: Vec<[usize; 6]>,
    /// Full `W` label of vertex `k` of face `f`.
    pub labels: Vec<[WVertex; 6]>,
    /// Row triple of each face.
    pub triples: Vec<[usize; 3]>,
}

pub fn lambda() -> f64 {
    (2.0f64 / 3.0).sqrt()
}

impl PlanarLayout {
    pub fn face_count(&self) -> usize {
        self.centers.len()
    }

    pub fn vertex(&self, f: usize, k: usize) -> Eisenstein {
        self.centers[f] + Eisenstein::unit(self.offsets[f] + k as i64)
    }

    /// The period lattice `6 Z[w]`.
    pub fn period_modulus(&self) -> i64 {
        6
    }

    /// Face whose representative is congruent to `center` modulo the periods, with the
    /// translation taking the representative onto `center`.
    pub fn locate(&self, center: Eisenstein) -> Option<(usize, Eisenstein)> {
        let m = self.period_modulus();
        let r = center.reduce(m);
        self.centers.iter().position(|c| c.reduce(m) == r).map(|f| (f, center - self.centers[f]))
    }

    /// Neighbouring face across edge `k` of face `f`: `(face, its edge index, translation)`
    /// where the translation moves the neighbour's representative next to `f`.
    pub fn neighbor(&self, f: usize, k: usize) -> (usize, usize, Eisenstein) {
        let p = self.vertex(f, k);
        let q = self.vertex(f, k + 1);
        let c = p + q - self.centers[f];
        let (g, tau) = self.locate(c).expect("layout covers every centre");
        let kk = (0..6)
            .find(|&j| self.vertex(g, j) + tau == q && self.vertex(g, j + 1) + tau == p)
            .expect("shared edge");
        (g, kk, tau)
    }

    /// Ratio of period-lattice covolume to hexagon area.
    pub fn area_ratio(&self) -> f64 {
        let l = lambda();
        let (p, q) = (self.periods[0].to_complex() * l, self.periods[1].to_complex() * l);
        let cov = (p.re * q.im - p.im * q.re).abs();
        cov / (1.5 * 3f64.sqrt() * l * l)
    }
}

/// BFS development of the big map over its universal cover.
pub fn develop_layout(big: &TorusMap) -> Result<PlanarLayout> {
    let n = big.faces.len();
    let mut placed: HashMap<Eisenstein, (usize, i64)> = HashMap::new();
    let mut queue = VecDeque::new();
    placed.insert(Eisenstein::ZERO, (0, 0));
    queue.push_back(Eisenstein::ZERO);
    const RADIUS_SQ: i64 = 24 * 24;
    while let Some(c) = queue.pop_front() {
        let (f, m) = placed[&c];
        for k in 0..6 {
            let p = c + Eisenstein::unit(m + k as i64);
            let q = c + Eisenstein::unit(m + k as i64 + 1);
            let nc = p + q - c;
            let (g, kk) = big.slot_pairing[f][k];
            // neighbour traverses the edge backwards: its vertex kk+1 sits at p
            let mg = (p - nc)
                .unit_index()
                .ok_or_else(|| HsmError::Development("neighbour vertex not at unit distance".into()))?
                - (kk as i64 + 1);
            let mg = mg.rem_euclid(6);
            if nc + Eisenstein::unit(mg + kk as i64) != q {
                return Err(HsmError::Development("orientation contradiction".into()));
            }
            match placed.get(&nc) {
                Some(&(g2, m2)) => {
                    if g2 != g || m2 != mg {
                        return Err(HsmError::Development(format!(
                            "cell at {nc:?} claimed by face {g2} and face {g}"
                        )));
                    }
                }
                None => {
                    if nc.norm() <= RADIUS_SQ {
                        placed.insert(nc, (g, mg));
                        queue.push_back(nc);
                    }
                }
            }
        }
    }
    let mut copies: Vec<Vec<(Eisenstein, i64)>> = vec![Vec::new(); n];
    let mut sorted: Vec<_> = placed.iter().collect();
    sorted.sort();
    for (&c, &(f, m)) in sorted {
        copies[f].push((c, m));
    }
    let mut diffs = Vec::new();
    for list in &copies {
        if list.is_empty() {
            return Err(HsmError::Development("face never placed".into()));
        }
        let (c0, m0) = list[0];
        for &(c, m) in &list[1..] {
            if m != m0 {
                return Err(HsmError::Development("translate of a face is rotated".into()));
            }
            diffs.push(c - c0);
        }
    }
    let hnf = lattice_hnf(&diffs).ok_or_else(|| HsmError::Development("periods have rank < 2".into()))?;
    if hnf != [[6, 0], [0, 6]] {
        return Err(HsmError::Development(format!("period lattice {hnf:?} is not 6Z[w]")));
    }
    let mut centers = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n);
    for list in &copies {
        centers.push(list[0].0.reduce(6));
        offsets.push(list[0].1);
    }
    let distinct: BTreeSet<Eisenstein> = centers.iter().copied().collect();
    if distinct.len() != n {
        return Err(HsmError::Development("two faces share a centre modulo periods".into()));
    }
    let columns = big
        .faces
        .iter()
        .map(|h| std::array::from_fn(|k| h.cycle[k].1))
        .collect();
    let labels = big.faces.iter().map(|h| std::array::from_fn(|k| h.cycle[k])).collect();
    let triples = big.faces.iter().map(|h| h.triple).collect();
    let layout = PlanarLayout {
        centers,
        offsets,
        periods: [Eisenstein::new(6, 0), Eisenstein::new(0, 6)],
        columns,
        labels,
        triples,
    };
    for f in 0..n {
        if layout.centers[f].color() != 0 || (0..6).any(|k| layout.vertex(f, k).color() == 0) {
            return Err(HsmError::Development("colour classes collide".into()));
        }
    }
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hsg::{build_hsg, edge_frame, sylvester_checks};

    fn syl() -> Sylvester {
        let g = build_hsg().unwrap();
        let f = edge_frame(&g, (0, 1)).unwrap();
        sylvester_checks(&g, &f).unwrap()
    }

    #[test]
    fn small_map_counts() {
        let s = syl();
        let m = small_map(&s, [0, 1, 2]).unwrap();
        let e = m.euler();
        assert_eq!((e.vertices, e.edges, e.faces), (6, 9, 3));
        // each column pair at most once per row pair
        let edges = m.projected_edges();
        let distinct: BTreeSet<_> = edges.iter().collect();
        assert_eq!(distinct.len(), 9);
    }

    #[test]
    fn big_map_counts() {
        let s = syl();
        let m = big_map(&s, [0, 1, 2, 3]).unwrap();
        let e = m.euler();
        assert_eq!((e.vertices, e.edges, e.faces), (24, 36, 12));
        let mut per_vertex: BTreeMap<WVertex, usize> = BTreeMap::new();
        for h in &m.faces {
            for &w in &h.cycle {
                *per_vertex.entry(w).or_default() += 1;
            }
        }
        assert!(per_vertex.values().all(|&c| c == 3));
        let mut labels: BTreeMap<_, usize> = BTreeMap::new();
        for f in 0..12 {
            for k in 0..6 {
                let (a, b) = m.slot_ends(f, k);
                if (f, k) < m.slot_pairing[f][k] {
                    *labels.entry((sorted_pair(a.0, b.0), sorted_pair(a.1, b.1))).or_default() += 1;
                }
            }
        }
        assert_eq!(labels.len(), 18);
        assert!(labels.values().all(|&c| c == 2));
    }

    #[test]
    fn canonical_relabel_examples() {
        let p = canonical_column_perm(&[(0, 3), (1, 5), (2, 4)]).unwrap();
        assert_eq!(p[0] / 2, p[3] / 2);
        assert_eq!(p[1] / 2, p[5] / 2);
        assert_eq!(canonical_column_perm(&[(0, 1), (2, 3), (4, 5)]).unwrap(), [0, 1, 2, 3, 4, 5]);
        assert!(canonical_column_perm(&[(0, 1), (0, 2), (4, 5)]).is_err());
    }

    #[test]
    fn relabel_is_idempotent() {
        let m = build_maniplex(&syl(), [0, 1, 2, 3]).unwrap();
        let (c1, _) = canonical_relabel(&m).unwrap();
        let (c2, p2) = canonical_relabel(&c1).unwrap();
        assert_eq!(p2, [0, 1, 2, 3, 4, 5]);
        assert_eq!(c1.identified_graph(), c2.identified_graph());
        assert_eq!(c1.identified_graph().doubled_pairs, vec![(0, 1), (2, 3), (4, 5)]);
    }

    #[test]
    fn layout_basics() {
        let m = build_maniplex(&syl(), [0, 1, 2, 3]).unwrap();
        let l = develop_layout(&m.big_map).unwrap();
        assert!((l.area_ratio() - 12.0).abs() < 1e-12);
        for f in 0..12 {
            for k in 0..6 {
                let (g, kk, tau) = l.neighbor(f, k);
                let (f2, k2, tau2) = l.neighbor(g, kk);
                assert_eq!((f2, k2, tau2), (f, k, -tau));
                assert_eq!((tau.a.rem_euclid(6), tau.b.rem_euclid(6)), (0, 0));
            }
        }
    }

    #[test]
    fn every_row_quadruple_gives_a_coherent_maniplex() {
        let s = syl();
        for r in permutations(6).into_iter().filter(|p| p[..4].windows(2).all(|w| w[0] < w[1])) {
            let rows4 = [r[0], r[1], r[2], r[3]];
            let m = build_maniplex(&s, rows4).unwrap();
            assert!(m.small_orientations_coherent().iter().all(|&c| c), "{rows4:?}");
            assert!(m.lists_consistent());
            assert!(m.identified_graph().is_k6_plus_matching());
            develop_layout(&m.big_map).unwrap();
        }
    }
}
