//! Petersen and Hoffman–Singleton graphs, and the combinatorial census around them.
//!
//! The HSG is built from five pentagons `P_h` and five pentagrams `Q_i` on `Z_5`, with
//! vertex `j` of `P_h` joined to vertex `h*i + j` of `Q_i`. Ids `0..25` are the pentagon
//! block (`5h + j`), ids `25..50` the pentagram block (`25 + 5i + j`).

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HsmError, Result};
use crate::graph::{graph_invariants, AutomorphismSearch, Graph};

/// Petersen graph as the Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint.
pub fn build_petersen() -> Graph {
    let mut pairs = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            pairs.push((a, b));
        }
    }
    let mut g = Graph::empty(pairs.len());
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                g.add_edge(i, j).expect("in range");
            }
        }
    }
    g
}

/// Hoffman–Singleton graph, checked against (50, 175, 7-regular, girth 5, diameter 2).
pub fn build_hsg() -> Result<Graph> {
    let p = |h: usize, j: usize| 5 * h + j % 5;
    let q = |i: usize, j: usize| 25 + 5 * i + j % 5;
    let mut g = Graph::empty(50);
    for h in 0..5 {
        for j in 0..5 {
            g.add_edge(p(h, j), p(h, j + 1))?;
            g.add_edge(q(h, j), q(h, j + 2))?;
            for i in 0..5 {
                g.add_edge(p(h, j), q(i, h * i + j))?;
            }
        }
    }
    let inv = graph_invariants(&g).map_err(|e| HsmError::Construction(e.to_string()))?;
    let expected = (50, 175, 7, 7, Some(5), 2);
    let got = (inv.vertex_count, inv.edge_count, inv.min_degree, inv.max_degree, inv.girth, inv.diameter);
    if got != expected {
        return Err(HsmError::Construction(format!("got {got:?}, want {expected:?}")));
    }
    Ok(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct PentagonCensus {
    pub pentagon_count: usize,
    pub three_paths: usize,
    pub unique_completion: bool,
}

/// Checks that every path with 3 edges closes to exactly one pentagon.
pub fn pentagon_census(g: &Graph) -> PentagonCensus {
    let mut three_paths = 0;
    let mut unique = true;
    for b in 0..g.vertex_count() {
        for &c in g.neighbors(b) {
            if c < b {
                continue;
            }
            // unordered 3-path a-b-c-d with middle edge b<c counted once per middle edge orientation
            for &a in g.neighbors(b) {
                if a == c {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d == b || d == a {
                        continue;
                    }
                    three_paths += 1;
                    let closers = g
                        .neighbors(a)
                        .iter()
                        .filter(|&&x| x != b && x != c && x != d && g.adjacent(x, d))
                        .count();
                    if closers != 1 {
                        unique = false;
                    }
                }
            }
        }
    }
    PentagonCensus {
        pentagon_count: g.pentagons().len(),
        three_paths,
        unique_completion: unique,
    }
}

/// Induced Petersen subgraphs of `g` containing `pentagon` and the edge `(pentagon[k], outer)`.
///
/// Exhaustive search: in a Petersen graph each pentagon vertex has exactly one neighbour
/// off the pentagon, and those five outer vertices span a pentagram. Every choice of outer
/// neighbours is tried and the induced 10-vertex subgraph is tested for being 3-regular of
/// girth 5, which characterises the Petersen graph.
pub fn petersen_extensions(g: &Graph, pentagon: &[usize; 5], k: usize, outer: usize) -> Vec<[usize; 10]> {
    let on_pentagon = |x: usize| pentagon.contains(&x);
    let options: Vec<Vec<usize>> = (0..5)
        .map(|i| {
            if i == k {
                vec![outer]
            } else {
                g.neighbors(pentagon[i]).iter().copied().filter(|&x| !on_pentagon(x)).collect()
            }
        })
        .collect();
    let mut found = Vec::new();
    let mut chosen = [usize::MAX; 5];
    extend_outer(g, pentagon, &options, 0, &mut chosen, &mut found);
    found
}

fn extend_outer(
    g: &Graph,
    pentagon: &[usize; 5],
    options: &[Vec<usize>],
    i: usize,
    chosen: &mut [usize; 5],
    found: &mut Vec<[usize; 10]>,
) {
    if i == 5 {
        let mut verts = [0usize; 10];
        verts[..5].copy_from_slice(pentagon);
        verts[5..].copy_from_slice(chosen);
        let sub = g.induced(&verts);
        let regular = (0..10).all(|v| sub.degree(v) == 3);
        if regular && sub.edge_count() == 15 && sub.girth() == Some(5) {
            let mut sorted = verts;
            sorted.sort_unstable();
            found.push(sorted);
        }
        return;
    }
    for &x in &options[i] {
        if chosen[..i].contains(&x) {
            continue;
        }
        // x may only touch the pentagon at pentagon[i]
        if pentagon.iter().enumerate().any(|(j, &p)| j != i && g.adjacent(p, x)) {
            continue;
        }
        chosen[i] = x;
        extend_outer(g, pentagon, options, i + 1, chosen, found);
    }
    chosen[i] = usize::MAX;
}

#[derive(Clone, Debug, Serialize)]
pub struct PetersenCensus {
    pub cases: usize,
    pub all_unique: bool,
    pub subgraph_count: usize,
    pub pentagons_per_subgraph: Vec<usize>,
    pub subgraphs_per_pentagon: Vec<usize>,
}

/// Runs the extension lemma over every (pentagon, incident edge) pair.
pub fn petersen_census(g: &Graph) -> Result<PetersenCensus> {
    let pentagons = g.pentagons();
    let per_pentagon: Vec<(usize, Vec<[usize; 10]>)> = pentagons
        .par_iter()
        .map(|p| {
            let mut cases = 0;
            let mut subs = Vec::new();
            for k in 0..5 {
                for &x in g.neighbors(p[k]) {
                    if p.contains(&x) {
                        continue;
                    }
                    cases += 1;
                    let ext = petersen_extensions(g, p, k, x);
                    if ext.len() != 1 {
                        return (usize::MAX, ext);
                    }
                    subs.push(ext[0]);
                }
            }
            subs.sort_unstable();
            subs.dedup();
            (cases, subs)
        })
        .collect();
    let mut cases = 0;
    let mut all: BTreeSet<[usize; 10]> = BTreeSet::new();
    let mut subgraphs_per_pentagon = BTreeSet::new();
    for (i, (c, subs)) in per_pentagon.iter().enumerate() {
        if *c == usize::MAX {
            return Err(HsmError::LemmaViolation(format!(
                "pentagon {:?} has an incident edge with {} Petersen extensions",
                pentagons[i],
                subs.len()
            )));
        }
        cases += c;
        subgraphs_per_pentagon.insert(subs.len());
        all.extend(subs.iter().copied());
    }
    let pentagons_per_subgraph: BTreeSet<usize> =
        all.iter().map(|s| g.induced(s).pentagons().len()).collect();
    Ok(PetersenCensus {
        cases,
        all_unique: true,
        subgraph_count: all.len(),
        pentagons_per_subgraph: pentagons_per_subgraph.into_iter().collect(),
        subgraphs_per_pentagon: subgraphs_per_pentagon.into_iter().collect(),
    })
}

/// Labeling of the HSG relative to an edge `uv`.
///
/// Rows and columns are 0-based: `w_label[w] = Some((i, j))` iff `w` is adjacent to
/// `u_nbrs[i]` and `v_nbrs[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFrame {
    pub base_edge: (usize, usize),
    pub u_nbrs: [usize; 6],
    pub v_nbrs: [usize; 6],
    pub w_label: Vec<Option<(usize, usize)>>,
    pub w_vertex: [[usize; 6]; 6],
}

impl EdgeFrame {
    #[inline]
    pub fn at(&self, row: usize, col: usize) -> usize {
        self.w_vertex[row][col]
    }

    pub fn label(&self, w: usize) -> Option<(usize, usize)> {
        self.w_label[w]
    }
}

/// Builds the row/column labeling of `W` for the edge `(u, v)`.
pub fn edge_frame(g: &Graph, edge: (usize, usize)) -> Result<EdgeFrame> {
    let (u, v) = edge;
    if !g.adjacent(u, v) {
        return Err(HsmError::InvalidArgument(format!("({u},{v}) is not an edge")));
    }
    let take6 = |x: usize, other: usize| -> Result<[usize; 6]> {
        let list: Vec<usize> = g.neighbors(x).iter().copied().filter(|&y| y != other).collect();
        list.try_into()
            .map_err(|l: Vec<usize>| HsmError::Labeling(format!("vertex {x} has {} other neighbours", l.len())))
    };
    let u_nbrs = take6(u, v)?;
    let v_nbrs = take6(v, u)?;
    let mut w_label = vec![None; g.vertex_count()];
    let mut w_vertex = [[usize::MAX; 6]; 6];
    let framed: BTreeSet<usize> = [u, v].iter().chain(&u_nbrs).chain(&v_nbrs).copied().collect();
    if framed.len() != 14 {
        return Err(HsmError::Labeling("framed vertices are not distinct".into()));
    }
    for w in 0..g.vertex_count() {
        if framed.contains(&w) {
            continue;
        }
        let rows: Vec<usize> = (0..6).filter(|&i| g.adjacent(w, u_nbrs[i])).collect();
        let cols: Vec<usize> = (0..6).filter(|&j| g.adjacent(w, v_nbrs[j])).collect();
        if rows.len() != 1 || cols.len() != 1 {
            return Err(HsmError::Labeling(format!(
                "vertex {w} meets {} u-neighbours and {} v-neighbours",
                rows.len(),
                cols.len()
            )));
        }
        let (i, j) = (rows[0], cols[0]);
        if w_vertex[i][j] != usize::MAX {
            return Err(HsmError::Labeling(format!("label ({i},{j}) used twice")));
        }
        w_vertex[i][j] = w;
        w_label[w] = Some((i, j));
    }
    if w_vertex.iter().flatten().any(|&w| w == usize::MAX) {
        return Err(HsmError::Labeling("some label (i,j) is unused".into()));
    }
    Ok(EdgeFrame { base_edge: edge, u_nbrs, v_nbrs, w_label, w_vertex })
}

/// Graph induced on `W`, relabeled so that vertex `6*i + j` carries label `(i, j)`.
#[derive(Clone, Debug)]
pub struct Sylvester {
    pub graph: Graph,
}

impl Sylvester {
    #[inline]
    pub fn id(row: usize, col: usize) -> usize {
        6 * row + col
    }

    #[inline]
    pub fn label(id: usize) -> (usize, usize) {
        (id / 6, id % 6)
    }
}

/// Induced graph on `W` together with the row/column bullet checks and the crosses lemma.
pub fn sylvester_checks(g: &Graph, frame: &EdgeFrame) -> Result<Sylvester> {
    let order: Vec<usize> = (0..36).map(|k| frame.at(k / 6, k % 6)).collect();
    let syl = g.induced(&order);
    for (a, b) in syl.edges() {
        let (i, j) = Sylvester::label(a);
        let (k, m) = Sylvester::label(b);
        if i == k || j == m {
            return Err(HsmError::Property {
                bullet: "no same-row or same-column edges",
                detail: format!("({i},{j})-({k},{m})"),
            });
        }
        if !syl.adjacent(Sylvester::id(i, m), Sylvester::id(k, j)) {
            return Err(HsmError::LemmaViolation(format!(
                "crosses: ({i},{j})-({k},{m}) present but ({i},{m})-({k},{j}) missing"
            )));
        }
    }
    for a in 0..36 {
        let (i, j) = Sylvester::label(a);
        for other in 0..6 {
            let in_row = syl.neighbors(a).iter().filter(|&&b| Sylvester::label(b).0 == other).count();
            let in_col = syl.neighbors(a).iter().filter(|&&b| Sylvester::label(b).1 == other).count();
            if (other != i && in_row != 1) || (other != j && in_col != 1) {
                return Err(HsmError::Property {
                    bullet: "exactly one neighbour per other row and per other column",
                    detail: format!("vertex ({i},{j}), line {other}"),
                });
            }
        }
    }
    match syl.girth() {
        Some(gi) if gi >= 5 => {}
        other => {
            return Err(HsmError::Property {
                bullet: "no triangles and no squares",
                detail: format!("girth {other:?}"),
            })
        }
    }
    Ok(Sylvester { graph: syl })
}

/// A hexagon of the graph induced by three rows: one vertex per column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WHexagon {
    pub triple: [usize; 3],
    /// Cyclic list of `(row, col)` labels.
    pub cycle: Vec<(usize, usize)>,
}

impl WHexagon {
    pub fn contains_edge(&self, a: (usize, usize), b: (usize, usize)) -> Option<usize> {
        (0..6).find(|&k| {
            let (x, y) = (self.cycle[k], self.cycle[(k + 1) % 6]);
            (x == a && y == b) || (x == b && y == a)
        })
    }

    pub fn position(&self, w: (usize, usize)) -> Option<usize> {
        self.cycle.iter().position(|&x| x == w)
    }
}

/// Splits the graph on three rows into its three hexagons.
pub fn hexagon_decomposition(syl: &Sylvester, triple: [usize; 3]) -> Result<Vec<WHexagon>> {
    let mut t = triple;
    t.sort_unstable();
    if t[0] == t[1] || t[1] == t[2] || t[2] >= 6 {
        return Err(HsmError::InvalidArgument(format!("bad row triple {triple:?}")));
    }
    let verts: Vec<usize> = t.iter().flat_map(|&r| (0..6).map(move |c| Sylvester::id(r, c))).collect();
    let in_set = |x: usize| t.contains(&Sylvester::label(x).0);
    let nbrs = |x: usize| -> Vec<usize> { syl.graph.neighbors(x).iter().copied().filter(|&y| in_set(y)).collect() };
    for &x in &verts {
        if nbrs(x).len() != 2 {
            return Err(HsmError::LemmaViolation(format!("vertex {:?} has degree {} in H3", Sylvester::label(x), nbrs(x).len())));
        }
    }
    let mut seen = BTreeSet::new();
    let mut hexagons = Vec::new();
    for &start in &verts {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start);
        let first = nbrs(start).into_iter().min().expect("degree 2");
        let mut prev = start;
        let mut cur = first;
        while cur != start {
            cycle.push(cur);
            seen.insert(cur);
            let next = nbrs(cur).into_iter().find(|&y| y != prev).expect("degree 2");
            prev = cur;
            cur = next;
        }
        if cycle.len() != 6 {
            return Err(HsmError::LemmaViolation(format!("component of length {} in rows {t:?}", cycle.len())));
        }
        let cols: BTreeSet<usize> = cycle.iter().map(|&x| Sylvester::label(x).1).collect();
        if cols.len() != 6 {
            return Err(HsmError::LemmaViolation(format!("hexagon repeats a column in rows {t:?}")));
        }
        hexagons.push(WHexagon { triple: t, cycle: cycle.into_iter().map(Sylvester::label).collect() });
    }
    if hexagons.len() != 3 {
        return Err(HsmError::LemmaViolation(format!("{} hexagons in rows {t:?}", hexagons.len())));
    }
    Ok(hexagons)
}

/// All 3-subsets of `0..6` in lexicographic order.
pub fn row_triples() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Finds an automorphism mapping edge `e1` onto `e2` (as ordered pairs).
pub fn edge_transport(g: &Graph, e1: (usize, usize), e2: (usize, usize)) -> Option<Vec<usize>> {
    AutomorphismSearch::new(g).extend(&[(e1.0, e2.0), (e1.1, e2.1)])
}

/// Checks that an automorphism carrying `f1`'s base edge to `f2`'s transports the labeled
/// structure: rows go to rows and columns to columns, with the Sylvester graphs matching.
pub fn frames_isomorphic(g: &Graph, f1: &EdgeFrame, f2: &EdgeFrame) -> bool {
    let Some(sigma) = edge_transport(g, f1.base_edge, f2.base_edge) else {
        return false;
    };
    let mut row_map = BTreeMap::new();
    let mut col_map = BTreeMap::new();
    for i in 0..6 {
        let Some(r) = f2.u_nbrs.iter().position(|&x| x == sigma[f1.u_nbrs[i]]) else {
            return false;
        };
        let Some(c) = f2.v_nbrs.iter().position(|&x| x == sigma[f1.v_nbrs[i]]) else {
            return false;
        };
        row_map.insert(i, r);
        col_map.insert(i, c);
    }
    for i in 0..6 {
        for j in 0..6 {
            let w = f1.at(i, j);
            if f2.label(sigma[w]) != Some((row_map[&i], col_map[&j])) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::automorphism_order;

    #[test]
    fn petersen_basic() {
        let p = build_petersen();
        let inv = graph_invariants(&p).unwrap();
        assert_eq!((inv.vertex_count, inv.edge_count, inv.min_degree, inv.max_degree), (10, 15, 3, 3));
        assert_eq!((inv.girth, inv.diameter), (Some(5), 2));
        assert_eq!(automorphism_order(&p), 120);
    }

    #[test]
    fn petersen_pentagons_by_brute_force() {
        // oracle: try every 5-subset and every cyclic order of it
        let p = build_petersen();
        let mut count = 0;
        let n = 10;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() != 5 {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let sub = p.induced(&vs);
            if (0..5).all(|v| sub.degree(v) == 2) && sub.is_connected() {
                count += 1;
            }
        }
        assert_eq!(count, 12);
        assert_eq!(p.pentagons().len(), 12);
    }

    #[test]
    fn hsg_builds() {
        let g = build_hsg().unwrap();
        assert_eq!(g.vertex_count(), 50);
        assert!((0..50).all(|v| g.degree(v) == 7));
    }

    #[test]
    fn frame_rejects_non_edge() {
        let g = build_hsg().unwrap();
        let non = (0..50).find(|&x| x != 0 && !g.adjacent(0, x)).unwrap();
        assert!(edge_frame(&g, (0, non)).is_err());
    }

    #[test]
    fn swapping_u_and_v_transposes_labels() {
        let g = build_hsg().unwrap();
        let (u, v) = g.edges()[0];
        let f = edge_frame(&g, (u, v)).unwrap();
        let t = edge_frame(&g, (v, u)).unwrap();
        for w in 0..50 {
            assert_eq!(f.label(w).map(|(i, j)| (j, i)), t.label(w));
        }
    }

    #[test]
    fn sylvester_is_five_regular_with_ninety_edges() {
        let g = build_hsg().unwrap();
        let f = edge_frame(&g, (0, 1)).unwrap();
        let s = sylvester_checks(&g, &f).unwrap();
        assert_eq!(s.graph.edge_count(), 90);
        assert!((0..36).all(|v| s.graph.degree(v) == 5));
        assert_eq!(s.graph.girth(), Some(5));
    }

    #[test]
    fn sylvester_rejects_broken_crosses() {
        let g = build_hsg().unwrap();
        let f = edge_frame(&g, (0, 1)).unwrap();
        let s = sylvester_checks(&g, &f).unwrap();
        let (a, b) = s.graph.edges()[0];
        let edges: Vec<_> = g
            .edges()
            .into_iter()
            .filter(|&e| e != (f.at(a / 6, a % 6).min(f.at(b / 6, b % 6)), f.at(a / 6, a % 6).max(f.at(b / 6, b % 6))))
            .collect();
        let broken = Graph::from_edges(50, &edges).unwrap();
        assert!(sylvester_checks(&broken, &f).is_err());
    }

    #[test]
    fn h3_degree_two_and_bad_triple() {
        let g = build_hsg().unwrap();
        let f = edge_frame(&g, (0, 1)).unwrap();
        let s = sylvester_checks(&g, &f).unwrap();
        assert!(hexagon_decomposition(&s, [0, 0, 1]).is_err());
        let hex = hexagon_decomposition(&s, [0, 2, 5]).unwrap();
        assert_eq!(hex.iter().map(|h| h.cycle.len()).sum::<usize>(), 18);
    }

    #[test]
    fn extension_on_petersen_itself() {
        let p = build_petersen();
        let pent = p.pentagons()[0];
        let out = p.neighbors(pent[0]).iter().copied().find(|x| !pent.contains(x)).unwrap();
        assert_eq!(petersen_extensions(&p, &pent, 0, out).len(), 1);
    }
}
