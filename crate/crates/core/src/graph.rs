//! Finite simple graphs, BFS invariants and automorphism search.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{HsmError, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    matrix: Vec<Vec<bool>>,
}

/// Degree extremes, girth and diameter of a connected graph.
///
/// `girth` is `None` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphInvariants {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub girth: Option<usize>,
    pub diameter: usize,
}

/// JSON exchange form: `{"n": int, "edges": [[a, b], ...]}` with sorted edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            matrix: vec![vec![false; n]; n],
        }
    }

    /// Builds a graph from an edge list. Loops are rejected and repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        let n = self.vertex_count();
        if a >= n || b >= n {
            return Err(HsmError::InvalidArgument(format!("edge ({a},{b}) out of range for n={n}")));
        }
        if a == b {
            return Err(HsmError::InvalidArgument(format!("self-loop at {a}")));
        }
        if !self.matrix[a][b] {
            self.matrix[a][b] = true;
            self.matrix[b][a] = true;
            self.adj[a].push(b);
            self.adj[b].push(a);
            self.adj[a].sort_unstable();
            self.adj[b].sort_unstable();
        }
        Ok(())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.matrix[a][b]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(a, b)` with `a < b`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.vertex_count() {
            for &b in &self.adj[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The subgraph induced on `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    g.add_edge(i, j).expect("indices in range");
                }
            }
        }
        g
    }

    /// BFS distances from `src`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count()).map(|v| self.distances_from(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// Length of a shortest cycle, or `None` for a forest.
    ///
    /// Runs a BFS from every vertex and takes the shortest non-tree edge closure, which is
    /// exact for the minimum over all roots.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = VecDeque::new();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn invariants(&self) -> Result<GraphInvariants> {
        graph_invariants(self)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.vertex_count(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }

    /// All 5-cycles as vertex lists, each listed once (rotation starts at its minimum vertex,
    /// second entry smaller than the last).
    pub fn pentagons(&self) -> Vec<[usize; 5]> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            for &b in &self.adj[a] {
                if b <= a {
                    continue;
                }
                for &c in &self.adj[b] {
                    if c <= a || c == b {
                        continue;
                    }
                    for &d in &self.adj[c] {
                        if d <= a || d == b || d == c {
                            continue;
                        }
                        for &e in &self.adj[d] {
                            if e <= a || e == b || e == c || e == d || e < b {
                                continue;
                            }
                            if self.adjacent(e, a) {
                                out.push([a, b, c, d, e]);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Exact vertex/edge counts, degree extremes, girth and diameter.
pub fn graph_invariants(g: &Graph) -> Result<GraphInvariants> {
    let dm = g.distance_matrix();
    let mut diameter = 0;
    for row in &dm {
        for &d in row {
            if d == usize::MAX {
                return Err(HsmError::Disconnected);
            }
            diameter = diameter.max(d);
        }
    }
    let degrees = (0..g.vertex_count()).map(|v| g.degree(v));
    Ok(GraphInvariants {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        min_degree: degrees.clone().min().unwrap_or(0),
        max_degree: degrees.max().unwrap_or(0),
        girth: g.girth(),
        diameter,
    })
}

/// Backtracking automorphism search with distance-profile pruning.
///
/// Vertices are assigned images in BFS order from the first fixed point, so after the
/// first assignment every vertex has an already-mapped neighbour and its candidate images
/// are confined to the neighbourhood of that neighbour's image.
pub struct AutomorphismSearch<'a> {
    g: &'a Graph,
    dist: Vec<Vec<usize>>,
}

impl<'a> AutomorphismSearch<'a> {
    pub fn new(g: &'a Graph) -> Self {
        AutomorphismSearch { g, dist: g.distance_matrix() }
    }

    /// Finds one automorphism extending the partial map `fixed` (pairs `(v, image)`).
    pub fn extend(&self, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
        let n = self.g.vertex_count();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for &(v, w) in fixed {
            if image[v] != usize::MAX && image[v] != w {
                return None;
            }
            if used[w] && image[v] != w {
                return None;
            }
            image[v] = w;
            used[w] = true;
        }
        for &(a, wa) in fixed {
            for &(b, wb) in fixed {
                if self.g.adjacent(a, b) != self.g.adjacent(wa, wb) || self.dist[a][b] != self.dist[wa][wb] {
                    return None;
                }
            }
        }
        let order = self.vertex_order(fixed);
        let base: Vec<(usize, usize)> = fixed.to_vec();
        if self.backtrack(&order, 0, &mut image, &mut used, &base) {
            Some(image)
        } else {
            None
        }
    }

    fn vertex_order(&self, fixed: &[(usize, usize)]) -> Vec<usize> {
        let n = self.g.vertex_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for &(v, _) in fixed {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        for start in 0..n {
            if queue.is_empty() && !seen[start] {
                seen[start] = true;
                queue.push_back(start);
            }
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in self.g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }

    fn backtrack(
        &self,
        order: &[usize],
        pos: usize,
        image: &mut [usize],
        used: &mut [bool],
        base: &[(usize, usize)],
    ) -> bool {
        let Some(&v) = order.get(pos) else {
            return true;
        };
        if image[v] != usize::MAX {
            return self.backtrack(order, pos + 1, image, used, base);
        }
        let anchor = self.g.neighbors(v).iter().copied().find(|&w| image[w] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(w) => self.g.neighbors(image[w]).to_vec(),
            None => (0..self.g.vertex_count()).collect(),
        };
        for c in candidates {
            if used[c] || self.g.degree(c) != self.g.degree(v) {
                continue;
            }
            if base.iter().any(|&(b, wb)| self.dist[v][b] != self.dist[c][wb]) {
                continue;
            }
            let consistent = order[..pos]
                .iter()
                .all(|&u| image[u] == usize::MAX || self.g.adjacent(u, v) == self.g.adjacent(image[u], c));
            if !consistent {
                continue;
            }
            image[v] = c;
            used[c] = true;
            if self.backtrack(order, pos + 1, image, used, base) {
                return true;
            }
            image[v] = usize::MAX;
            used[c] = false;
        }
        false
    }
}

/// Order of the automorphism group via a pointwise-stabilizer chain, plus the
/// automorphisms found along the way (they generate the group).
pub fn automorphism_group_order(g: &Graph) -> (u64, Vec<Vec<usize>>) {
    let n = g.vertex_count();
    if n == 0 {
        return (1, Vec::new());
    }
    let search = AutomorphismSearch::new(g);
    let mut base: Vec<(usize, usize)> = Vec::new();
    let mut order: u64 = 1;
    let mut generators = Vec::new();
    let bfs = search.vertex_order(&[(0, 0)]);
    for &b in &bfs {
        let dist_profile = |v: usize| -> Vec<usize> { base.iter().map(|&(x, _)| search.dist[v][x]).collect() };
        let want = dist_profile(b);
        let mut orbit = 1u64;
        for c in 0..n {
            if c == b || g.degree(c) != g.degree(b) || dist_profile(c) != want {
                continue;
            }
            let mut partial = base.clone();
            partial.push((b, c));
            if let Some(aut) = search.extend(&partial) {
                orbit += 1;
                generators.push(aut);
            }
        }
        order *= orbit;
        base.push((b, b));
    }
    (order, generators)
}

pub fn automorphism_order(g: &Graph) -> u64 {
    automorphism_group_order(g).0
}

/// Orbits of the group generated by `gens` acting on `0..n`.
pub fn orbits(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < orbit.len() {
            let v = orbit[i];
            for g in gens {
                let w = g[v];
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    orbit.push(w);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    let n = g.vertex_count();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    g.edges().iter().all(|&(a, b)| g.adjacent(perm[a], perm[b]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn k2_is_acyclic_with_diameter_one() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let inv = graph_invariants(&g).unwrap();
        assert_eq!(inv.girth, None);
        assert_eq!(inv.diameter, 1);
    }

    #[test]
    fn disconnected_graph_is_an_error() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(graph_invariants(&g), Err(HsmError::Disconnected));
    }

    #[test]
    fn loops_rejected() {
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn cycle_invariants_and_symmetry() {
        let g = cycle(7);
        let inv = graph_invariants(&g).unwrap();
        assert_eq!((inv.girth, inv.diameter), (Some(7), 3));
        assert_eq!(automorphism_order(&g), 14);
    }

    #[test]
    fn single_vertex_has_trivial_group() {
        assert_eq!(automorphism_order(&Graph::empty(1)), 1);
    }

    #[test]
    fn complete_graph_group_is_symmetric_group() {
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, b));
            }
        }
        let g = Graph::from_edges(5, &edges).unwrap();
        assert_eq!(automorphism_order(&g), 120);
    }

    #[test]
    fn pentagon_enumeration_on_c5() {
        assert_eq!(cycle(5).pentagons().len(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let g = cycle(6);
        let j = g.to_json();
        assert_eq!(j.edges[0], [0, 1]);
        assert_eq!(Graph::from_json(&j).unwrap(), g);
    }
}
