//! Brute-force oracles shared by the integration tests.

use hsmanifold::graph::Graph;

/// Number of 5-cycles, counting closed vertex walks of length 5 without repeats.
pub fn pentagons_brute_force(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut count = 0;
    for a in 0..n {
        for &b in g.neighbors(a) {
            for &c in g.neighbors(b) {
                if c == a {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d == a || d == b {
                        continue;
                    }
                    for &e in g.neighbors(d) {
                        if e != a && e != b && e != c && g.adjacent(e, a) {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    // each cycle is counted from 5 starts in 2 directions
    count / 10
}

/// Induced Petersen subgraphs, counted as ordered pairs of disjoint pentagons spanning a
/// cubic induced subgraph. A cubic graph of girth 5 on 10 vertices is the Petersen graph,
/// which has 12 pentagons, each disjoint from exactly one other.
pub fn petersen_subgraphs_brute_force(g: &Graph) -> usize {
    let pentagons = g.pentagons();
    let mut pairs = 0;
    for p in &pentagons {
        for q in &pentagons {
            if p.iter().any(|x| q.contains(x)) {
                continue;
            }
            let vs: Vec<usize> = p.iter().chain(q.iter()).copied().collect();
            if vs.iter().all(|&v| vs.iter().filter(|&&w| g.adjacent(v, w)).count() == 3) {
                pairs += 1;
            }
        }
    }
    pairs / 12
}
