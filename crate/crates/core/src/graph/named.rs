//! Small named graphs used as fixtures throughout the crate and its tests.

use super::Graph;

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("named graph is simple")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    build(n, edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
    build(a + b, edges)
}

pub fn k33() -> Graph {
    complete_bipartite(3, 3)
}

pub fn cycle(n: usize) -> Graph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// Generalised Petersen graph P(n, k): outer cycle `0..n`, inner vertices
/// `n..2n` with `n+i ~ n+(i+k) mod n`, spokes `i ~ n+i`.
pub fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    build(2 * n, edges)
}

pub fn petersen() -> Graph {
    generalized_petersen(5, 2)
}

/// P(7,2), the 14-vertex graph with independence number 5.
pub fn p72() -> Graph {
    generalized_petersen(7, 2)
}

/// Circular ladder (prism) CL_n: two n-cycles joined by rungs `i ~ n+i`.
pub fn circular_ladder(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    build(2 * n, edges)
}

/// Replaces edge `uv` by a path `u - w - v` through a new vertex `w = n`.
pub fn subdivide(g: &Graph, u: usize, v: usize) -> Graph {
    let w = g.n();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != (u.min(v), u.max(v)))
        .collect();
    edges.push((u, w));
    edges.push((w, v));
    build(w + 1, edges)
}

/// Disjoint union of `a` and `b` (b's vertices shifted by `a.n()`), plus
/// extra edges given in the combined numbering.
pub fn join(a: &Graph, b: &Graph, extra: &[(usize, usize)]) -> Graph {
    let off = a.n();
    let mut edges: Vec<(usize, usize)> = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|&(u, v)| (u + off, v + off)));
    edges.extend_from_slice(extra);
    build(a.n() + b.n(), edges)
}

/// Two copies of K_{3,3} with one edge subdivided, joined by a bridge between
/// the subdivision vertices: subcubic, triangle-free, one bridge.
pub fn bridged_k33_pair() -> Graph {
    let half = subdivide(&k33(), 0, 3);
    let w = half.n() - 1;
    join(&half, &half, &[(w, half.n() + w)])
}
