//! Canonical labelling by individualization and refinement, and random cubic graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;

fn refine(g: &Graph, colours: &mut Vec<usize>) {
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..g.n())
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbours(v).iter().map(|&w| colours[w]).collect();
                ns.sort_unstable();
                (colours[v], ns)
            })
            .collect();
        let next = rank(&keys);
        let before = count_distinct(colours);
        *colours = next;
        if count_distinct(colours) == before {
            return;
        }
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

fn count_distinct(c: &[usize]) -> usize {
    let mut s = c.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

fn search(g: &Graph, colours: Vec<usize>, best: &mut Option<Vec<(usize, usize)>>) {
    let n = g.n();
    let mut sizes = vec![0; n];
    for &c in &colours {
        sizes[c] += 1;
    }
    let Some(target) = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c)) else {
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (colours[a], colours[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            *best = Some(edges);
        }
        return;
    };
    for v in (0..n).filter(|&v| colours[v] == target) {
        let keys: Vec<(usize, bool)> = (0..n).map(|w| (colours[w], w != v)).collect();
        let mut next = rank(&keys);
        refine(g, &mut next);
        search(g, next, best);
    }
}

/// Sorted edge list of a canonical relabelling; isomorphic graphs give equal lists.
pub fn canonical_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut colours = vec![0; g.n()];
    refine(g, &mut colours);
    let mut best = None;
    search(g, colours, &mut best);
    best.unwrap_or_default()
}

/// Canonical relabelling of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    Graph::from_edges(g.n(), canonical_edges(g)).expect("relabelling keeps the graph simple")
}

/// A uniformly random simple cubic graph on `n` vertices (pairing model with rejection).
pub fn random_cubic<R: Rng>(n: usize, rng: &mut R) -> Option<Graph> {
    if n % 2 == 1 || n < 4 {
        return None;
    }
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    loop {
        points.shuffle(rng);
        let edges: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = Graph::from_edges(n, edges) {
            return Some(g);
        }
    }
}
