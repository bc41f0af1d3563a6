use serde::{Deserialize, Serialize};

use super::Graph;

/// Structural summary of a graph. Every false flag comes with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub n: usize,
    pub m: usize,
    pub is_cubic: bool,
    pub is_subcubic: bool,
    pub is_triangle_free: bool,
    pub is_connected: bool,
    pub is_bridgeless: bool,
    /// A vertex whose degree is not 3, when the graph is not cubic.
    pub degree_witness: Option<usize>,
    pub triangle_witness: Option<[usize; 3]>,
    pub bridge_list: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
    pub block_decomposition: Vec<Vec<usize>>,
}

impl StructureReport {
    pub fn is_cubic_triangle_free_bridgeless(&self) -> bool {
        self.is_cubic && self.is_triangle_free && self.is_bridgeless
    }
}

pub fn analyze(g: &Graph) -> StructureReport {
    let degree_witness = (0..g.n()).find(|&v| g.degree(v) != 3);
    let triangle_witness = find_triangle(g);
    let components = g.components();
    let (bridge_list, block_decomposition) = bridges_and_blocks(g);
    StructureReport {
        n: g.n(),
        m: g.m(),
        is_cubic: degree_witness.is_none(),
        is_subcubic: g.is_subcubic(),
        is_triangle_free: triangle_witness.is_none(),
        is_connected: components.len() <= 1,
        is_bridgeless: bridge_list.is_empty(),
        degree_witness,
        triangle_witness,
        bridge_list,
        components,
        block_decomposition,
    }
}

fn find_triangle(g: &Graph) -> Option<[usize; 3]> {
    for &(u, v) in g.edges() {
        // both lists are sorted: merge-intersect
        let (a, b) = (g.neighbours(u), g.neighbours(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let mut t = [u, v, a[i]];
                    t.sort_unstable();
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Bridges (low-link) and blocks (biconnected components, as sorted vertex
/// sets; isolated vertices form singleton blocks).
fn bridges_and_blocks(g: &Graph) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut parent = vec![UNSEEN; n];
    let mut next = vec![0usize; n];
    let mut time = 0;
    let mut bridges = Vec::new();
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        let mut stack = vec![root];
        while let Some(&v) = stack.last() {
            if next[v] < g.degree(v) {
                let w = g.neighbours(v)[next[v]];
                next[v] += 1;
                if disc[w] == UNSEEN {
                    parent[w] = v;
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    stack.push(w);
                } else if w != parent[v] && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            let p = parent[v];
            if p == UNSEEN {
                continue;
            }
            low[p] = low[p].min(low[v]);
            if low[v] > disc[p] {
                bridges.push((p.min(v), p.max(v)));
            }
            if low[v] >= disc[p] {
                let mut block = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    block.push(a);
                    block.push(b);
                    if (a, b) == (p, v) {
                        break;
                    }
                }
                block.sort_unstable();
                block.dedup();
                blocks.push(block);
            }
        }
    }
    bridges.sort_unstable();
    blocks.sort();
    (bridges, blocks)
}

/// The edge boundary of `set`: edges with exactly one end inside.
pub fn boundary(g: &Graph, set: &[usize]) -> Vec<(usize, usize)> {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    g.edges().iter().copied().filter(|&(u, v)| inside[u] != inside[v]).collect()
}

/// All 4-cycles through `v`, each as `[v, a, b, c]` with `a < c`.
pub fn four_cycles_through(g: &Graph, v: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    let nb = g.neighbours(v);
    for (i, &a) in nb.iter().enumerate() {
        for &c in &nb[i + 1..] {
            for &b in g.neighbours(a) {
                if b != v && g.has_edge(b, c) {
                    out.push([v, a, b, c]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn p72_is_in_class() {
        let r = analyze(&named::p72());
        assert!(r.is_cubic && r.is_triangle_free && r.is_bridgeless && r.is_connected);
        assert!(r.triangle_witness.is_none() && r.bridge_list.is_empty());
        assert_eq!(r.block_decomposition.len(), 1);
    }

    #[test]
    fn k4_has_triangle_witness() {
        let r = analyze(&named::complete(4));
        assert!(r.is_cubic);
        assert!(!r.is_triangle_free);
        assert_eq!(r.triangle_witness, Some([0, 1, 2]));
    }

    #[test]
    fn two_triangles_and_a_bridge() {
        let t = named::cycle(3);
        let g = named::join(&t, &t, &[(2, 3)]);
        let r = analyze(&g);
        assert_eq!(r.bridge_list, vec![(2, 3)]);
        assert!(!r.is_bridgeless);
        assert_eq!(r.block_decomposition, vec![vec![0, 1, 2], vec![2, 3], vec![3, 4, 5]]);
    }

    #[test]
    fn path_blocks_are_edges() {
        let r = analyze(&named::path(4));
        assert_eq!(r.bridge_list.len(), 3);
        assert_eq!(r.block_decomposition.len(), 3);
        assert!(!r.is_cubic && r.degree_witness == Some(0));
    }

    #[test]
    fn boundary_examples() {
        let p = named::petersen();
        let all: Vec<usize> = (0..10).collect();
        assert!(boundary(&p, &all).is_empty());
        assert_eq!(boundary(&p, &[3]).len(), 3);
        let outer = boundary(&p, &[0, 1, 2, 3, 4]);
        assert_eq!(outer, (0..5).map(|i| (i, i + 5)).collect::<Vec<_>>());
    }

    #[test]
    fn four_cycles() {
        assert!(four_cycles_through(&named::petersen(), 0).is_empty());
        // each K33 vertex lies on 6 four-cycles
        assert_eq!(four_cycles_through(&named::k33(), 0).len(), 6);
    }
}
