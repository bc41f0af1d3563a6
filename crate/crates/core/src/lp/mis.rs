//! Maximal independent sets by Bron-Kerbosch on the complement, with pivoting.

use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MAX_VERTICES: usize = 40;

/// Every maximal independent set, in increasing bitmask order.
pub fn maximal_independent_sets(g: &Graph, max_vertices: usize) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if n > max_vertices.min(bits::MAX_MASK_VERTICES) {
        return Err(Error::TooLarge { n, max: max_vertices.min(bits::MAX_MASK_VERTICES) });
    }
    let full = bits::full(n);
    let non_adj: Vec<VertexSet> = (0..n).map(|v| full & !g.closed_neighbour_mask(v)).collect();
    let mut out = Vec::new();
    expand(&non_adj, 0, full, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn expand(non_adj: &[VertexSet], r: VertexSet, p: VertexSet, x: VertexSet, out: &mut Vec<VertexSet>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = bits::members(p | x).max_by_key(|&u| (non_adj[u] & p).count_ones()).expect("p is nonempty");
    let (mut p, mut x) = (p, x);
    for v in bits::members(p & !non_adj[pivot]) {
        expand(non_adj, r | bits::bit(v), p & non_adj[v], x & non_adj[v], out);
        p &= !bits::bit(v);
        x |= bits::bit(v);
    }
}

/// Reference enumeration over all subsets (n <= 20).
pub fn maximal_independent_sets_brute_force(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    assert!(n <= 20);
    (0..1u64 << n)
        .filter(|&s| g.is_independent(s) && (0..n).all(|v| bits::contains(s, v) || g.neighbour_mask(v) & s != 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn small_cases() {
        assert_eq!(maximal_independent_sets(&named::cycle(5), 40).unwrap().len(), 5);
        assert_eq!(maximal_independent_sets(&named::path(2), 40).unwrap(), vec![1, 2]);
    }

    #[test]
    fn matches_brute_force() {
        for g in [named::petersen(), named::p72(), named::k33(), named::circular_ladder(5), named::cycle(7), named::bridged_k33_pair()] {
            assert_eq!(maximal_independent_sets(&g, 40).unwrap(), maximal_independent_sets_brute_force(&g));
        }
    }

    #[test]
    fn guard() {
        assert!(maximal_independent_sets(&named::cycle(41), 40).is_err());
    }
}
