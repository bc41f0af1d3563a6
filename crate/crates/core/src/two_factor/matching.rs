use std::ops::ControlFlow;

use crate::bits;
use crate::graph::Graph;

/// Perfect matchings in enumeration order. Each matching is a sorted list of
/// `(min, max)` pairs; the order is lexicographic in those lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingEnumeration {
    pub matchings: Vec<Vec<(usize, usize)>>,
    pub truncated: bool,
}

/// Lists perfect matchings by always branching on the lowest unmatched vertex,
/// stopping after `limit` results.
pub fn enumerate_perfect_matchings(g: &Graph, limit: usize) -> MatchingEnumeration {
    let mut matchings = Vec::new();
    let mut truncated = false;
    let _ = for_each_perfect_matching(g, |m| {
        if matchings.len() == limit {
            truncated = true;
            return ControlFlow::Break(());
        }
        matchings.push(m.to_vec());
        ControlFlow::Continue(())
    });
    MatchingEnumeration { matchings, truncated }
}

/// Streams perfect matchings in lexicographic order to `visit`.
pub(crate) fn for_each_perfect_matching<F>(g: &Graph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
{
    let n = g.n();
    if n % 2 == 1 {
        return ControlFlow::Continue(());
    }
    let mut matched = vec![false; n];
    let mut stack = Vec::with_capacity(n / 2);
    recurse(g, 0, &mut matched, &mut stack, &mut visit)
}

fn recurse<F>(
    g: &Graph,
    from: usize,
    matched: &mut [bool],
    stack: &mut Vec<(usize, usize)>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
{
    let Some(u) = (from..g.n()).find(|&x| !matched[x]) else {
        return visit(stack);
    };
    matched[u] = true;
    for &v in g.neighbours(u) {
        if matched[v] {
            continue;
        }
        matched[v] = true;
        stack.push((u, v));
        let flow = recurse(g, u + 1, matched, stack, visit);
        stack.pop();
        matched[v] = false;
        flow?;
    }
    matched[u] = false;
    ControlFlow::Continue(())
}

/// Counts perfect matchings by scanning every edge subset of size n/2.
/// Intended as an independent check for small graphs.
pub fn count_perfect_matchings_brute_force(g: &Graph) -> u64 {
    let m = g.m();
    assert!(m <= 24, "brute force limited to 24 edges");
    let n = g.n();
    if n % 2 == 1 {
        return 0;
    }
    let want = n / 2;
    let full = bits::full(n);
    let mut count = 0;
    for subset in 0u32..(1u32 << m) {
        if subset.count_ones() as usize != want {
            continue;
        }
        let mut covered = 0u64;
        let mut ok = true;
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            if subset >> i & 1 == 1 {
                let e = bits::bit(a) | bits::bit(b);
                if covered & e != 0 {
                    ok = false;
                    break;
                }
                covered |= e;
            }
        }
        if ok && covered == full {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn known_counts() {
        assert_eq!(enumerate_perfect_matchings(&named::complete(4), 100).matchings.len(), 3);
        assert_eq!(enumerate_perfect_matchings(&named::k33(), 100).matchings.len(), 6);
        assert_eq!(enumerate_perfect_matchings(&named::petersen(), 100).matchings.len(), 6);
        assert_eq!(count_perfect_matchings_brute_force(&named::petersen()), 6);
    }

    #[test]
    fn lexicographic_and_truncated() {
        let e = enumerate_perfect_matchings(&named::k33(), 100);
        assert!(!e.truncated);
        assert!(e.matchings.windows(2).all(|w| w[0] < w[1]));
        let t = enumerate_perfect_matchings(&named::k33(), 2);
        assert!(t.truncated);
        assert_eq!(t.matchings, e.matchings[..2].to_vec());
    }

    #[test]
    fn odd_graph_has_none() {
        assert!(enumerate_perfect_matchings(&named::cycle(5), 10).matchings.is_empty());
    }
}
