use std::ops::ControlFlow;

use serde::Serialize;

use super::cuts::{minimal_small_cuts, EdgeCut};
use super::matching::for_each_perfect_matching;
use super::TwoFactor;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug)]
pub struct SelectOptions {
    /// Return the first qualifying 2-factor instead of maximizing cycle count.
    pub first_qualifying: bool,
    /// Upper bound on the number of perfect matchings examined.
    pub max_matchings: usize,
}

impl Default for SelectOptions {
    fn default() -> Self {
        SelectOptions { first_qualifying: false, max_matchings: 1 << 20 }
    }
}

#[derive(Clone, Debug)]
pub struct Selection {
    pub two_factor: TwoFactor,
    pub matchings_examined: usize,
    pub qualifying: usize,
    pub max_cycles: usize,
}

fn meets_all(cuts: &[EdgeCut], f_mask: u128) -> bool {
    cuts.iter().all(|c| c.mask & f_mask != 0)
}

/// True iff the cycles of `tf` meet every minimal edge-cut of size 3 or 4.
pub fn satisfies_ks_condition(g: &Graph, tf: &TwoFactor) -> Result<bool> {
    let cuts = minimal_small_cuts(g)?;
    Ok(meets_all(&cuts, tf.f_edge_mask(g)))
}

/// Among 2-factors meeting every minimal 3- and 4-edge-cut, one with the most
/// cycles; ties go to the lexicographically smallest matching.
pub fn select_two_factor(g: &Graph, opts: SelectOptions) -> Result<Selection> {
    select_two_factor_where(g, opts, |_| true)
}

/// As [`select_two_factor`], restricted to 2-factors accepted by `filter`.
pub fn select_two_factor_where<P>(g: &Graph, opts: SelectOptions, filter: P) -> Result<Selection>
where
    P: Fn(&TwoFactor) -> bool,
{
    g.require_mask_scale()?;
    if !g.is_cubic() {
        return Err(Error::Class("2-factor selection needs a cubic graph".into()));
    }
    let cuts = minimal_small_cuts(g)?;
    let mut best: Option<TwoFactor> = None;
    let mut examined = 0usize;
    let mut qualifying = 0usize;
    let mut overflow = false;
    let mut failure = None;
    let _ = for_each_perfect_matching(g, |m| {
        if examined == opts.max_matchings {
            overflow = true;
            return ControlFlow::Break(());
        }
        examined += 1;
        let tf = match TwoFactor::from_matching(g, m) {
            Ok(tf) => tf,
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        };
        if !meets_all(&cuts, tf.f_edge_mask(g)) || !filter(&tf) {
            return ControlFlow::Continue(());
        }
        qualifying += 1;
        if best.as_ref().is_none_or(|b| tf.num_cycles() > b.num_cycles()) {
            best = Some(tf);
        }
        if opts.first_qualifying {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    if overflow {
        return Err(Error::ExplosionGuard {
            what: "perfect matchings",
            estimate: examined as u128 + 1,
            limit: opts.max_matchings as u128,
        });
    }
    let tf = best.ok_or(Error::NoQualifyingTwoFactor)?;
    Ok(Selection { max_cycles: tf.num_cycles(), two_factor: tf, matchings_examined: examined, qualifying })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitVerdict {
    /// `|E(D1, D2)|`.
    pub crossing: usize,
    /// `2 <= crossing <= 4`.
    pub clause_i: bool,
    /// `crossing <= 3` whenever one of the cycles has length 5.
    pub clause_ii: bool,
}

impl SplitVerdict {
    pub fn holds(&self) -> bool {
        self.clause_i && self.clause_ii
    }
}

fn check_is_cycle(g: &Graph, d: &[usize]) -> Result<()> {
    if d.len() < 3 {
        return Err(Error::Invalid(format!("cycle of length {}", d.len())));
    }
    for (i, &x) in d.iter().enumerate() {
        let y = d[(i + 1) % d.len()];
        if !g.has_edge(x, y) {
            return Err(Error::Invalid(format!("{x}-{y} is not an edge")));
        }
    }
    Ok(())
}

/// Checks the two edge-count constraints on a pair of disjoint cycles that
/// together cover the vertex set of cycle `c` of `tf`.
pub fn check_split_cycle(g: &Graph, tf: &TwoFactor, c: usize, d1: &[usize], d2: &[usize]) -> Result<SplitVerdict> {
    check_is_cycle(g, d1)?;
    check_is_cycle(g, d2)?;
    let mut side = vec![0u8; g.n()];
    for &x in d1 {
        side[x] |= 1;
    }
    for &x in d2 {
        side[x] |= 2;
    }
    let mut want: Vec<usize> = tf.cycles()[c].clone();
    want.sort_unstable();
    let mut got: Vec<usize> = d1.iter().chain(d2).copied().collect();
    got.sort_unstable();
    if want != got || d1.iter().chain(d2).any(|&x| side[x] == 3) {
        return Err(Error::Invalid("cycles do not partition the vertex set of the cycle".into()));
    }
    let crossing = g.edges().iter().filter(|&&(a, b)| side[a] | side[b] == 3 && side[a] != side[b]).count();
    let five = d1.len() == 5 || d2.len() == 5;
    Ok(SplitVerdict { crossing, clause_i: (2..=4).contains(&crossing), clause_ii: !five || crossing <= 3 })
}

/// Every way of covering the vertices of cycle `c` by two disjoint cycles of `g`.
/// Such a pair is a 2-factor of the induced subgraph, so it is the complement
/// of a matching that covers exactly the vertices of degree 3 there.
pub fn find_cycle_splits(g: &Graph, tf: &TwoFactor, c: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let verts = tf.cycles()[c].clone();
    let (h, map) = g.induced(&verts);
    let deg3: Vec<usize> = (0..h.n()).filter(|&x| h.degree(x) == 3).collect();
    let mut out = Vec::new();
    let mut removed: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; h.n()];
    split_rec(&h, &deg3, 0, &mut used, &mut removed, &mut |rem| {
        let rest = h.without_edges(rem);
        let comps = rest.components();
        if comps.len() == 2 && comps.iter().all(|k| k.len() >= 3) {
            let cyc = |k: &Vec<usize>| -> Vec<usize> { trace_cycle(&rest, k[0]).into_iter().map(|x| map[x]).collect() };
            out.push((cyc(&comps[0]), cyc(&comps[1])));
        }
    });
    out
}

fn split_rec<F: FnMut(&[(usize, usize)])>(
    h: &Graph,
    deg3: &[usize],
    i: usize,
    used: &mut [bool],
    removed: &mut Vec<(usize, usize)>,
    emit: &mut F,
) {
    let Some(&u) = deg3[i..].iter().find(|&&x| !used[x]) else {
        emit(removed);
        return;
    };
    used[u] = true;
    for &v in h.neighbours(u) {
        if h.degree(v) == 3 && !used[v] {
            used[v] = true;
            removed.push((u.min(v), u.max(v)));
            split_rec(h, deg3, i, used, removed, emit);
            removed.pop();
            used[v] = false;
        }
    }
    used[u] = false;
}

fn trace_cycle(h: &Graph, start: usize) -> Vec<usize> {
    let mut cyc = vec![start];
    let (mut prev, mut cur) = (start, h.neighbours(start)[0]);
    while cur != start {
        cyc.push(cur);
        let nb = h.neighbours(cur);
        let nxt = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = nxt;
    }
    cyc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn petersen_two_pentagons() {
        let g = named::petersen();
        let s = select_two_factor(&g, SelectOptions::default()).unwrap();
        assert_eq!(s.max_cycles, 2);
        assert!(s.two_factor.cycles().iter().all(|c| c.len() == 5));
        assert!(satisfies_ks_condition(&g, &s.two_factor).unwrap());
    }

    #[test]
    fn k33_hexagon() {
        let g = named::k33();
        let s = select_two_factor(&g, SelectOptions::default()).unwrap();
        assert_eq!(s.two_factor.cycles().len(), 1);
        assert_eq!(s.two_factor.cycles()[0].len(), 6);
    }

    #[test]
    fn first_qualifying_stops_early() {
        let g = named::p72();
        let s = select_two_factor(&g, SelectOptions { first_qualifying: true, ..Default::default() }).unwrap();
        assert_eq!(s.qualifying, 1);
    }

    #[test]
    fn guard_trips() {
        let g = named::petersen();
        let err = select_two_factor(&g, SelectOptions { first_qualifying: false, max_matchings: 2 }).unwrap_err();
        assert!(matches!(err, Error::ExplosionGuard { .. }));
    }

    #[test]
    fn split_clauses() {
        // Two 5-cycles joined by a perfect matching, traversed as a 10-cycle.
        let g = named::petersen();
        let tf = TwoFactor::from_cycles(&g, vec![vec![0, 1, 2, 3, 4], vec![5, 7, 9, 6, 8]]).unwrap();
        assert!(check_split_cycle(&g, &tf, 0, &[0, 1, 2], &[3, 4]).is_err());
        let ladder = named::circular_ladder(4);
        let ham = TwoFactor::from_cycles(&ladder, vec![vec![0, 1, 2, 3, 7, 6, 5, 4]]).unwrap();
        let v = check_split_cycle(&ladder, &ham, 0, &[0, 1, 5, 4], &[2, 3, 7, 6]).unwrap();
        assert_eq!(v.crossing, 4);
        assert!(v.holds());
        let splits = find_cycle_splits(&ladder, &ham, 0);
        assert!(!splits.is_empty());
        for (d1, d2) in splits {
            assert!(check_split_cycle(&ladder, &ham, 0, &d1, &d2).is_ok());
        }
    }
}
