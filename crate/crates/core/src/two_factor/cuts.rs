use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An edge-cut `E(X, V - X)` with `X = side`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCut {
    pub edges: Vec<(usize, usize)>,
    pub side: Vec<usize>,
    pub minimal: bool,
    #[serde(skip)]
    pub mask: u128,
}

struct Scanner<'a> {
    g: &'a Graph,
    inc: Vec<Vec<(usize, usize)>>,
}

impl<'a> Scanner<'a> {
    fn new(g: &'a Graph) -> Self {
        let mut inc = vec![Vec::new(); g.n()];
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            inc[a].push((b, i));
            inc[b].push((a, i));
        }
        Scanner { g, inc }
    }

    /// Vertices reachable from 0 once the masked edges are removed.
    fn reach(&self, removed: u128) -> u64 {
        let mut seen = 1u64;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &(y, e) in &self.inc[x] {
                if removed >> e & 1 == 0 && seen >> y & 1 == 0 {
                    seen |= 1 << y;
                    stack.push(y);
                }
            }
        }
        seen
    }

    fn disconnects(&self, removed: u128) -> bool {
        self.reach(removed).count_ones() as usize != self.g.n()
    }

    fn is_minimal(&self, idx: &[usize]) -> bool {
        (0..idx.len()).all(|skip| {
            let sub = idx.iter().enumerate().filter(|&(j, _)| j != skip).fold(0u128, |m, (_, &e)| m | 1 << e);
            sub == 0 || !self.disconnects(sub)
        })
    }
}

/// All inclusionwise minimal edge-cuts with 3 or 4 edges, found by scanning
/// every 3- and 4-subset of the edge set.
pub fn minimal_small_cuts(g: &Graph) -> Result<Vec<EdgeCut>> {
    g.require_mask_scale()?;
    if g.m() > 128 {
        return Err(Error::TooLarge { n: g.m(), max: 128 });
    }
    if !g.is_connected() {
        return Err(Error::Class("edge-cut scan needs a connected graph".into()));
    }
    if g.n() < 2 {
        return Ok(Vec::new());
    }
    let sc = Scanner::new(g);
    let m = g.m();
    let mut cuts: Vec<EdgeCut> = (0..m)
        .into_par_iter()
        .flat_map_iter(|a| {
            let sc = &sc;
            let mut found = Vec::new();
            for b in a + 1..m {
                for c in b + 1..m {
                    let abc = [a, b, c];
                    if sc.disconnects(mask_of(&abc)) && sc.is_minimal(&abc) {
                        found.push(sc_cut(sc, &abc));
                    }
                    for d in c + 1..m {
                        let abcd = [a, b, c, d];
                        if sc.disconnects(mask_of(&abcd)) && sc.is_minimal(&abcd) {
                            found.push(sc_cut(sc, &abcd));
                        }
                    }
                }
            }
            found
        })
        .collect();
    cuts.sort_by(|x, y| (x.edges.len(), &x.edges).cmp(&(y.edges.len(), &y.edges)));
    Ok(cuts)
}

fn mask_of(idx: &[usize]) -> u128 {
    idx.iter().fold(0u128, |m, &e| m | 1 << e)
}

fn sc_cut(sc: &Scanner<'_>, idx: &[usize]) -> EdgeCut {
    let mask = mask_of(idx);
    let side = sc.reach(mask);
    EdgeCut {
        edges: idx.iter().map(|&e| sc.g.edges()[e]).collect(),
        side: crate::bits::to_vec(side),
        minimal: true,
        mask,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{boundary, named};

    /// Reference: every vertex subset containing 0 whose boundary has 3 or 4
    /// edges and whose two sides are both connected.
    fn oracle(g: &Graph) -> Vec<Vec<(usize, usize)>> {
        let n = g.n();
        let mut out = Vec::new();
        for s in 0u64..(1 << (n - 1)) {
            let side = (s << 1) | 1;
            if side == crate::bits::full(n) {
                continue;
            }
            let xs = crate::bits::to_vec(side);
            let rest: Vec<usize> = (0..n).filter(|v| side >> v & 1 == 0).collect();
            let b = boundary(g, &xs);
            if (3..=4).contains(&b.len()) && g.induced(&xs).0.is_connected() && g.induced(&rest).0.is_connected() {
                out.push(b);
            }
        }
        out.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        out
    }

    #[test]
    fn matches_bond_oracle() {
        for g in [named::petersen(), named::complete(4), named::k33(), named::circular_ladder(4), named::bridged_k33_pair()] {
            let got: Vec<_> = minimal_small_cuts(&g).unwrap().into_iter().map(|c| c.edges).collect();
            assert_eq!(got, oracle(&g));
        }
    }

    #[test]
    fn petersen_stars_present() {
        let g = named::petersen();
        let cuts = minimal_small_cuts(&g).unwrap();
        for v in 0..10 {
            let star = boundary(&g, &[v]);
            assert!(cuts.iter().any(|c| c.edges == star));
        }
    }

    #[test]
    fn side_matches_edges() {
        let g = named::petersen();
        for c in minimal_small_cuts(&g).unwrap() {
            assert_eq!(boundary(&g, &c.side), c.edges);
        }
    }
}
