//! 2-factors of cubic graphs: the cycles `F`, the complementary perfect
//! matching `M`, and navigation along the oriented cycles.

mod cuts;
mod matching;
mod select;

pub use cuts::{minimal_small_cuts, EdgeCut};
pub use matching::{count_perfect_matchings_brute_force, enumerate_perfect_matchings, MatchingEnumeration};
pub use select::{
    check_split_cycle, find_cycle_splits, satisfies_ks_condition, select_two_factor, select_two_factor_where,
    Selection, SelectOptions, SplitVerdict,
};

use serde::{Deserialize, Serialize};

use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A 2-factor `F` (oriented cycles) with its complementary perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFactor {
    cycles: Vec<Vec<usize>>,
    mate: Vec<usize>,
    cycle_of: Vec<usize>,
    pos: Vec<usize>,
}

/// JSON form: cycles as vertex arrays in orientation order, matching as pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactorJson {
    pub cycles: Vec<Vec<usize>>,
    pub matching: Vec<(usize, usize)>,
}

impl TwoFactor {
    /// Uses the given cycles and orientations verbatim.
    pub fn from_cycles(g: &Graph, cycles: Vec<Vec<usize>>) -> Result<Self> {
        let n = g.n();
        let bad = |msg: String| Error::InvalidTwoFactor(msg);
        if !g.is_cubic() {
            return Err(bad("graph is not cubic".into()));
        }
        let mut cycle_of = vec![usize::MAX; n];
        let mut pos = vec![0; n];
        let mut on_f = vec![Vec::with_capacity(2); n];
        for (ci, c) in cycles.iter().enumerate() {
            if c.len() < 3 {
                return Err(bad(format!("cycle {ci} has length {}", c.len())));
            }
            for (i, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(bad(format!("vertex {x} out of range")));
                }
                if cycle_of[x] != usize::MAX {
                    return Err(bad(format!("vertex {x} lies on two cycles")));
                }
                cycle_of[x] = ci;
                pos[x] = i;
                let y = c[(i + 1) % c.len()];
                if !g.has_edge(x, y) {
                    return Err(bad(format!("{x}-{y} is not an edge")));
                }
                on_f[x].push(y);
                on_f[y].push(x);
            }
        }
        if let Some(x) = (0..n).find(|&x| cycle_of[x] == usize::MAX) {
            return Err(bad(format!("vertex {x} is not covered")));
        }
        let mut mate = vec![usize::MAX; n];
        for x in 0..n {
            let rest: Vec<usize> = g.neighbours(x).iter().copied().filter(|y| !on_f[x].contains(y)).collect();
            if rest.len() != 1 {
                return Err(bad(format!("vertex {x} has {} non-cycle edges", rest.len())));
            }
            mate[x] = rest[0];
        }
        Ok(TwoFactor { cycles, mate, cycle_of, pos })
    }

    /// The 2-factor complementary to a perfect matching, each cycle listed from
    /// its minimum vertex and continued toward that vertex's smaller F-neighbour.
    pub fn from_matching(g: &Graph, matching: &[(usize, usize)]) -> Result<Self> {
        let n = g.n();
        let mut mate = vec![usize::MAX; n];
        for &(a, b) in matching {
            if !g.has_edge(a, b) {
                return Err(Error::InvalidTwoFactor(format!("{a}-{b} is not an edge")));
            }
            if mate[a] != usize::MAX || mate[b] != usize::MAX {
                return Err(Error::InvalidTwoFactor(format!("{a}-{b} overlaps the matching")));
            }
            mate[a] = b;
            mate[b] = a;
        }
        if let Some(x) = (0..n).find(|&x| mate[x] == usize::MAX) {
            return Err(Error::InvalidTwoFactor(format!("vertex {x} is unmatched")));
        }
        let f_nbrs = |x: usize| -> Vec<usize> { g.neighbours(x).iter().copied().filter(|&y| y != mate[x]).collect() };
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let nb = f_nbrs(start);
            if nb.len() != 2 {
                return Err(Error::InvalidTwoFactor(format!("vertex {start} has F-degree {}", nb.len())));
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let (mut prev, mut cur) = (start, nb[0].min(nb[1]));
            while cur != start {
                cyc.push(cur);
                seen[cur] = true;
                let nb = f_nbrs(cur);
                let nxt = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = nxt;
            }
            cycles.push(cyc);
        }
        Self::from_cycles(g, cycles)
    }

    pub fn from_json(g: &Graph, json: &TwoFactorJson) -> Result<Self> {
        let tf = Self::from_cycles(g, json.cycles.clone())?;
        let mut given: Vec<(usize, usize)> = json.matching.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        given.sort_unstable();
        if given != tf.matching_edges() {
            return Err(Error::InvalidTwoFactor("matching is not the complement of the cycles".into()));
        }
        Ok(tf)
    }

    pub fn to_json(&self) -> TwoFactorJson {
        TwoFactorJson { cycles: self.cycles.clone(), matching: self.matching_edges() }
    }

    /// The same 2-factor with every cycle orientation reversed.
    pub fn reversed(&self) -> TwoFactor {
        let cycles: Vec<Vec<usize>> = self
            .cycles
            .iter()
            .map(|c| {
                let mut r = vec![c[0]];
                r.extend(c[1..].iter().rev());
                r
            })
            .collect();
        let mut pos = self.pos.clone();
        for c in &cycles {
            for (i, &x) in c.iter().enumerate() {
                pos[x] = i;
            }
        }
        TwoFactor { cycles, mate: self.mate.clone(), cycle_of: self.cycle_of.clone(), pos }
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, u: usize) -> usize {
        self.mate[u]
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle_of(&self, u: usize) -> usize {
        self.cycle_of[u]
    }

    pub fn cycle_containing(&self, u: usize) -> &[usize] {
        &self.cycles[self.cycle_of[u]]
    }

    pub fn cycle_len(&self, u: usize) -> usize {
        self.cycles[self.cycle_of[u]].len()
    }

    pub fn position(&self, u: usize) -> usize {
        self.pos[u]
    }

    /// The vertex `k` steps from `u` along the orientation (`k < 0` goes back).
    pub fn navigate(&self, u: usize, k: i64) -> usize {
        let c = &self.cycles[self.cycle_of[u]];
        let len = c.len() as i64;
        let p = (self.pos[u] as i64 + k).rem_euclid(len);
        c[p as usize]
    }

    pub fn next(&self, u: usize) -> usize {
        self.navigate(u, 1)
    }

    pub fn prev(&self, u: usize) -> usize {
        self.navigate(u, -1)
    }

    pub fn same_cycle(&self, x: usize, y: usize) -> bool {
        self.cycle_of[x] == self.cycle_of[y]
    }

    /// Forward distance from `x` to `y` on their common cycle.
    pub fn dist(&self, x: usize, y: usize) -> usize {
        debug_assert!(self.same_cycle(x, y));
        let len = self.cycle_len(x);
        (self.pos[y] + len - self.pos[x]) % len
    }

    /// The forward subpath from `x` to `y`, both ends included. For `x == y`
    /// this is the whole cycle starting at `x`, with `x` repeated at the end.
    pub fn path(&self, x: usize, y: usize) -> Vec<usize> {
        let d = if x == y { self.cycle_len(x) } else { self.dist(x, y) };
        (0..=d as i64).map(|k| self.navigate(x, k)).collect()
    }

    /// True when `uu'` is a chord of the cycle through `u`.
    pub fn is_chord(&self, u: usize) -> bool {
        self.same_cycle(u, self.mate[u])
    }

    /// Matching edges as sorted `(min, max)` pairs.
    pub fn matching_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n()).filter(|&u| u < self.mate[u]).map(|u| (u, self.mate[u])).collect()
    }

    pub fn cycle_mask(&self, ci: usize) -> VertexSet {
        bits::from_vertices(self.cycles[ci].iter().copied())
    }

    /// Bitmask over `g.edges()` indices of the cycle edges.
    pub fn f_edge_mask(&self, g: &Graph) -> u128 {
        let mut mask = 0u128;
        for c in &self.cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                mask |= 1u128 << g.edge_index(x, y).expect("cycle edge");
            }
        }
        mask
    }
}
