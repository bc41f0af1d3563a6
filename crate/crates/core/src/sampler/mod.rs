//! The random independent set (Phases 1 to 4) with an exact enumeration backend and a
//! seeded Monte Carlo backend.

mod exact;
mod mc;
mod phi;

pub use exact::{Situation, SituationSpace};
pub use mc::{monte_carlo, monte_carlo_with, run_phases_1_4, McReport, SampledRun};
pub use phi::{phi_outcomes, runs_of, Run};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{fmt_rational, Rational, Scalar};
use crate::two_factor::TwoFactor;

/// Which feasible set Phase 4 consults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase4Reading {
    /// Feasibility as computed at the start of Phase 3.
    #[default]
    Start,
    /// Feasibility recomputed after the Phase 3 additions.
    Recompute,
}

/// Enumeration guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_orientations: u64,
    pub max_branches: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_orientations: 1 << 16, max_branches: 1 << 20 }
    }
}

/// Graph, 2-factor and the masks every phase needs.
#[derive(Clone, Debug)]
pub struct Context {
    pub graph: Graph,
    pub tf: TwoFactor,
    pub reading: Phase4Reading,
    nbr: Vec<VertexSet>,
    matching: Vec<(usize, usize)>,
}

impl Context {
    pub fn new(g: &Graph, tf: &TwoFactor) -> Result<Self> {
        g.require_mask_scale()?;
        if tf.n() != g.n() {
            return Err(Error::InvalidTwoFactor(format!("2-factor has {} vertices, graph {}", tf.n(), g.n())));
        }
        for u in 0..g.n() {
            if !g.has_edge(u, tf.mate(u)) || !g.has_edge(u, tf.next(u)) {
                return Err(Error::InvalidTwoFactor(format!("2-factor does not fit the graph at {u}")));
            }
        }
        Ok(Context {
            nbr: (0..g.n()).map(|v| g.neighbour_mask(v)).collect(),
            matching: tf.matching_edges(),
            graph: g.clone(),
            tf: tf.clone(),
            reading: Phase4Reading::Start,
        })
    }

    pub fn with_reading(mut self, reading: Phase4Reading) -> Self {
        self.reading = reading;
        self
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Matching edges `(a, b)` with `a < b`, in the order used by orientation codes.
    pub fn matching(&self) -> &[(usize, usize)] {
        &self.matching
    }

    /// Heads of the orientation with code `code`: bit `i` set makes the
    /// smaller endpoint of matching edge `i` the head.
    pub fn heads_of(&self, code: u64) -> VertexSet {
        self.matching
            .iter()
            .enumerate()
            .fold(0, |h, (i, &(a, b))| h | bits::bit(if code >> i & 1 == 1 { a } else { b }))
    }

    fn has_nbr_in(&self, v: usize, set: VertexSet) -> bool {
        self.nbr[v] & set != 0
    }

    /// `I` after Phase 2, given the heads and `sigma^1`.
    pub fn after_phase2(&self, heads: VertexSet, s1: VertexSet) -> VertexSet {
        let lonely = bits::members(heads).filter(|&v| !self.has_nbr_in(v, heads)).fold(0, |m, v| m | bits::bit(v));
        s1 | lonely
    }

    /// Vertices outside `i` with no neighbour in `i`.
    pub fn feasible(&self, i: VertexSet) -> VertexSet {
        (0..self.n()).filter(|&v| !bits::contains(i, v) && !self.has_nbr_in(v, i)).fold(0, |m, v| m | bits::bit(v))
    }

    /// Output of Phase 4 from `I` after Phase 2, the Phase-3 feasible set and `sigma^3`.
    pub fn finish(&self, i2: VertexSet, feasible: VertexSet, s3: VertexSet) -> VertexSet {
        let i3 = i2 | s3;
        let pool = match self.reading {
            Phase4Reading::Start => feasible,
            Phase4Reading::Recompute => self.feasible(i3),
        };
        let lonely = bits::members(pool).filter(|&v| !self.has_nbr_in(v, pool)).fold(0, |m, v| m | bits::bit(v));
        i3 | lonely
    }
}

/// Law of a random independent set.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<S> {
    pub n: usize,
    pub probs: BTreeMap<VertexSet, S>,
}

pub type ExactDistribution = Distribution<Rational>;

impl<S: Scalar> Distribution<S> {
    pub fn total(&self) -> S {
        self.probs.values().fold(S::zero(), |a, p| a + p.clone())
    }

    pub fn marginals(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        for (&set, p) in &self.probs {
            for v in bits::members(set) {
                out[v] = out[v].clone() + p.clone();
            }
        }
        out
    }

    pub fn probability(&self, set: VertexSet) -> S {
        self.probs.get(&set).cloned().unwrap_or_else(S::zero)
    }
}

#[derive(Serialize)]
pub struct DistributionJson {
    pub n: usize,
    pub sets: Vec<(Vec<usize>, String)>,
}

impl ExactDistribution {
    pub fn to_json(&self) -> DistributionJson {
        DistributionJson {
            n: self.n,
            sets: self.probs.iter().map(|(&s, p)| (bits::to_vec(s), fmt_rational(p))).collect(),
        }
    }
}

/// Exact law of the Phase-4 output together with per-vertex marginals.
pub fn enumerate_distribution(g: &Graph, tf: &TwoFactor, limits: Limits) -> Result<(ExactDistribution, Vec<Rational>)> {
    let ctx = Context::new(g, tf)?;
    let space = SituationSpace::<Rational>::enumerate(&ctx, limits)?;
    let dist = space.distribution();
    let marg = dist.marginals();
    Ok((dist, marg))
}
