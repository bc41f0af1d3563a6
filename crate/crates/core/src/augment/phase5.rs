use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use super::Phase5Plan;
use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sampler::ExactDistribution;
use crate::scalar::{fmt_rational, Rational, Scalar};

/// Law of the Phase-5 output.
#[derive(Clone, Debug, PartialEq)]
pub struct Phase5Outcome {
    pub distribution: ExactDistribution,
    pub marginals: Vec<Rational>,
    /// Per plan row: probability the vertex is added.
    pub added: Vec<Rational>,
    /// Per plan row: probability the sponsor is removed.
    pub removed: Vec<Rational>,
    /// `biases[j][i]`: conditional coin bias of row `i` given `J_j`.
    pub biases: Vec<Vec<Rational>>,
}

fn nbrx_mask(plan: &Phase5Plan, i: usize) -> u64 {
    plan.nbrx[i].iter().fold(0, |m, &l| m | 1 << l)
}

fn apply(plan: &Phase5Plan, j: VertexSet, added: u64) -> VertexSet {
    let mut out = j;
    for i in bits::members(added) {
        out = (out | bits::bit(plan.order[i])) & !bits::bit(plan.sponsors[i]);
    }
    out
}

/// Coin biases and the law of the added rows, given the Phase-4 output `J_j`.
fn column_law(plan: &Phase5Plan, j: usize, max_branches: u64) -> Result<(Vec<Rational>, BTreeMap<u64, Rational>)> {
    let r = plan.order.len();
    let mut states: BTreeMap<u64, Rational> = BTreeMap::from([(0, Rational::one())]);
    let mut biases = vec![Rational::zero(); r];
    for i in 0..r {
        let p = plan.entry(i, j);
        if p.is_zero() {
            continue;
        }
        let block = nbrx_mask(plan, i);
        let q = states.iter().filter(|(&m, _)| m & block == 0).fold(Rational::zero(), |a, (_, x)| a + x);
        if q < p {
            return Err(Error::BiasInfeasible {
                vertex: plan.order[i],
                msg: format!("q = {} < p = {}", fmt_rational(&q), fmt_rational(&p)),
            });
        }
        let b = &p / &q;
        let mut next = BTreeMap::new();
        for (m, x) in states {
            if m & block != 0 {
                *next.entry(m).or_insert_with(Rational::zero) += x;
                continue;
            }
            let yes = &x * &b;
            let no = x - &yes;
            if !yes.is_zero() {
                *next.entry(m | 1 << i).or_insert_with(Rational::zero) += yes;
            }
            if !no.is_zero() {
                *next.entry(m).or_insert_with(Rational::zero) += no;
            }
        }
        if next.len() as u64 > max_branches {
            return Err(Error::ExplosionGuard { what: "phase-5 branches", estimate: next.len() as u128, limit: max_branches as u128 });
        }
        states = next;
        biases[i] = b;
    }
    Ok((biases, states))
}

/// Conditional coin biases for every column of the plan.
pub fn phase5_biases(plan: &Phase5Plan, max_branches: u64) -> Result<Vec<Vec<Rational>>> {
    check_rows(plan)?;
    (0..plan.sets.len()).into_par_iter().map(|j| column_law(plan, j, max_branches).map(|c| c.0)).collect()
}

fn check_rows(plan: &Phase5Plan) -> Result<()> {
    if plan.order.len() > 64 {
        return Err(Error::TooLarge { n: plan.order.len(), max: 64 });
    }
    Ok(())
}

/// Pushes the Phase-4 law through Phase 5 by enumerating every coin outcome.
pub fn exact_phase5_distribution(plan: &Phase5Plan, phase4: &ExactDistribution, max_branches: u64) -> Result<Phase5Outcome> {
    check_rows(plan)?;
    let r = plan.order.len();
    let cols = (0..plan.sets.len())
        .into_par_iter()
        .map(|j| column_law(plan, j, max_branches))
        .collect::<Result<Vec<_>>>()?;
    let mut probs: BTreeMap<VertexSet, Rational> = BTreeMap::new();
    let mut added = vec![Rational::zero(); r];
    let mut biases = Vec::with_capacity(cols.len());
    for (j, (b, states)) in cols.into_iter().enumerate() {
        let pj = &plan.set_probs[j];
        for (m, x) in states {
            let w = x * pj;
            for i in bits::members(m) {
                added[i] += &w;
            }
            *probs.entry(apply(plan, plan.sets[j], m)).or_insert_with(Rational::zero) += w;
        }
        biases.push(b);
    }
    let distribution = ExactDistribution { n: phase4.n, probs };
    let marginals = distribution.marginals();
    let removed = added.clone();
    Ok(Phase5Outcome { distribution, marginals, added, removed, biases })
}

/// One Phase-5 run on the Phase-4 output `j`. Sets outside the plan's support pass through.
pub fn run_phase5<R: Rng>(plan: &Phase5Plan, biases: &[Vec<Rational>], j: VertexSet, rng: &mut R) -> VertexSet {
    let Some(col) = plan.column_of(j) else {
        return j;
    };
    let mut m = 0u64;
    for i in 0..plan.order.len() {
        let b = &biases[col][i];
        if b.is_zero() || m & nbrx_mask(plan, i) != 0 {
            continue;
        }
        if rng.gen::<f64>() < Scalar::to_f64(b) {
            m |= 1 << i;
        }
    }
    apply(plan, j, m)
}

/// True iff `out` is independent, differs from `j` only by added deficient vertices and removed sponsors.
pub fn phase5_safe(g: &Graph, plan: &Phase5Plan, j: VertexSet, out: VertexSet) -> bool {
    let deficient = bits::from_vertices(plan.order.iter().copied());
    let sponsors = bits::from_vertices(plan.sponsors.iter().copied());
    g.is_independent(out) && (out & !j) & !deficient == 0 && (j & !out) & !sponsors == 0
}
