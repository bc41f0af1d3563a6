use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{favourable, receptivity, sponsor, DeficiencyRecord};
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sampler::ExactDistribution;
use crate::scalar::{fmt_rational, ratio, Rational};

/// Greedy replacement plan. Row `i` belongs to `order[i]`, column `j` to `sets[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Phase5Plan {
    pub order: Vec<usize>,
    pub sponsors: Vec<usize>,
    pub eps_abs: Vec<Rational>,
    /// Earlier deficient neighbours, as row indices.
    pub nbrx: Vec<Vec<usize>>,
    pub sets: Vec<VertexSet>,
    pub set_probs: Vec<Rational>,
    /// Sparse rows: column index to `p(u_i, J_j)`.
    pub p: Vec<BTreeMap<usize, Rational>>,
    pub receptivity: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanCheck {
    pub support_favourable: bool,
    pub row_sums_exact: bool,
    pub column_sums_bounded: bool,
    pub eta_bounded: bool,
}

impl PlanCheck {
    pub fn holds(&self) -> bool {
        self.support_favourable && self.row_sums_exact && self.column_sums_bounded
    }
}

#[derive(Serialize)]
pub struct PlanJson {
    pub order: Vec<usize>,
    pub sponsors: Vec<usize>,
    pub entries: Vec<(usize, Vec<usize>, String)>,
}

impl Phase5Plan {
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.p[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn column_of(&self, set: VertexSet) -> Option<usize> {
        self.sets.binary_search(&set).ok()
    }

    /// `sum_j p(u_i, J_j) p(J_j)`.
    pub fn row_mass(&self, i: usize) -> Rational {
        self.p[i].iter().fold(Rational::zero(), |a, (&j, x)| a + x * &self.set_probs[j])
    }

    /// `eta(u_i)` in units of 1/256.
    pub fn eta(&self, i: usize) -> Rational {
        self.nbrx[i].iter().fold(self.eps_abs[i].clone(), |a, &l| a + &self.eps_abs[l])
    }

    pub fn check(&self, g: &Graph) -> PlanCheck {
        let r = self.order.len();
        let support_favourable = (0..r).all(|i| {
            self.p[i]
                .iter()
                .all(|(&j, x)| x.is_zero() || favourable(g, self.order[i], self.sponsors[i], self.sets[j]))
        });
        let row_sums_exact = (0..r).all(|i| self.row_mass(i) == &self.eps_abs[i] / ratio(256, 1));
        let column_sums_bounded = (0..r).all(|i| {
            (0..self.sets.len()).all(|j| {
                let s = self.nbrx[i].iter().fold(self.entry(i, j), |a, &l| a + self.entry(l, j));
                s <= Rational::one() && self.p[i].values().all(|x| *x >= Rational::zero())
            })
        });
        let eta_bounded = (0..r).all(|i| self.eta(i) <= &self.eps_abs[i] * ratio(3, 1));
        PlanCheck { support_favourable, row_sums_exact, column_sums_bounded, eta_bounded }
    }

    pub fn to_json(&self) -> PlanJson {
        let mut entries = vec![];
        for (i, row) in self.p.iter().enumerate() {
            for (&j, x) in row {
                if !x.is_zero() {
                    entries.push((self.order[i], crate::bits::to_vec(self.sets[j]), fmt_rational(x)));
                }
            }
        }
        PlanJson { order: self.order.clone(), sponsors: self.sponsors.clone(), entries }
    }
}

/// Deficient vertices sorted by `|epsilon|`, ties by id.
pub fn default_order(records: &[DeficiencyRecord]) -> Vec<usize> {
    let mut order: Vec<usize> = records.iter().filter(|r| r.is_deficient()).map(|r| r.vertex).collect();
    order.sort_by(|&a, &b| (-&records[a].epsilon).cmp(&-&records[b].epsilon).then(a.cmp(&b)));
    order
}

/// Greedy plan in the default order.
pub fn build_phase5_plan(g: &Graph, records: &[DeficiencyRecord], dist: &ExactDistribution) -> Result<Phase5Plan> {
    build_phase5_plan_with_order(g, records, dist, &default_order(records))
}

/// Greedy plan for a caller-chosen order, which must list every deficient vertex with `|epsilon|` nondecreasing.
pub fn build_phase5_plan_with_order(
    g: &Graph,
    records: &[DeficiencyRecord],
    dist: &ExactDistribution,
    order: &[usize],
) -> Result<Phase5Plan> {
    let mut expected = default_order(records);
    let mut given = order.to_vec();
    expected.sort_unstable();
    given.sort_unstable();
    if expected != given {
        return Err(Error::Invalid("order must list each deficient vertex once".into()));
    }
    let eps_abs: Vec<Rational> = order.iter().map(|&u| -&records[u].epsilon).collect();
    if eps_abs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invalid("order is not monotone in |epsilon|".into()));
    }
    let sponsors = order.iter().map(|&u| sponsor(records, u)).collect::<Result<Vec<_>>>()?;
    let nbrx: Vec<Vec<usize>> = (0..order.len())
        .map(|i| (0..i).filter(|&l| g.has_edge(order[i], order[l])).collect())
        .collect();
    let sets: Vec<VertexSet> = dist.probs.keys().copied().collect();
    let set_probs: Vec<Rational> = dist.probs.values().cloned().collect();
    let unit = ratio(1, 256);
    let mut plan = Phase5Plan {
        order: order.to_vec(),
        sponsors,
        eps_abs,
        nbrx,
        sets,
        set_probs,
        p: vec![BTreeMap::new(); order.len()],
        receptivity: vec![],
    };
    for i in 0..order.len() {
        let (u, s) = (order[i], plan.sponsors[i]);
        let rho = receptivity(g, u, s, dist);
        if rho < plan.eta(i) * &unit {
            return Err(Error::Precondition {
                vertex: u,
                msg: format!("receptivity {} is below eta/256 = {}", fmt_rational(&rho), fmt_rational(&(plan.eta(i) * &unit))),
            });
        }
        plan.receptivity.push(rho);
        let target = &plan.eps_abs[i] * &unit;
        let mut mass = Rational::zero();
        for j in 0..plan.sets.len() {
            if !favourable(g, u, s, plan.sets[j]) {
                continue;
            }
            let first = (&target - &mass) / &plan.set_probs[j];
            let second = plan.nbrx[i].iter().fold(Rational::one(), |a, &l| a - plan.entry(l, j));
            let x = std::cmp::max(std::cmp::min(first, second), Rational::zero());
            if !x.is_zero() {
                mass += &x * &plan.set_probs[j];
                plan.p[i].insert(j, x);
            }
        }
    }
    Ok(plan)
}
