use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{phi::runs_of, Context, Distribution, Limits};
use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One situation with everything the later phases derived from it.
#[derive(Clone, Debug, PartialEq)]
pub struct Situation<S> {
    pub heads: VertexSet,
    pub s1: VertexSet,
    pub s3: VertexSet,
    /// Feasible set at the start of Phase 3.
    pub feasible: VertexSet,
    pub output: VertexSet,
    pub prob: S,
}

/// Every situation of the sampler with its exact probability.
#[derive(Clone, Debug)]
pub struct SituationSpace<S> {
    pub n: usize,
    pub situations: Vec<Situation<S>>,
}

/// Product of the `Phi` laws of the given runs, as `(subset, probability)`.
fn product<S: Scalar>(runs: &[super::Run]) -> Vec<(VertexSet, S)> {
    let mut acc = vec![(0, S::one())];
    for r in runs {
        let opts = r.options();
        acc = acc
            .into_iter()
            .flat_map(|(m, p)| opts.iter().map(move |&(o, d)| (m | o, p.clone() * S::from_ratio(1, d as i64))))
            .collect();
    }
    acc
}

fn branch_count(runs: &[super::Run]) -> u64 {
    runs.iter()
        .map(|r| r.options().len() as u64)
        .fold(1u64, |a, b| a.saturating_mul(b))
}

impl<S: Scalar> SituationSpace<S> {
    pub fn enumerate(ctx: &Context, limits: Limits) -> Result<Self> {
        let m = ctx.matching().len();
        let orientations = 1u128 << m;
        if orientations > limits.max_orientations as u128 {
            return Err(Error::ExplosionGuard {
                what: "orientations",
                estimate: orientations,
                limit: limits.max_orientations as u128,
            });
        }
        let seen = AtomicU64::new(0);
        let over = |count: u64| -> Result<()> {
            let total = seen.fetch_add(count, Ordering::Relaxed).saturating_add(count);
            if total > limits.max_branches {
                Err(Error::ExplosionGuard { what: "situations", estimate: total as u128, limit: limits.max_branches as u128 })
            } else {
                Ok(())
            }
        };
        let base = S::half_pow(m as u32);
        let parts: Vec<Vec<Situation<S>>> = (0..orientations as u64)
            .into_par_iter()
            .map(|code| {
                let heads = ctx.heads_of(code);
                let active = runs_of(&ctx.tf, heads);
                over(branch_count(&active))?;
                let mut out = Vec::new();
                for (s1, p1) in product::<S>(&active) {
                    let i2 = ctx.after_phase2(heads, s1);
                    let feasible = ctx.feasible(i2);
                    let fruns = runs_of(&ctx.tf, feasible);
                    let extra = branch_count(&fruns);
                    if extra > 1 {
                        over(extra - 1)?;
                    }
                    for (s3, p3) in product::<S>(&fruns) {
                        out.push(Situation {
                            heads,
                            s1,
                            s3,
                            feasible,
                            output: ctx.finish(i2, feasible, s3),
                            prob: base.clone() * p1.clone() * p3,
                        });
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(SituationSpace { n: ctx.n(), situations: parts.into_iter().flatten().collect() })
    }

    pub fn len(&self) -> usize {
        self.situations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.situations.is_empty()
    }

    pub fn probability_where<P: Fn(&Situation<S>) -> bool>(&self, pred: P) -> S {
        self.situations.iter().filter(|s| pred(s)).fold(S::zero(), |a, s| a + s.prob.clone())
    }

    /// `P(event | cond)`, or zero when `cond` has probability zero.
    pub fn conditional<C, E>(&self, cond: C, event: E) -> S
    where
        C: Fn(&Situation<S>) -> bool,
        E: Fn(&Situation<S>) -> bool,
    {
        let pc = self.probability_where(&cond);
        if pc.is_zero() {
            return S::zero();
        }
        self.probability_where(|s| cond(s) && event(s)) / pc
    }

    pub fn distribution(&self) -> Distribution<S> {
        let mut probs = std::collections::BTreeMap::new();
        for s in &self.situations {
            let e = probs.entry(s.output).or_insert_with(S::zero);
            *e = e.clone() + s.prob.clone();
        }
        Distribution { n: self.n, probs }
    }

    pub fn marginals(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        for s in &self.situations {
            for v in bits::members(s.output) {
                out[v] = out[v].clone() + s.prob.clone();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Graph};
    use crate::scalar::{ratio, Rational};
    use crate::two_factor::{select_two_factor, SelectOptions};
    use num_traits::One;

    fn space(g: &Graph) -> SituationSpace<Rational> {
        let tf = select_two_factor(g, SelectOptions::default()).unwrap().two_factor;
        SituationSpace::enumerate(&Context::new(g, &tf).unwrap(), Limits::default()).unwrap()
    }

    #[test]
    fn total_probability_is_one() {
        for g in [named::petersen(), named::k33(), named::circular_ladder(5)] {
            let sp = space(&g);
            assert!(sp.probability_where(|_| true).is_one());
            assert!(sp.distribution().total().is_one());
        }
    }

    #[test]
    fn outputs_are_independent() {
        let g = named::p72();
        for s in space(&g).situations {
            assert!(g.is_independent(s.output));
        }
    }

    #[test]
    fn k33_law_by_hand() {
        // One hexagon, three chords as the matching.
        let g = named::k33();
        let sp = space(&g);
        assert_eq!(sp.situations.iter().map(|s| s.heads).collect::<std::collections::BTreeSet<_>>().len(), 8);
        let marg = sp.marginals();
        assert!(marg.iter().all(|p| *p >= ratio(88, 256)));
    }

    #[test]
    fn guard_reports_estimate() {
        let g = named::petersen();
        let tf = select_two_factor(&g, SelectOptions::default()).unwrap().two_factor;
        let ctx = Context::new(&g, &tf).unwrap();
        let err = SituationSpace::<Rational>::enumerate(&ctx, Limits { max_orientations: 16, max_branches: 1 << 20 });
        assert!(matches!(err, Err(Error::ExplosionGuard { estimate: 32, .. })));
        let err = SituationSpace::<Rational>::enumerate(&ctx, Limits { max_orientations: 64, max_branches: 10 });
        assert!(matches!(err, Err(Error::ExplosionGuard { what: "situations", .. })));
    }
}
