use super::{lemma4_lower_bound, SensitivePair, Template};
use crate::bits;
use crate::error::Result;
use crate::graph::Graph;
use crate::sampler::{Context, Limits, SituationSpace};
use crate::scalar::Scalar;
use crate::two_factor::TwoFactor;

/// Evaluates template events against the exact situation space.
#[derive(Clone, Debug)]
pub struct EventEngine<S> {
    pub ctx: Context,
    pub space: SituationSpace<S>,
}

#[derive(Clone, Debug)]
pub struct Lemma4Report<S> {
    pub weight: u32,
    pub pairs: Vec<SensitivePair>,
    pub admissible: bool,
    pub q_exact: S,
    pub q_upper: S,
    pub bound: S,
    pub probability: S,
}

impl<S: Scalar> Lemma4Report<S> {
    pub fn sound(&self) -> bool {
        self.probability >= self.bound
    }

    pub fn q_within_upper(&self) -> bool {
        self.q_exact <= self.q_upper
    }
}

impl<S: Scalar> EventEngine<S> {
    pub fn new(g: &Graph, tf: &TwoFactor, limits: Limits) -> Result<Self> {
        let ctx = Context::new(g, tf)?;
        let space = SituationSpace::enumerate(&ctx, limits)?;
        Ok(EventEngine { ctx, space })
    }

    pub fn from_context(ctx: Context, limits: Limits) -> Result<Self> {
        let space = SituationSpace::enumerate(&ctx, limits)?;
        Ok(EventEngine { ctx, space })
    }

    pub fn tf(&self) -> &TwoFactor {
        &self.ctx.tf
    }

    /// Probability of the event defined by `t`.
    pub fn probability(&self, t: &Template) -> S {
        let p = t.pattern();
        self.space.probability_where(|s| p.conforms(s.heads, s.s1, s.s3))
    }

    /// True iff every conforming situation outputs the focus.
    pub fn forces(&self, t: &Template) -> bool {
        let p = t.pattern();
        self.space
            .situations
            .iter()
            .filter(|s| p.conforms(s.heads, s.s1, s.s3))
            .all(|s| bits::contains(s.output, t.focus))
    }

    /// Phase-3 symbols only on the focus, and the focus feasible in every
    /// weakly conforming situation.
    pub fn is_admissible(&self, t: &Template) -> bool {
        let u = t.focus;
        if t.d3.iter().chain(&t.d3bar).any(|&x| x != u) {
            return false;
        }
        if t.d3.is_empty() && t.d3bar.is_empty() {
            return true;
        }
        let p = t.pattern();
        self.space
            .situations
            .iter()
            .filter(|s| p.weakly_conforms(s.heads, s.s1))
            .all(|s| bits::contains(s.feasible, u))
    }

    fn cycle_feasible_when<C: Fn(&crate::sampler::Situation<S>) -> bool>(&self, t: &Template, cond: C) -> S {
        let u = t.focus;
        if !t.d3.contains(&u) || self.tf().cycle_len(u).is_multiple_of(2) {
            return S::zero();
        }
        let z = self.tf().cycle_mask(self.tf().cycle_of(u));
        self.space.conditional(cond, |s| s.feasible & z == z)
    }

    /// `q`: probability that the whole focus cycle is feasible, given the event.
    pub fn q_exact(&self, t: &Template) -> S {
        let p = t.pattern();
        self.cycle_feasible_when(t, |s| p.conforms(s.heads, s.s1, s.s3))
    }

    /// As [`Self::q_exact`], conditioned on weak conformity instead.
    pub fn q_weak(&self, t: &Template) -> S {
        let p = t.pattern();
        self.cycle_feasible_when(t, |s| p.weakly_conforms(s.heads, s.s1))
    }

    pub fn lemma4(&self, t: &Template) -> Lemma4Report<S> {
        let pairs = t.sensitive_pairs(self.tf());
        let q_exact = self.q_exact(t);
        let bound = lemma4_lower_bound(t, &pairs, &q_exact);
        Lemma4Report {
            weight: t.weight(),
            admissible: self.is_admissible(t),
            q_upper: t.q_upper(self.tf()),
            probability: self.probability(t),
            q_exact,
            bound,
            pairs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::scalar::{ratio, Rational};
    use crate::templates::{builtin, Template};
    use crate::two_factor::{select_two_factor, SelectOptions};
    use num_traits::{One, Zero};

    fn engine(g: &Graph) -> EventEngine<Rational> {
        let tf = select_two_factor(g, SelectOptions::default()).unwrap().two_factor;
        EventEngine::new(g, &tf, Limits::default()).unwrap()
    }

    #[test]
    fn empty_template_is_everything() {
        let e = engine(&named::petersen());
        let t = Template::new(0);
        assert!(e.probability(&t).is_one());
        assert!(!e.forces(&t));
    }

    #[test]
    fn e0_forces_and_meets_bound() {
        let e = engine(&named::petersen());
        for u in 0..10 {
            let t = builtin("E0", e.tf(), u).unwrap();
            assert!(e.forces(&t));
            assert!(e.probability(&t) >= ratio(32, 256));
            let r = e.lemma4(&t);
            assert!(r.sound() && r.admissible && r.q_exact.is_zero());
        }
    }

    #[test]
    fn local_events_disjoint() {
        let e = engine(&named::p72());
        for u in 0..14 {
            let ts: Vec<_> = ["E0", "E-", "E+", "E+-"].iter().map(|n| builtin(n, e.tf(), u).unwrap().pattern()).collect();
            for s in &e.space.situations {
                assert!(ts.iter().filter(|p| p.conforms(s.heads, s.s1, s.s3)).count() <= 1);
            }
        }
    }
}
