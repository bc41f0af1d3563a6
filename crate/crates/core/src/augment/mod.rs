//! Deficient vertices, sponsors and the Phase-5 replacement step.

mod classify;
pub mod fixtures;
mod phase5;
mod plan;
mod search;
mod witness;

pub use classify::{classify_chord, edge_in_four_cycle, epsilon_nochord, path_in_four_cycle, ChordClass, DType};
pub use phase5::{exact_phase5_distribution, phase5_biases, phase5_safe, run_phase5, Phase5Outcome};
pub use search::{search_deficient, summarize, ClassSummary, SearchReport};
pub use plan::{build_phase5_plan, build_phase5_plan_with_order, default_order, Phase5Plan, PlanCheck, PlanJson};
pub use witness::{is_favourable_event, witness_library};

use serde::Serialize;

use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sampler::{enumerate_distribution, Distribution, ExactDistribution, Limits};
use crate::scalar::{serde_rational, Rational, Scalar};
use crate::two_factor::TwoFactor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyRecord {
    pub vertex: usize,
    pub dtype: Option<DType>,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    pub sponsor: Option<usize>,
    /// Every table row that matched; more than one would break exclusivity.
    pub matches: Vec<DType>,
}

impl DeficiencyRecord {
    pub fn is_deficient(&self) -> bool {
        self.dtype.is_some()
    }
}

/// `epsilon` at every vertex, with types and sponsors of deficient vertices.
pub fn epsilon_full(g: &Graph, tf: &TwoFactor) -> Result<Vec<DeficiencyRecord>> {
    let n = g.n();
    let mut recs: Vec<DeficiencyRecord> = (0..n)
        .map(|u| DeficiencyRecord { vertex: u, dtype: None, epsilon: Rational::from_usize(0), sponsor: None, matches: vec![] })
        .collect();
    for u in 0..n {
        if !tf.is_chord(u) {
            let e = epsilon_nochord(g, tf, u)?;
            recs[u].epsilon = Rational::from_ratio(e, 1);
            if e == -1 {
                recs[u].dtype = Some(DType::Zero);
                recs[u].matches = vec![DType::Zero];
            }
        } else if !edge_in_four_cycle(g, u, tf.mate(u)) {
            let c = classify_chord(g, tf, u)?;
            if let Some(&t) = c.matches.first() {
                recs[u].dtype = Some(t);
                recs[u].epsilon = -t.magnitude();
            }
            recs[u].matches = c.matches;
        }
    }
    for u in 0..n {
        if tf.is_chord(u) && recs[u].dtype.is_none() {
            let w = tf.mate(u);
            if recs[w].dtype.is_some() {
                recs[u].epsilon = -recs[w].epsilon.clone();
            }
        }
    }
    let one = Rational::from_usize(1);
    for u in 0..n {
        recs[u].sponsor = match recs[u].dtype {
            None => None,
            Some(DType::Zero) => [tf.prev(u), tf.next(u)].into_iter().find(|&w| recs[w].epsilon == one),
            Some(_) => Some(tf.mate(u)),
        };
    }
    Ok(recs)
}

/// The sponsor of a deficient vertex.
pub fn sponsor(records: &[DeficiencyRecord], u: usize) -> Result<usize> {
    let r = &records[u];
    if !r.is_deficient() {
        return Err(Error::Precondition { vertex: u, msg: "vertex is not deficient".into() });
    }
    r.sponsor.ok_or_else(|| Error::Precondition { vertex: u, msg: "no F-neighbour with epsilon = 1".into() })
}

/// `N[u] & J == {s}`.
pub fn favourable(g: &Graph, u: usize, s: usize, j: VertexSet) -> bool {
    g.closed_neighbour_mask(u) & j == bits::bit(s)
}

/// Probability that the random set is favourable for `u` with sponsor `s`.
pub fn receptivity<S: Scalar>(g: &Graph, u: usize, s: usize, dist: &Distribution<S>) -> S {
    dist.probs
        .iter()
        .filter(|(&j, _)| favourable(g, u, s, j))
        .fold(S::zero(), |a, (_, p)| a + p.clone())
}

/// True iff no vertex sponsors two deficient vertices.
pub fn sponsors_injective(records: &[DeficiencyRecord]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    records.iter().filter_map(|r| r.sponsor).all(|s| seen.insert(s))
}

/// Phase-4 law, deficiency data, plan and Phase-5 law of one graph.
#[derive(Clone, Debug)]
pub struct Phase5Report {
    pub records: Vec<DeficiencyRecord>,
    pub phase4: ExactDistribution,
    pub phase4_marginals: Vec<Rational>,
    pub plan: Phase5Plan,
    pub outcome: Phase5Outcome,
}

/// Runs Phases 1 to 5 exactly on `g` with the given 2-factor.
pub fn phase5_exact(g: &Graph, tf: &TwoFactor, limits: Limits) -> Result<Phase5Report> {
    let records = epsilon_full(g, tf)?;
    let (phase4, phase4_marginals) = enumerate_distribution(g, tf, limits)?;
    let plan = build_phase5_plan(g, &records, &phase4)?;
    let outcome = exact_phase5_distribution(&plan, &phase4, limits.max_branches)?;
    Ok(Phase5Report { records, phase4, phase4_marginals, plan, outcome })
}

/// Monte Carlo estimate of the Phase-5 law; same seeding scheme as Phases 1 to 4.
pub fn monte_carlo_phase5(g: &Graph, tf: &TwoFactor, plan: &Phase5Plan, biases: &[Vec<Rational>], trials: u64, seed: u64) -> Result<crate::sampler::McReport> {
    let ctx = crate::sampler::Context::new(g, tf)?;
    crate::sampler::monte_carlo_with(&ctx, trials, seed, |j, rng| run_phase5(plan, biases, j, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, parse_graph6};
    use crate::scalar::ratio;
    use crate::two_factor::{select_two_factor, SelectOptions};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn selected(g: &Graph) -> TwoFactor {
        select_two_factor(g, SelectOptions::default()).unwrap().two_factor
    }

    #[test]
    fn petersen_has_no_deficiency() {
        let g = named::petersen();
        let tf = selected(&g);
        for r in epsilon_full(&g, &tf).unwrap() {
            assert_eq!(r.epsilon, ratio(0, 1));
            assert!(!r.is_deficient());
        }
    }

    #[test]
    fn prism_rungs_lie_on_four_cycles() {
        let g = named::circular_ladder(5);
        let tf = selected(&g);
        for u in 0..10 {
            assert!(!tf.is_chord(u));
            assert_eq!(epsilon_nochord(&g, &tf, u).unwrap(), 1);
        }
    }

    #[test]
    fn k33_chords_not_classifiable() {
        let g = named::k33();
        let tf = selected(&g);
        for u in 0..6 {
            assert!(classify_chord(&g, &tf, u).is_err());
        }
        assert!(epsilon_full(&g, &tf).unwrap().iter().all(|r| !r.is_deficient()));
        assert!(epsilon_nochord(&g, &tf, 0).is_err());
    }

    #[test]
    fn fixtures_classify() {
        let values = [(DType::Zero, ratio(-1, 1)), (DType::I, ratio(-1, 2)), (DType::Ia, ratio(-2, 1)), (DType::Ib, ratio(-3, 2)), (DType::II, ratio(-1, 8)), (DType::IIa, ratio(-1, 2)), (DType::III, ratio(-1, 8))];
        for (f, (t, eps)) in fixtures::all().unwrap().into_iter().zip(values) {
            assert!(crate::graph::analyze(&f.graph).is_cubic_triangle_free_bridgeless(), "{}", f.name);
            let recs = epsilon_full(&f.graph, &f.tf).unwrap();
            assert_eq!(recs[f.vertex].dtype, Some(t), "{}", f.name);
            assert_eq!(recs[f.vertex].matches, vec![t], "{}", f.name);
            assert_eq!(recs[f.vertex].epsilon, eps, "{}", f.name);
            let m = fixtures::mirrored(&f);
            let mrecs = epsilon_full(&m.graph, &m.tf).unwrap();
            let want = if matches!(t, DType::Zero | DType::I) { t } else { DType::ALL[DType::ALL.iter().position(|&x| x == t).unwrap() + 5] };
            assert_eq!(mrecs[f.vertex].dtype, Some(want), "{} mirrored", f.name);
            assert_eq!(mrecs[f.vertex].epsilon, eps);
        }
    }

    #[test]
    fn mate_of_chord_deficient_gets_opposite_epsilon() {
        let f = fixtures::type_ia().unwrap();
        let recs = epsilon_full(&f.graph, &f.tf).unwrap();
        assert_eq!(recs[0].epsilon, ratio(-2, 1));
        assert_eq!(recs[4].epsilon, ratio(2, 1));
        assert!(!recs[4].is_deficient());
    }

    #[test]
    fn sponsors() {
        let f = fixtures::type_ia().unwrap();
        let recs = epsilon_full(&f.graph, &f.tf).unwrap();
        assert_eq!(sponsor(&recs, 0).unwrap(), 4);
        assert!(sponsor(&recs, 4).is_err());
        let z = fixtures::type_zero().unwrap();
        let recs = epsilon_full(&z.graph, &z.tf).unwrap();
        assert_eq!(sponsor(&recs, 0).unwrap(), 1);
        assert!(sponsors_injective(&recs));
    }

    #[test]
    fn sponsor_prefers_predecessor() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = 0;
        for _ in 0..400 {
            let (g, tf) = fixtures::random_fixture(12, &mut rng).unwrap();
            let recs = epsilon_full(&g, &tf).unwrap();
            for r in recs.iter().filter(|r| r.dtype == Some(DType::Zero)) {
                let (a, b) = (tf.prev(r.vertex), tf.next(r.vertex));
                if recs[a].epsilon == ratio(1, 1) && recs[b].epsilon == ratio(1, 1) {
                    assert_eq!(r.sponsor, Some(a));
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn favourable_sets() {
        let g = named::petersen();
        let (u, s) = (0, 1);
        assert!(!favourable(&g, u, s, bits::bit(u)));
        assert!(favourable(&g, u, s, bits::bit(s)));
        assert!(!favourable(&g, u, s, 0));
        assert!(!favourable(&g, u, s, bits::bit(s) | bits::bit(4)));
    }

    #[test]
    fn receptivity_thresholds() {
        for f in fixtures::all().unwrap() {
            let rep = phase5_exact(&f.graph, &f.tf, Limits::default()).unwrap();
            for (i, &u) in rep.plan.order.iter().enumerate() {
                let t = match rep.records[u].dtype.unwrap().base() {
                    DType::Zero => ratio(3, 256),
                    DType::Ia | DType::Ib => ratio(8, 256),
                    _ => ratio(19, 2560),
                };
                let rho = receptivity(&f.graph, u, rep.plan.sponsors[i], &rep.phase4);
                assert_eq!(rho, rep.plan.receptivity[i]);
                assert!(rho >= t, "{} vertex {u}", f.name);
            }
        }
    }

    #[test]
    fn empty_plan_keeps_law() {
        let g = named::petersen();
        let rep = phase5_exact(&g, &selected(&g), Limits::default()).unwrap();
        assert!(rep.plan.is_empty());
        assert_eq!(rep.outcome.distribution, rep.phase4);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let j = *rep.phase4.probs.keys().next().unwrap();
        assert_eq!(run_phase5(&rep.plan, &rep.outcome.biases, j, &mut rng), j);
    }

    #[test]
    fn fixture_plans_and_phase5_law() {
        for f in fixtures::all().unwrap() {
            let rep = phase5_exact(&f.graph, &f.tf, Limits::default()).unwrap();
            let chk = rep.plan.check(&f.graph);
            assert!(chk.holds() && chk.eta_bounded, "{}: {chk:?}", f.name);
            assert_eq!(rep.outcome.distribution.total(), ratio(1, 1));
            for (i, &u) in rep.plan.order.iter().enumerate() {
                let want = &rep.plan.eps_abs[i] / ratio(256, 1);
                assert_eq!(rep.outcome.added[i], want);
                assert_eq!(rep.outcome.marginals[u], &rep.phase4_marginals[u] + &want);
                let s = rep.plan.sponsors[i];
                assert_eq!(rep.outcome.marginals[s], &rep.phase4_marginals[s] - &want);
            }
            for u in 0..f.graph.n() {
                assert!(rep.outcome.marginals[u] >= ratio(88, 256), "{} vertex {u}", f.name);
                let need = (ratio(88, 1) + &rep.records[u].epsilon) / ratio(256, 1);
                assert!(rep.phase4_marginals[u] >= need, "{} vertex {u}", f.name);
            }
            for (j, p) in &rep.outcome.distribution.probs {
                assert!(f.graph.is_independent(*j), "{}", f.name);
                assert!(*p > ratio(0, 1));
            }
        }
    }

    #[test]
    fn plan_survives_tie_permutations() {
        let f = fixtures::type_iii().unwrap();
        let records = epsilon_full(&f.graph, &f.tf).unwrap();
        let (phase4, _) = enumerate_distribution(&f.graph, &f.tf, Limits::default()).unwrap();
        let base = default_order(&records);
        assert_eq!(base, vec![0, 1, 5]);
        for order in [vec![0, 1, 5], vec![0, 5, 1]] {
            let plan = build_phase5_plan_with_order(&f.graph, &records, &phase4, &order).unwrap();
            assert!(plan.check(&f.graph).holds());
            let out = exact_phase5_distribution(&plan, &phase4, 1 << 20).unwrap();
            assert!(out.marginals.iter().all(|m| *m >= ratio(88, 256)));
        }
        assert!(build_phase5_plan_with_order(&f.graph, &records, &phase4, &[1, 0, 5]).is_err());
        assert!(build_phase5_plan_with_order(&f.graph, &records, &phase4, &[0, 1]).is_err());
    }

    #[test]
    fn monte_carlo_phase5_is_safe() {
        use crate::sampler::{run_phases_1_4, Context};
        let f = fixtures::type_ia().unwrap();
        let rep = phase5_exact(&f.graph, &f.tf, Limits::default()).unwrap();
        let ctx = Context::new(&f.graph, &f.tf).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let trials = 20_000;
        let mut hits = 0u32;
        for _ in 0..trials {
            let j = run_phases_1_4(&ctx, &mut rng).output;
            let out = run_phase5(&rep.plan, &rep.outcome.biases, j, &mut rng);
            assert!(phase5_safe(&f.graph, &rep.plan, j, out));
            hits += bits::contains(out, 0) as u32;
        }
        let p = Scalar::to_f64(&rep.outcome.marginals[0]);
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((hits as f64 / trials as f64 - p).abs() < 5.0 * se);
    }

    #[test]
    fn symmetric_eight_cycle_matches_both_mirrors() {
        let g = parse_graph6("Ms\\__GB?_A?C?F?F?").unwrap();
        let recs = epsilon_full(&g, &selected(&g)).unwrap();
        assert_eq!(recs[8].matches, vec![DType::Ia, DType::IaStar]);
        assert_eq!(recs[8].epsilon, ratio(-2, 1));
    }

    #[test]
    fn random_fixture_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..200 {
            let (g, tf) = fixtures::random_fixture([10, 12, 14, 16][k % 4], &mut rng).unwrap();
            let recs = epsilon_full(&g, &tf).unwrap();
            assert!(sponsors_injective(&recs));
            for r in &recs {
                let bases: std::collections::BTreeSet<DType> = r.matches.iter().map(|t| t.base()).collect();
                assert!(bases.len() <= 1, "{:?}", r.matches);
                if r.dtype.is_some_and(DType::is_chord_type) {
                    assert!(!recs[tf.mate(r.vertex)].is_deficient());
                }
                if r.is_deficient() {
                    assert!(r.sponsor.is_some());
                }
            }
        }
    }
}
