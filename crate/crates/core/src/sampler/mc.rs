use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{phi::runs_of, Context};
use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};

/// Random choices of one execution and its Phase-4 output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledRun {
    pub heads: VertexSet,
    pub s1: VertexSet,
    pub s3: VertexSet,
    pub feasible: VertexSet,
    pub output: VertexSet,
}

fn sample_phi<R: Rng>(ctx: &Context, set: VertexSet, rng: &mut R) -> VertexSet {
    runs_of(&ctx.tf, set).iter().fold(0, |acc, run| {
        let opts = run.options();
        acc | opts[rng.gen_range(0..opts.len())].0
    })
}

pub fn run_phases_1_4<R: Rng>(ctx: &Context, rng: &mut R) -> SampledRun {
    let code = (0..ctx.matching().len()).fold(0u64, |c, i| c | (rng.gen::<bool>() as u64) << i);
    let heads = ctx.heads_of(code);
    let s1 = sample_phi(ctx, heads, rng);
    let i2 = ctx.after_phase2(heads, s1);
    let feasible = ctx.feasible(i2);
    let s3 = sample_phi(ctx, feasible, rng);
    SampledRun { heads, s1, s3, feasible, output: ctx.finish(i2, feasible, s3) }
}

#[derive(Clone, Debug, Serialize)]
pub struct McReport {
    pub trials: u64,
    pub seed: u64,
    pub counts: Vec<u64>,
    pub frequency: Vec<f64>,
    pub std_error: Vec<f64>,
    /// Trials whose output was not independent.
    pub violations: u64,
}

/// Runs `trials` independent executions. Trial `t` draws from stream `t` of
/// a ChaCha8 generator seeded with `seed`, so the result does not depend on
/// scheduling.
pub fn monte_carlo(ctx: &Context, trials: u64, seed: u64) -> Result<McReport> {
    monte_carlo_with(ctx, trials, seed, |out, _| out)
}

/// As [`monte_carlo`], with `post` applied to each Phase-4 output using the trial's generator.
pub fn monte_carlo_with<P>(ctx: &Context, trials: u64, seed: u64, post: P) -> Result<McReport>
where
    P: Fn(VertexSet, &mut ChaCha8Rng) -> VertexSet + Sync,
{
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let n = ctx.n();
    const CHUNK: u64 = 4096;
    let chunks = trials.div_ceil(CHUNK);
    let (counts, violations) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0u64; n];
            let mut bad = 0u64;
            for t in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t);
                let out = run_phases_1_4(ctx, &mut rng).output;
                let out = post(out, &mut rng);
                if !ctx.graph.is_independent(out) {
                    bad += 1;
                }
                for v in bits::members(out) {
                    counts[v] += 1;
                }
            }
            (counts, bad)
        })
        .reduce(
            || (vec![0u64; n], 0),
            |(mut a, x), (b, y)| {
                a.iter_mut().zip(b).for_each(|(p, q)| *p += q);
                (a, x + y)
            },
        );
    let tf = trials as f64;
    let frequency: Vec<f64> = counts.iter().map(|&c| c as f64 / tf).collect();
    let std_error = frequency.iter().map(|&p| (p * (1.0 - p) / tf).sqrt()).collect();
    Ok(McReport { trials, seed, counts, frequency, std_error, violations })
}
