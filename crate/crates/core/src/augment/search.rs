//! Sampling search for small graphs whose selected 2-factor has deficient vertices.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::epsilon_full;
use crate::error::Result;
use crate::graph::{analyze, canonical_form, encode_graph6, random_cubic, Graph};
use crate::two_factor::{select_two_factor, SelectOptions};

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub graph6: String,
    pub bridgeless: bool,
    pub deficient: usize,
    pub types: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// Connected triangle-free cubic classes seen.
    pub classes: usize,
    pub bridgeless_classes: usize,
    pub with_deficient: Vec<ClassSummary>,
}

/// Samples random cubic graphs on `n` vertices and inspects every new connected
/// triangle-free isomorphism class.
pub fn search_deficient(n: usize, samples: u64, seed: u64) -> Result<SearchReport> {
    let chunk = 1024u64;
    let found: Vec<Vec<(Vec<(usize, usize)>, Graph)>> = (0..samples.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let mut out = vec![];
            for _ in 0..chunk.min(samples - c * chunk) {
                let Some(g) = random_cubic(n, &mut rng) else { break };
                let rep = analyze(&g);
                if rep.is_triangle_free && rep.is_connected {
                    let canon = canonical_form(&g);
                    out.push((canon.edges().to_vec(), canon));
                }
            }
            out
        })
        .collect();
    let classes: BTreeMap<Vec<(usize, usize)>, Graph> = found.into_iter().flatten().collect();
    let summaries = classes
        .values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(summarize)
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchReport {
        n,
        samples,
        seed,
        classes: summaries.len(),
        bridgeless_classes: summaries.iter().filter(|s| s.bridgeless).count(),
        with_deficient: summaries.into_iter().filter(|s| s.deficient > 0).collect(),
    })
}

/// Deficiency summary of one graph under its selected 2-factor.
pub fn summarize(g: &Graph) -> Result<ClassSummary> {
    let rep = analyze(g);
    let bridgeless = rep.is_cubic_triangle_free_bridgeless();
    let (mut deficient, mut types) = (0, vec![]);
    if bridgeless {
        let sel = select_two_factor(g, SelectOptions::default())?;
        for r in epsilon_full(g, &sel.two_factor)? {
            if let Some(t) = r.dtype {
                deficient += 1;
                types.push(format!("{}:{}", r.vertex, t));
            }
        }
    }
    Ok(ClassSummary { graph6: encode_graph6(g), bridgeless, deficient, types })
}
