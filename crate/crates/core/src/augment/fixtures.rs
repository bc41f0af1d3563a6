//! Hand-wired graphs with a fixed 2-factor, one per deficiency type.
//!
//! Each fixture has a cycle `Z = 0..L` oriented by increasing index with the
//! deficient vertex at `0`, plus a 6-cycle `W` absorbing the remaining mates.

use crate::error::Result;
use crate::graph::Graph;
use crate::two_factor::TwoFactor;

use super::DType;

/// A named fixture: graph, pinned 2-factor and the vertex under test.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub expected: DType,
    pub graph: Graph,
    pub tf: TwoFactor,
    pub vertex: usize,
}

fn build(cycles: Vec<Vec<usize>>, extra: &[(usize, usize)]) -> Result<(Graph, TwoFactor)> {
    let n = cycles.iter().map(Vec::len).sum();
    let mut edges: Vec<(usize, usize)> = extra.to_vec();
    for c in &cycles {
        for i in 0..c.len() {
            edges.push((c[i], c[(i + 1) % c.len()]));
        }
    }
    let g = Graph::from_edges(n, edges)?;
    let tf = TwoFactor::from_cycles(&g, cycles)?;
    Ok((g, tf))
}

/// `Z` of length `l` with the given chords; `outs` are matched in order to the
/// listed vertices of `W`, and `w_chords` are chords of `W` (offsets 0..6).
fn with_w(l: usize, chords: &[(usize, usize)], outs: &[(usize, usize)], w_chords: &[(usize, usize)]) -> Result<(Graph, TwoFactor)> {
    let z: Vec<usize> = (0..l).collect();
    let w: Vec<usize> = (l..l + 6).collect();
    let mut extra = chords.to_vec();
    extra.extend(outs.iter().map(|&(a, b)| (a, l + b)));
    extra.extend(w_chords.iter().map(|&(a, b)| (l + a, l + b)));
    build(vec![z, w], &extra)
}

pub fn type_zero() -> Result<Fixture> {
    let m = [(0, 6), (1, 8), (2, 9), (3, 11), (4, 7), (5, 10)];
    let (graph, tf) = build(vec![(0..6).collect(), (6..12).collect()], &m)?;
    Ok(Fixture { name: "type-0", expected: DType::Zero, graph, tf, vertex: 0 })
}

pub fn type_i() -> Result<Fixture> {
    let outs = [(1, 0), (2, 1), (3, 2), (6, 3), (8, 4), (9, 5)];
    let (graph, tf) = with_w(10, &[(0, 5), (4, 7)], &outs, &[])?;
    Ok(Fixture { name: "type-I", expected: DType::I, graph, tf, vertex: 0 })
}

pub fn type_ia() -> Result<Fixture> {
    let outs = [(1, 0), (6, 1), (7, 3), (9, 4)];
    let (graph, tf) = with_w(10, &[(0, 4), (2, 5), (8, 3)], &outs, &[(2, 5)])?;
    Ok(Fixture { name: "type-Ia", expected: DType::Ia, graph, tf, vertex: 0 })
}

pub fn type_ib() -> Result<Fixture> {
    let (graph, tf) = with_w(10, &[(0, 4), (2, 5), (8, 3), (1, 6)], &[(7, 0), (9, 3)], &[(1, 4), (2, 5)])?;
    Ok(Fixture { name: "type-Ib", expected: DType::Ib, graph, tf, vertex: 0 })
}

pub fn type_ii() -> Result<Fixture> {
    let outs = [(2, 0), (3, 1), (7, 3), (8, 4)];
    let (graph, tf) = with_w(12, &[(0, 4), (11, 6), (10, 5), (9, 1)], &outs, &[(2, 5)])?;
    Ok(Fixture { name: "type-II", expected: DType::II, graph, tf, vertex: 0 })
}

pub fn type_iia() -> Result<Fixture> {
    let (graph, tf) = with_w(10, &[(0, 4), (8, 5), (7, 1), (9, 6)], &[(2, 0), (3, 3)], &[(1, 4), (2, 5)])?;
    Ok(Fixture { name: "type-IIa", expected: DType::IIa, graph, tf, vertex: 0 })
}

pub fn type_iii() -> Result<Fixture> {
    let (graph, tf) = with_w(12, &[(0, 4), (10, 5), (9, 1), (7, 3), (11, 8)], &[(2, 0), (6, 3)], &[(1, 4), (2, 5)])?;
    Ok(Fixture { name: "type-III", expected: DType::III, graph, tf, vertex: 0 })
}

/// The same graph as `f` with every cycle oriented the other way.
pub fn mirrored(f: &Fixture) -> Fixture {
    Fixture { tf: f.tf.reversed(), ..f.clone() }
}

/// Every fixture above.
pub fn all() -> Result<Vec<Fixture>> {
    Ok(vec![type_zero()?, type_i()?, type_ia()?, type_ib()?, type_ii()?, type_iia()?, type_iii()?])
}

/// A random triangle-free cubic graph with the 2-factor of a random perfect matching.
pub fn random_fixture<R: rand::Rng>(n: usize, rng: &mut R) -> Result<(Graph, TwoFactor)> {
    loop {
        let g = crate::graph::random_cubic(n, rng)
            .ok_or_else(|| crate::error::Error::Invalid(format!("no cubic graph on {n} vertices")))?;
        if !crate::graph::analyze(&g).is_triangle_free {
            continue;
        }
        let all = crate::two_factor::enumerate_perfect_matchings(&g, 1 << 12);
        if all.matchings.is_empty() {
            continue;
        }
        let m = &all.matchings[rng.gen_range(0..all.matchings.len())];
        let tf = TwoFactor::from_matching(&g, m)?;
        return Ok((g, tf));
    }
}
