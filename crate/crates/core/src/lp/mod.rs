//! Fractional colourings: exact LP, conversions between weightings,
//! distributions and multiset certificates, and the subcubic recursion.

mod mis;
mod simplex;
mod subcubic;

pub use mis::{maximal_independent_sets, maximal_independent_sets_brute_force, DEFAULT_MAX_VERTICES};
pub use simplex::{solve_packing, PackingSolution};
pub use subcubic::{chi_f_upper_subcubic, SubcubicCertificate};

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sampler::ExactDistribution;
use crate::scalar::{fmt_rational, parse_rational, Rational};

/// Weights on independent sets.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FractionalColouring {
    pub n: usize,
    pub weights: BTreeMap<VertexSet, Rational>,
}

impl FractionalColouring {
    /// `|w|`, the total weight.
    pub fn size(&self) -> Rational {
        self.weights.values().fold(Rational::zero(), |a, w| a + w)
    }

    /// `w[v]`, the weight of the sets containing `v`.
    pub fn vertex_weight(&self, v: usize) -> Rational {
        self.weights.iter().filter(|(&s, _)| bits::contains(s, v)).fold(Rational::zero(), |a, (_, w)| a + w)
    }

    /// True iff every set is independent and every vertex has weight at least 1.
    pub fn is_colouring(&self, g: &Graph) -> bool {
        self.weights.iter().all(|(&s, w)| g.is_independent(s) && *w >= Rational::zero())
            && (0..self.n).all(|v| self.vertex_weight(v) >= Rational::one())
    }
}

/// Exact fractional chromatic number with primal and dual optima.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiF {
    pub value: Rational,
    pub primal: FractionalColouring,
    /// Vertex weights with total `value` and weight at most 1 on every independent set.
    pub dual: Vec<Rational>,
}

/// Solves the covering LP over maximal independent sets exactly and checks the optimum.
pub fn chi_f_exact(g: &Graph, max_vertices: usize) -> Result<ChiF> {
    let n = g.n();
    if n == 0 {
        return Ok(ChiF { value: Rational::zero(), primal: FractionalColouring::default(), dual: vec![] });
    }
    let sets = maximal_independent_sets(g, max_vertices)?;
    let rows: Vec<Vec<usize>> = sets.iter().map(|&s| bits::to_vec(s)).collect();
    let sol = solve_packing::<Rational>(&rows, n, 1 << 24)?;
    let weights: BTreeMap<VertexSet, Rational> =
        sets.iter().zip(&sol.x).filter(|(_, x)| !x.is_zero()).map(|(&s, x)| (s, x.clone())).collect();
    let primal = FractionalColouring { n, weights };
    let res = ChiF { value: sol.value, primal, dual: sol.y };
    check_optimality(g, &sets, &res)?;
    Ok(res)
}

fn check_optimality(g: &Graph, sets: &[VertexSet], r: &ChiF) -> Result<()> {
    let fail = |m: &str| Err(Error::Lp(m.into()));
    if !r.primal.is_colouring(g) {
        return fail("primal is not a fractional colouring");
    }
    if r.primal.size() != r.value {
        return fail("primal size differs from the optimum");
    }
    let dual_total = r.dual.iter().fold(Rational::zero(), |a, y| a + y);
    if dual_total != r.value || r.dual.iter().any(|y| *y < Rational::zero()) {
        return fail("dual objective differs from the optimum");
    }
    let load = |s: VertexSet| bits::members(s).fold(Rational::zero(), |a, v| a + &r.dual[v]);
    if sets.iter().any(|&s| load(s) > Rational::one()) {
        return fail("dual is infeasible");
    }
    for (&s, w) in &r.primal.weights {
        if !w.is_zero() && load(s) != Rational::one() {
            return fail("complementary slackness fails on a set");
        }
    }
    for v in 0..g.n() {
        if !r.dual[v].is_zero() && r.primal.vertex_weight(v) != Rational::one() {
            return fail("complementary slackness fails at a vertex");
        }
    }
    Ok(())
}

/// `w(I) = k p(I)`; needs every marginal at least `1/k`.
pub fn distribution_to_weighting(dist: &ExactDistribution, k: &Rational) -> Result<FractionalColouring> {
    let bound = k.recip();
    for (v, m) in dist.marginals().iter().enumerate() {
        if *m < bound {
            return Err(Error::MarginalBelowBound { vertex: v, marginal: fmt_rational(m), bound: fmt_rational(&bound) });
        }
    }
    let weights = dist.probs.iter().map(|(&s, p)| (s, p * k)).collect();
    Ok(FractionalColouring { n: dist.n, weights })
}

/// A multiset of independent sets covering every vertex exactly `N` times.
#[derive(Clone, Debug, PartialEq)]
pub struct MultisetCertificate {
    pub k: Rational,
    pub cover: u64,
    pub sets: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    k: String,
    #[serde(rename = "N")]
    n: u64,
    sets: Vec<Vec<usize>>,
}

impl MultisetCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let j = CertificateJson {
            k: fmt_rational(&self.k),
            n: self.cover,
            sets: self.sets.iter().map(|&s| bits::to_vec(s)).collect(),
        };
        serde_json::to_value(j).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: CertificateJson = serde_json::from_str(text)?;
        let k = parse_rational(&j.k).ok_or_else(|| Error::Certificate(format!("bad k {:?}", j.k)))?;
        let mut sets = Vec::with_capacity(j.sets.len());
        for s in j.sets {
            if let Some(&v) = s.iter().find(|&&v| v >= bits::MAX_MASK_VERTICES) {
                return Err(Error::Certificate(format!("vertex {v} out of range")));
            }
            sets.push(bits::from_vertices(s));
        }
        Ok(MultisetCertificate { k, cover: j.n, sets })
    }

    /// Replicates every set `f` times.
    pub fn scaled(&self, f: u64) -> Self {
        let sets = self.sets.iter().flat_map(|&s| std::iter::repeat_n(s, f as usize)).collect();
        MultisetCertificate { k: self.k.clone(), cover: self.cover * f, sets }
    }

    /// `ceil(k N)`.
    pub fn size_limit(&self) -> u64 {
        (&self.k * Rational::from_integer(self.cover.into())).ceil().to_integer().to_u64().unwrap_or(u64::MAX)
    }
}

/// Clears denominators and trims surplus coverage so each vertex lies in exactly `N` sets.
pub fn weighting_to_multiset(w: &FractionalColouring) -> Result<MultisetCertificate> {
    let mut cover = num_bigint::BigInt::one();
    for x in w.weights.values() {
        cover = cover.lcm(x.denom());
    }
    let cover_u = cover.to_u64().ok_or_else(|| Error::Certificate("N does not fit in 64 bits".into()))?;
    let mut sets = Vec::new();
    for (&s, x) in &w.weights {
        let mult = (x * Rational::from_integer(cover.clone())).to_integer();
        let mult = mult.to_usize().ok_or_else(|| Error::Certificate("multiplicity overflow".into()))?;
        sets.extend(std::iter::repeat_n(s, mult));
    }
    for v in 0..w.n {
        let have = sets.iter().filter(|&&s| bits::contains(s, v)).count() as u64;
        if have < cover_u {
            return Err(Error::Certificate(format!("vertex {v} has weight below 1")));
        }
        let mut surplus = have - cover_u;
        for s in sets.iter_mut().rev() {
            if surplus == 0 {
                break;
            }
            if bits::contains(*s, v) {
                *s &= !bits::bit(v);
                surplus -= 1;
            }
        }
    }
    Ok(MultisetCertificate { k: w.size(), cover: cover_u, sets })
}

/// Outcome of an independent recount of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateVerdict {
    pub valid: bool,
    pub sets: usize,
    pub cover: u64,
    pub size_limit: u64,
    pub problems: Vec<String>,
}

/// Checks independence of every set, exact `N`-fold coverage and `|sets| <= ceil(kN)`.
pub fn verify_certificate(g: &Graph, cert: &MultisetCertificate) -> CertificateVerdict {
    let mut problems = Vec::new();
    if cert.cover == 0 {
        problems.push("N must be positive".to_string());
    }
    for (i, &s) in cert.sets.iter().enumerate() {
        if s & !bits::full(g.n()) != 0 {
            problems.push(format!("set {i} has a vertex outside the graph"));
        } else if let Some((a, b)) = g.edge_inside(s) {
            problems.push(format!("set {i} contains edge {a}-{b}"));
        }
    }
    for v in 0..g.n() {
        let c = cert.sets.iter().filter(|&&s| bits::contains(s, v)).count() as u64;
        if c != cert.cover {
            problems.push(format!("vertex {v} is covered {c} times, expected {}", cert.cover));
        }
    }
    let limit = cert.size_limit();
    if cert.sets.len() as u64 > limit {
        problems.push(format!("{} sets exceed ceil(kN) = {limit}", cert.sets.len()));
    }
    CertificateVerdict { valid: problems.is_empty(), sets: cert.sets.len(), cover: cert.cover, size_limit: limit, problems }
}
