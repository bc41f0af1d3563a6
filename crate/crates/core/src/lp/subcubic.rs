//! The 32/11 certificate for triangle-free subcubic graphs, assembled along the
//! reduction tree.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{distribution_to_weighting, verify_certificate, weighting_to_multiset, CertificateVerdict, MultisetCertificate};
use crate::augment::phase5_exact;
use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{reduce_subcubic, Graph, LeafKind, ReductionNode};
use crate::sampler::Limits;
use crate::scalar::{fmt_rational, Rational};
use crate::two_factor::{select_two_factor, SelectOptions};

#[derive(Clone, Debug, Serialize)]
pub struct LeafReport {
    pub n: usize,
    pub kind: LeafKind,
    pub pinned: bool,
    pub deficient: usize,
    pub min_marginal: String,
}

#[derive(Clone, Debug)]
pub struct SubcubicCertificate {
    pub reduction: &'static str,
    pub certificate: MultisetCertificate,
    pub verdict: CertificateVerdict,
    pub leaves: Vec<LeafReport>,
}

struct Builder {
    k: Rational,
    limits: Limits,
    opts: SelectOptions,
    leaves: Vec<LeafReport>,
}

fn sets_per_cover(k: &Rational, cover: u64) -> usize {
    (k * Rational::from_integer(cover.into())).to_integer().to_usize().expect("small")
}

impl Builder {
    fn node(&mut self, node: &ReductionNode) -> Result<MultisetCertificate> {
        let cert = match node {
            ReductionNode::Leaf { graph, kind: LeafKind::Trivial, .. } => self.trivial(graph)?,
            ReductionNode::Leaf { graph, kind: LeafKind::Cubic, pinned } => {
                let tf = match pinned {
                    Some(tf) => tf.clone(),
                    None => select_two_factor(graph, self.opts)?.two_factor,
                };
                let rep = phase5_exact(graph, &tf, self.limits)?;
                let w = distribution_to_weighting(&rep.outcome.distribution, &self.k)?;
                let mut c = weighting_to_multiset(&w)?;
                c.k = self.k.clone();
                self.leaves.push(LeafReport {
                    n: graph.n(),
                    kind: LeafKind::Cubic,
                    pinned: pinned.is_some(),
                    deficient: rep.plan.order.len(),
                    min_marginal: fmt_rational(rep.outcome.marginals.iter().min().expect("nonempty")),
                });
                c
            }
            ReductionNode::Components { parts } => {
                let certs = parts.iter().map(|(p, _)| self.node(p)).collect::<Result<Vec<_>>>()?;
                let certs = self.common(certs);
                let mut sets = vec![0; certs[0].sets.len()];
                for (c, (_, map)) in certs.iter().zip(parts) {
                    for (t, &s) in c.sets.iter().enumerate() {
                        sets[t] |= relabel(s, map);
                    }
                }
                MultisetCertificate { k: self.k.clone(), cover: certs[0].cover, sets }
            }
            ReductionNode::BridgeSplit { bridge, leaf_side, leaf_map, rest, rest_map } => {
                let a = self.node(leaf_side)?;
                let b = self.node(rest)?;
                let mut certs = self.common(vec![a, b]);
                let b = certs.pop().unwrap();
                let a = certs.pop().unwrap();
                let (x, y) = if leaf_map.contains(&bridge.0) { *bridge } else { (bridge.1, bridge.0) };
                let xa = leaf_map.iter().position(|&p| p == x).expect("bridge end on leaf side");
                let yb = rest_map.iter().position(|&p| p == y).expect("bridge end on rest");
                let (a_in, a_out): (Vec<usize>, Vec<usize>) = (0..a.sets.len()).partition(|&t| bits::contains(a.sets[t], xa));
                let (b_in, b_out): (Vec<usize>, Vec<usize>) = (0..b.sets.len()).partition(|&t| bits::contains(b.sets[t], yb));
                if a_in.len() > b_out.len() {
                    return Err(Error::Certificate("no colour permutation separates the bridge ends".into()));
                }
                let mut rest_order = b_out.clone();
                rest_order.extend(b_in);
                let leaf_order = a_in.into_iter().chain(a_out);
                let sets = leaf_order
                    .zip(rest_order)
                    .map(|(i, j)| relabel(a.sets[i], leaf_map) | relabel(b.sets[j], rest_map))
                    .collect();
                MultisetCertificate { k: self.k.clone(), cover: a.cover, sets }
            }
            ReductionNode::Degree2Double { doubled, map, copy } | ReductionNode::Degree2Single { doubled, map, copy, .. } => {
                let c = self.node(doubled)?;
                let sets = c
                    .sets
                    .iter()
                    .map(|&s| bits::members(s).filter(|&v| copy[v] == 0).fold(0, |m, v| m | bits::bit(map[v])))
                    .collect();
                MultisetCertificate { k: self.k.clone(), cover: c.cover, sets }
            }
        };
        if cert.sets.len() != sets_per_cover(&self.k, cert.cover) {
            return Err(Error::Certificate(format!("{} sets for N = {}", cert.sets.len(), cert.cover)));
        }
        Ok(cert)
    }

    /// A 2-colouring repeated `N = den(k)` times, padded with empty sets to `num(k)` sets.
    fn trivial(&mut self, g: &Graph) -> Result<MultisetCertificate> {
        let mut side: Vec<Option<bool>> = vec![None; g.n()];
        for s in 0..g.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in g.neighbours(x) {
                    match side[y] {
                        None => {
                            side[y] = Some(!side[x].unwrap());
                            stack.push(y);
                        }
                        Some(c) if c == side[x].unwrap() => return Err(Error::Class("trivial leaf is not bipartite".into())),
                        _ => {}
                    }
                }
            }
        }
        let class = |c: bool| bits::from_vertices((0..g.n()).filter(|&v| side[v] == Some(c)));
        let cover = self.k.denom().to_u64().expect("small");
        let total = sets_per_cover(&self.k, cover);
        let mut sets = vec![class(false); cover as usize];
        sets.extend(vec![class(true); cover as usize]);
        if sets.len() > total {
            return Err(Error::Certificate("k is below 2".into()));
        }
        sets.resize(total, 0);
        self.leaves.push(LeafReport { n: g.n(), kind: LeafKind::Trivial, pinned: false, deficient: 0, min_marginal: "-".into() });
        Ok(MultisetCertificate { k: self.k.clone(), cover, sets })
    }

    fn common(&self, certs: Vec<MultisetCertificate>) -> Vec<MultisetCertificate> {
        let n = certs.iter().fold(1u64, |a, c| a.lcm(&c.cover));
        certs.into_iter().map(|c| c.scaled(n / c.cover)).collect()
    }
}

fn relabel(s: VertexSet, map: &[usize]) -> VertexSet {
    bits::members(s).fold(0, |m, v| m | bits::bit(map[v]))
}

/// Certificate that `chi_f(g) <= k` for a triangle-free subcubic graph, built leaf by leaf.
pub fn chi_f_upper_subcubic(g: &Graph, limits: Limits, opts: SelectOptions) -> Result<SubcubicCertificate> {
    g.require_mask_scale()?;
    let tree = reduce_subcubic(g, opts)?;
    let mut b = Builder { k: crate::k_bound(), limits, opts, leaves: vec![] };
    let certificate = b.node(&tree)?;
    let verdict = verify_certificate(g, &certificate);
    if !verdict.valid {
        return Err(Error::Certificate(verdict.problems.join("; ")));
    }
    Ok(SubcubicCertificate { reduction: tree.kind_name(), certificate, verdict, leaves: b.leaves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn certify(g: &Graph) -> SubcubicCertificate {
        chi_f_upper_subcubic(g, Limits::default(), SelectOptions::default()).unwrap()
    }

    #[test]
    fn cubic_leaves() {
        for g in [named::petersen(), named::k33(), named::p72()] {
            let c = certify(&g);
            assert!(c.verdict.valid);
            assert_eq!(c.reduction, "none");
            assert_eq!(c.certificate.cover % 11, 0);
            assert_eq!(c.certificate.sets.len() as u64 * 11, c.certificate.cover * 32);
        }
    }

    #[test]
    fn c5_pulls_back_from_prism() {
        let c = certify(&named::cycle(5));
        assert_eq!(c.reduction, "degree2-double");
        assert_eq!(c.leaves[0].n, 10);
    }

    #[test]
    fn bridged_composite() {
        let c = certify(&named::bridged_k33_pair());
        assert_eq!(c.reduction, "bridge-split");
        assert!(c.verdict.valid);
    }

    #[test]
    fn single_degree_two_and_small_pieces() {
        for g in [named::subdivide(&named::petersen(), 0, 1), named::path(3), named::path(2), Graph::from_edges(4, []).unwrap()] {
            assert!(certify(&g).verdict.valid);
        }
    }

    #[test]
    fn triangle_refused() {
        assert!(chi_f_upper_subcubic(&named::complete(4), Limits::default(), SelectOptions::default()).is_err());
    }
}
