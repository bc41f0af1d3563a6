use serde::Serialize;

use super::{analyze, Graph};
use crate::error::{Error, Result};
use crate::two_factor::{satisfies_ks_condition, select_two_factor_where, SelectOptions, TwoFactor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeafKind {
    /// Cubic; bridgeless unless a 2-factor is pinned.
    Cubic,
    /// At most three vertices; bipartite since triangle-free.
    Trivial,
}

/// One step of the subcubic-to-cubic reduction. Every `map` sends child
/// vertices to parent vertices; for doubled graphs `copy` tells the copies apart.
#[derive(Clone, Debug)]
pub enum ReductionNode {
    Leaf {
        graph: Graph,
        kind: LeafKind,
        /// 2-factor carried over from the suppressed graph (single degree-2 case).
        pinned: Option<TwoFactor>,
    },
    Components {
        parts: Vec<(ReductionNode, Vec<usize>)>,
    },
    BridgeSplit {
        bridge: (usize, usize),
        /// The side incident with only this bridge.
        leaf_side: Box<ReductionNode>,
        leaf_map: Vec<usize>,
        rest: Box<ReductionNode>,
        rest_map: Vec<usize>,
    },
    Degree2Double {
        doubled: Box<ReductionNode>,
        map: Vec<usize>,
        copy: Vec<u8>,
    },
    Degree2Single {
        v0: usize,
        doubled: Box<ReductionNode>,
        map: Vec<usize>,
        copy: Vec<u8>,
    },
}

impl ReductionNode {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ReductionNode::Leaf { .. } => "none",
            ReductionNode::Components { .. } => "components",
            ReductionNode::BridgeSplit { .. } => "bridge-split",
            ReductionNode::Degree2Double { .. } => "degree2-double",
            ReductionNode::Degree2Single { .. } => "degree2-single",
        }
    }

    /// All leaves, depth first.
    pub fn leaves(&self) -> Vec<&ReductionNode> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a ReductionNode>) {
        match self {
            ReductionNode::Leaf { .. } => out.push(self),
            ReductionNode::Components { parts } => parts.iter().for_each(|(p, _)| p.collect_leaves(out)),
            ReductionNode::BridgeSplit { leaf_side, rest, .. } => {
                leaf_side.collect_leaves(out);
                rest.collect_leaves(out);
            }
            ReductionNode::Degree2Double { doubled, .. } | ReductionNode::Degree2Single { doubled, .. } => {
                doubled.collect_leaves(out)
            }
        }
    }
}

/// Reduces a triangle-free subcubic graph to cubic leaves.
pub fn reduce_subcubic(g: &Graph, opts: SelectOptions) -> Result<ReductionNode> {
    let report = analyze(g);
    if !report.is_subcubic {
        return Err(Error::Class("graph is not subcubic".into()));
    }
    if let Some(t) = report.triangle_witness {
        return Err(Error::Class(format!("triangle {t:?}")));
    }
    reduce(g, opts)
}

fn reduce(g: &Graph, opts: SelectOptions) -> Result<ReductionNode> {
    let comps = g.components();
    if comps.len() > 1 {
        let parts = comps
            .into_iter()
            .map(|c| {
                let (h, map) = g.induced(&c);
                Ok((reduce(&h, opts)?, map))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(ReductionNode::Components { parts });
    }
    if g.n() <= 3 {
        return Ok(ReductionNode::Leaf { graph: g.clone(), kind: LeafKind::Trivial, pinned: None });
    }
    let report = analyze(g);
    if !report.bridge_list.is_empty() {
        return bridge_split(g, &report.bridge_list, opts);
    }
    let deg2: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 2).collect();
    match deg2.len() {
        0 => Ok(ReductionNode::Leaf { graph: g.clone(), kind: LeafKind::Cubic, pinned: None }),
        1 => degree2_single(g, deg2[0], opts),
        _ => {
            let extra: Vec<(usize, usize)> = deg2.iter().map(|&v| (v, g.n() + v)).collect();
            let (doubled, map, copy) = double(g, &extra);
            Ok(ReductionNode::Degree2Double { doubled: Box::new(reduce(&doubled, opts)?), map, copy })
        }
    }
}

fn double(g: &Graph, extra: &[(usize, usize)]) -> (Graph, Vec<usize>, Vec<u8>) {
    let n = g.n();
    let d = super::named::join(g, g, extra);
    let map = (0..2 * n).map(|x| x % n).collect();
    let copy = (0..2 * n).map(|x| (x / n) as u8).collect();
    (d, map, copy)
}

fn bridge_split(g: &Graph, bridges: &[(usize, usize)], opts: SelectOptions) -> Result<ReductionNode> {
    let pieces = g.without_edges(bridges).components();
    let incident = |c: &[usize]| bridges.iter().filter(|&&(a, b)| c.contains(&a) != c.contains(&b)).count();
    let leaf = pieces.iter().find(|c| incident(c) == 1).expect("the bridge tree has a leaf");
    let bridge = *bridges.iter().find(|&&(a, b)| leaf.contains(&a) != leaf.contains(&b)).expect("incident bridge");
    let rest: Vec<usize> = (0..g.n()).filter(|v| !leaf.contains(v)).collect();
    let (h1, leaf_map) = g.induced(leaf);
    let (h2, rest_map) = g.induced(&rest);
    Ok(ReductionNode::BridgeSplit {
        bridge,
        leaf_side: Box::new(reduce(&h1, opts)?),
        leaf_map,
        rest: Box::new(reduce(&h2, opts)?),
        rest_map,
    })
}

fn degree2_single(g: &Graph, v0: usize, opts: SelectOptions) -> Result<ReductionNode> {
    let n = g.n();
    let (a, b) = (g.neighbours(v0)[0], g.neighbours(v0)[1]);
    // Suppress v0: vertices above v0 shift down by one.
    let down = |x: usize| if x > v0 { x - 1 } else { x };
    let mut edges: Vec<(usize, usize)> =
        g.edges().iter().filter(|&&(x, y)| x != v0 && y != v0).map(|&(x, y)| (down(x), down(y))).collect();
    let e0 = (down(a), down(b));
    edges.push(e0);
    let g0 = Graph::from_edges(n - 1, edges)?;
    let sel = select_two_factor_where(&g0, opts, |tf| tf.mate(e0.0) != e0.1)?;
    let f0 = sel.two_factor;

    let up = |x: usize| if x >= v0 { x + 1 } else { x };
    let mut cycles = Vec::new();
    for shift in [0, n] {
        for c in f0.cycles() {
            let mut cyc = Vec::with_capacity(c.len() + 1);
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                cyc.push(up(x) + shift);
                if (x, y) == e0 || (y, x) == e0 {
                    cyc.push(v0 + shift);
                }
            }
            cycles.push(cyc);
        }
    }
    let (g1, map, copy) = double(g, &[(v0, n + v0)]);
    let f1 = TwoFactor::from_cycles(&g1, cycles)?;
    if !satisfies_ks_condition(&g1, &f1)? {
        return Err(Error::InvalidTwoFactor("transferred 2-factor misses a minimal small cut".into()));
    }
    let leaf = ReductionNode::Leaf { graph: g1, kind: LeafKind::Cubic, pinned: Some(f1) };
    Ok(ReductionNode::Degree2Single { v0, doubled: Box::new(leaf), map, copy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn cubic_is_a_leaf() {
        let r = reduce_subcubic(&named::petersen(), SelectOptions::default()).unwrap();
        assert_eq!(r.kind_name(), "none");
    }

    #[test]
    fn c5_doubles_to_prism() {
        let r = reduce_subcubic(&named::cycle(5), SelectOptions::default()).unwrap();
        let ReductionNode::Degree2Double { doubled, map, copy } = &r else { panic!("{}", r.kind_name()) };
        let ReductionNode::Leaf { graph, .. } = doubled.as_ref() else { panic!() };
        let rep = analyze(graph);
        assert!(rep.is_cubic && rep.is_bridgeless && rep.is_triangle_free);
        assert_eq!(graph.n(), 10);
        assert_eq!(map.len(), 10);
        assert_eq!(copy.iter().filter(|&&c| c == 1).count(), 5);
    }

    #[test]
    fn bridged_pair_splits() {
        let r = reduce_subcubic(&named::bridged_k33_pair(), SelectOptions::default()).unwrap();
        assert_eq!(r.kind_name(), "bridge-split");
        for leaf in r.leaves() {
            let ReductionNode::Leaf { graph, kind, .. } = leaf else { unreachable!() };
            assert_eq!(*kind, LeafKind::Cubic);
            assert!(graph.is_cubic());
        }
    }

    #[test]
    fn single_degree_two_vertex() {
        let g = named::subdivide(&named::petersen(), 0, 1);
        let r = reduce_subcubic(&g, SelectOptions::default()).unwrap();
        let ReductionNode::Degree2Single { v0, doubled, .. } = &r else { panic!("{}", r.kind_name()) };
        assert_eq!(*v0, 10);
        let ReductionNode::Leaf { graph, pinned: Some(f1), .. } = doubled.as_ref() else { panic!() };
        assert_eq!(graph.n(), 22);
        assert_eq!(analyze(graph).bridge_list, vec![(10, 21)]);
        assert_eq!(f1.mate(10), 21);
    }

    #[test]
    fn rejects_triangles() {
        assert!(reduce_subcubic(&named::complete(4), SelectOptions::default()).is_err());
    }
}
