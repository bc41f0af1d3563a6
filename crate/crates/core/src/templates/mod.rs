//! Templates: partial prescriptions of a situation around a focus vertex,
//! with the weight, sensitive pairs and probability lower bound attached to
//! them.

mod dsl;
mod eval;
mod library;

pub use dsl::{parse_template_dsl, print_template_dsl};
pub use eval::{EventEngine, Lemma4Report};
pub use library::{builtin, compose_pqr, sigma_library, Composed, BUILTIN_NAMES, LEFT_NAMES, UPPER_NAMES};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::two_factor::TwoFactor;

/// `(arcs, d1, d1bar, d3, d3bar)` around `focus`. Arcs are `(tail, head)`
/// pairs of matching edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub focus: usize,
    pub arcs: BTreeSet<(usize, usize)>,
    pub d1: BTreeSet<usize>,
    pub d1bar: BTreeSet<usize>,
    pub d3: BTreeSet<usize>,
    pub d3bar: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    /// Both in `d1` or both in `d1bar`, odd distance.
    LinearA,
    /// One in each, even distance.
    LinearB,
    /// `(x, x)` with `x` in `d1` on an odd cycle.
    CircularC,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivePair {
    pub x: usize,
    pub y: usize,
    pub kind: PairKind,
    /// Number of non-head vertices on the path from `x` to `y`.
    pub freeness: u32,
}

impl SensitivePair {
    pub fn is_circular(&self) -> bool {
        self.kind == PairKind::CircularC
    }
}

/// Bitmask form of a template used when scanning situations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pattern {
    pub heads: VertexSet,
    pub d1: VertexSet,
    pub d1bar: VertexSet,
    pub d3: VertexSet,
    pub d3bar: VertexSet,
}

impl Pattern {
    pub fn weakly_conforms(&self, heads: VertexSet, s1: VertexSet) -> bool {
        heads & self.heads == self.heads && s1 & self.d1 == self.d1 && s1 & self.d1bar == 0
    }

    pub fn conforms(&self, heads: VertexSet, s1: VertexSet, s3: VertexSet) -> bool {
        self.weakly_conforms(heads, s1) && s3 & self.d3 == self.d3 && s3 & self.d3bar == 0
    }
}

fn mask(set: &BTreeSet<usize>) -> VertexSet {
    bits::from_vertices(set.iter().copied())
}

impl Template {
    pub fn new(focus: usize) -> Self {
        Template { focus, ..Default::default() }
    }

    /// Adds the arc `tail -> head`, rejecting the reverse of an existing arc.
    pub fn add_arc(&mut self, tail: usize, head: usize) -> Result<()> {
        if self.arcs.contains(&(head, tail)) {
            return Err(Error::Template(format!("edge {tail}-{head} oriented both ways")));
        }
        self.arcs.insert((tail, head));
        Ok(())
    }

    /// Orients the matching edge at `x` so that `x` is a head.
    pub fn head(&mut self, tf: &TwoFactor, x: usize) -> Result<()> {
        self.add_arc(tf.mate(x), x)
    }

    pub fn heads(&self) -> BTreeSet<usize> {
        self.arcs.iter().map(|a| a.1).collect()
    }

    pub fn tails(&self) -> BTreeSet<usize> {
        self.arcs.iter().map(|a| a.0).collect()
    }

    /// `d1 | d1bar | d3 | d3bar`.
    pub fn starred(&self) -> BTreeSet<usize> {
        self.d1.iter().chain(&self.d1bar).chain(&self.d3).chain(&self.d3bar).copied().collect()
    }

    pub fn weight(&self) -> u32 {
        (self.arcs.len() + self.starred().len()) as u32
    }

    pub fn pattern(&self) -> Pattern {
        Pattern {
            heads: bits::from_vertices(self.arcs.iter().map(|a| a.1)),
            d1: mask(&self.d1),
            d1bar: mask(&self.d1bar),
            d3: mask(&self.d3),
            d3bar: mask(&self.d3bar),
        }
    }

    /// Checks the defining conditions and that every arc is a matching edge.
    pub fn validate(&self, tf: &TwoFactor) -> Result<()> {
        let bad = |m: String| Err(Error::Template(m));
        let n = tf.n();
        if self.focus >= n {
            return bad(format!("focus {} out of range", self.focus));
        }
        for &(t, h) in &self.arcs {
            if t >= n || h >= n || tf.mate(t) != h {
                return bad(format!("arc {t}->{h} is not a matching edge"));
            }
            if self.arcs.contains(&(h, t)) {
                return bad(format!("edge {t}-{h} oriented both ways"));
            }
        }
        let (heads, tails) = (self.heads(), self.tails());
        if let Some(x) = self.d1.intersection(&self.d1bar).next() {
            return bad(format!("{x} both starred and crossed"));
        }
        if let Some(x) = self.d3.intersection(&self.d3bar).next() {
            return bad(format!("{x} both in and out of phase 3"));
        }
        if let Some(x) = self.d1.iter().chain(&self.d1bar).find(|x| !heads.contains(x)) {
            return bad(format!("phase-1 symbol on {x}, which is not a head"));
        }
        if let Some(x) = self.d3.iter().chain(&self.d3bar).find(|x| !tails.contains(x)) {
            return bad(format!("phase-3 symbol on {x}, which is not a tail"));
        }
        Ok(())
    }

    /// Union of the constituents; `Err` names the conflict.
    pub fn union(&self, other: &Template) -> std::result::Result<Template, String> {
        let mut t = self.clone();
        for &(a, b) in &other.arcs {
            t.add_arc(a, b).map_err(|e| e.to_string())?;
        }
        t.d1.extend(&other.d1);
        t.d1bar.extend(&other.d1bar);
        t.d3.extend(&other.d3);
        t.d3bar.extend(&other.d3bar);
        if let Some(x) = t.d3.intersection(&t.d3bar).next() {
            return Err(format!("{x} required both in and out of phase 3"));
        }
        if let Some(x) = t.d1.intersection(&t.d1bar).next() {
            return Err(format!("{x} required both in and out of phase 1"));
        }
        Ok(t)
    }

    /// All sensitive pairs with their exact freeness.
    pub fn sensitive_pairs(&self, tf: &TwoFactor) -> Vec<SensitivePair> {
        let heads = self.heads();
        let tails = self.tails();
        let star = self.starred();
        let cand: Vec<usize> = self.d1.iter().chain(&self.d1bar).copied().collect();
        let mut out = Vec::new();
        for &x in &cand {
            for &y in &cand {
                if !tf.same_cycle(x, y) {
                    continue;
                }
                let path = tf.path(x, y);
                let inner = &path[1..path.len() - 1];
                if inner.iter().any(|z| star.contains(z)) || path.iter().any(|z| tails.contains(z)) {
                    continue;
                }
                let kind = if x == y {
                    if !self.d1.contains(&x) || tf.cycle_len(x).is_multiple_of(2) {
                        continue;
                    }
                    PairKind::CircularC
                } else {
                    let same = self.d1.contains(&x) == self.d1.contains(&y);
                    let odd = tf.dist(x, y) % 2 == 1;
                    match (same, odd) {
                        (true, true) => PairKind::LinearA,
                        (false, false) => PairKind::LinearB,
                        _ => continue,
                    }
                };
                let walk = if x == y { &path[..path.len() - 1] } else { &path[..] };
                let freeness = walk.iter().filter(|z| !heads.contains(z)).count() as u32;
                out.push(SensitivePair { x, y, kind, freeness });
            }
        }
        out
    }

    /// Upper bound on `q`: zero if the focus is not in `d3`, its cycle holds a
    /// head or is even; otherwise `1/2^t` for `t` non-tail vertices on it.
    pub fn q_upper<S: Scalar>(&self, tf: &TwoFactor) -> S {
        let u = self.focus;
        let z = tf.cycle_containing(u);
        let heads = self.heads();
        if !self.d3.contains(&u) || z.len().is_multiple_of(2) || z.iter().any(|x| heads.contains(x)) {
            return S::zero();
        }
        let tails = self.tails();
        S::half_pow(z.iter().filter(|x| !tails.contains(x)).count() as u32)
    }
}

/// `(1 - sum 1/2^x - sum 1/(5 2^y) - q/5) / 2^w`, clamped at zero.
pub fn lemma4_lower_bound<S: Scalar>(t: &Template, pairs: &[SensitivePair], q: &S) -> S {
    let five = S::from_usize(5);
    let mut factor = S::one() - q.clone() / five.clone();
    for p in pairs {
        let term = S::half_pow(p.freeness);
        factor = factor - if p.is_circular() { term / five.clone() } else { term };
    }
    let bound = factor * S::half_pow(t.weight());
    S::max_of(bound, S::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::scalar::{ratio, Rational};

    fn pentagon_prism() -> TwoFactor {
        let g = named::circular_ladder(5);
        TwoFactor::from_matching(&g, &(0..5).map(|i| (i, i + 5)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn weight_counts_arcs_and_symbols() {
        let tf = pentagon_prism();
        let mut t = Template::new(0);
        t.head(&tf, 0).unwrap();
        t.head(&tf, 6).unwrap();
        t.d1.insert(0);
        assert_eq!(t.weight(), 3);
        assert!(t.validate(&tf).is_ok());
        t.d3.insert(0);
        assert!(t.validate(&tf).is_err());
    }

    #[test]
    fn double_orientation_rejected() {
        let mut t = Template::new(0);
        t.add_arc(0, 5).unwrap();
        assert!(t.add_arc(5, 0).is_err());
    }

    #[test]
    fn circular_pair_on_odd_cycle() {
        let tf = pentagon_prism();
        let mut t = Template::new(0);
        t.head(&tf, 0).unwrap();
        t.head(&tf, 1).unwrap();
        t.head(&tf, 4).unwrap();
        t.d1.insert(0);
        let pairs = t.sensitive_pairs(&tf);
        assert_eq!(pairs, vec![SensitivePair { x: 0, y: 0, kind: PairKind::CircularC, freeness: 2 }]);
        let b: Rational = lemma4_lower_bound(&t, &pairs, &Rational::from_usize(0));
        assert_eq!(b, ratio(19, 20) * ratio(1, 16));
    }

    #[test]
    fn tail_on_cycle_kills_circular_pair() {
        let tf = pentagon_prism();
        let mut t = Template::new(0);
        t.head(&tf, 0).unwrap();
        t.head(&tf, 6).unwrap();
        t.d1.insert(0);
        assert!(t.sensitive_pairs(&tf).is_empty());
    }

    #[test]
    fn linear_pairs() {
        let tf = pentagon_prism();
        let mut t = Template::new(0);
        t.head(&tf, 0).unwrap();
        t.head(&tf, 1).unwrap();
        t.head(&tf, 3).unwrap();
        t.d1.insert(0);
        t.d1.insert(1);
        t.d1bar.insert(3);
        let mut got: Vec<(usize, usize, PairKind, u32)> =
            t.sensitive_pairs(&tf).into_iter().map(|p| (p.x, p.y, p.kind, p.freeness)).collect();
        got.sort();
        // 0->1 odd, same class; 1->3 even, mixed; 3->0 even, mixed (through 4).
        assert_eq!(got, vec![(0, 1, PairKind::LinearA, 0), (1, 3, PairKind::LinearB, 1), (3, 0, PairKind::LinearB, 1)]);
    }

    #[test]
    fn lower_bound_examples() {
        let t = {
            let mut t = Template::new(0);
            t.arcs.insert((5, 0));
            t.arcs.insert((1, 6));
            t.arcs.insert((4, 9));
            t
        };
        let zero = Rational::from_usize(0);
        assert_eq!(lemma4_lower_bound(&t, &[], &zero), ratio(32, 256));
        let pairs = [
            SensitivePair { x: 1, y: 2, kind: PairKind::LinearA, freeness: 2 },
            SensitivePair { x: 3, y: 3, kind: PairKind::CircularC, freeness: 4 },
        ];
        assert_eq!(lemma4_lower_bound(&t, &pairs, &zero), ratio(1, 8) * (ratio(1, 1) - ratio(1, 4) - ratio(1, 80)));
        let many = vec![SensitivePair { x: 1, y: 2, kind: PairKind::LinearA, freeness: 0 }; 2];
        assert_eq!(lemma4_lower_bound(&t, &many, &zero), zero);
    }

    #[test]
    fn q_upper_cases() {
        let tf = pentagon_prism();
        let mut t = Template::new(0);
        t.arcs.insert((0, 5));
        let zero = Rational::from_usize(0);
        assert_eq!(t.q_upper::<Rational>(&tf), zero);
        t.d3.insert(0);
        assert_eq!(t.q_upper::<Rational>(&tf), ratio(1, 16));
        t.arcs.insert((7, 2));
        assert_eq!(t.q_upper::<Rational>(&tf), zero);
    }
}
