use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::two_factor::TwoFactor;

/// A maximal F-connected subset of some vertex set, listed in cycle order.
/// Paths start at the vertex whose predecessor lies outside the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub vertices: Vec<usize>,
    pub cyclic: bool,
}

impl Run {
    pub fn mask(&self) -> VertexSet {
        bits::from_vertices(self.vertices.iter().copied())
    }

    /// Outcomes of `Phi` on this run as `(subset, denominator)`; each outcome
    /// has probability `1 / denominator`.
    pub fn options(&self) -> Vec<(VertexSet, u64)> {
        let len = self.vertices.len();
        let pick = |keep: &dyn Fn(usize) -> bool| -> VertexSet {
            self.vertices.iter().enumerate().filter(|&(i, _)| keep(i)).fold(0, |m, (_, &v)| m | bits::bit(v))
        };
        if self.cyclic && len % 2 == 1 {
            (0..len)
                .map(|s| (pick(&|i| ((i + len - s) % len).is_multiple_of(2) && (i + len - s) % len < len - 1), len as u64))
                .collect()
        } else {
            vec![(pick(&|i| i % 2 == 0), 2), (pick(&|i| i % 2 == 1), 2)]
        }
    }
}

/// The runs of `set`: components of `F[set]`, in order of cycle index.
pub fn runs_of(tf: &TwoFactor, set: VertexSet) -> Vec<Run> {
    let mut out = Vec::new();
    for c in tf.cycles() {
        let len = c.len();
        let inside = |i: usize| bits::contains(set, c[i % len]);
        let Some(gap) = (0..len).find(|&i| !inside(i)) else {
            out.push(Run { vertices: c.clone(), cyclic: true });
            continue;
        };
        let mut cur: Vec<usize> = Vec::new();
        for k in gap + 1..=gap + len {
            if inside(k) {
                cur.push(c[k % len]);
            } else if !cur.is_empty() {
                out.push(Run { vertices: std::mem::take(&mut cur), cyclic: false });
            }
        }
    }
    out
}

/// Full outcome law of `Phi(set)`: the product over the runs of `set`.
pub fn phi_outcomes<S: Scalar>(tf: &TwoFactor, set: VertexSet) -> Result<Vec<(VertexSet, S)>> {
    if tf.n() < 64 && set >> tf.n() != 0 {
        return Err(Error::Invalid("set contains vertices outside the graph".into()));
    }
    let mut acc: Vec<(VertexSet, S)> = vec![(0, S::one())];
    for run in runs_of(tf, set) {
        let opts = run.options();
        acc = acc
            .into_iter()
            .flat_map(|(m, p)| opts.iter().map(move |&(o, d)| (m | o, p.clone() * S::from_ratio(1, d as i64))))
            .collect();
    }
    Ok(acc)
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
    fn singleton_is_a_coin() {
        let tf = pentagon_prism();
        let out: Vec<(VertexSet, Rational)> = phi_outcomes(&tf, bits::bit(2)).unwrap();
        assert_eq!(out, vec![(bits::bit(2), ratio(1, 2)), (0, ratio(1, 2))]);
    }

    #[test]
    fn odd_cycle_uniform_over_mis() {
        let tf = pentagon_prism();
        let out: Vec<(VertexSet, Rational)> = phi_outcomes(&tf, 0b11111).unwrap();
        assert_eq!(out.len(), 5);
        let mut sets: Vec<VertexSet> = out.iter().map(|x| x.0).collect();
        sets.sort_unstable();
        sets.dedup();
        assert_eq!(sets.len(), 5);
        for (s, p) in out {
            assert_eq!(s.count_ones(), 2);
            assert_eq!(p, ratio(1, 5));
            assert!(bits::members(s).all(|x| !bits::contains(s, tf.next(x))));
        }
    }

    #[test]
    fn three_path() {
        let tf = pentagon_prism();
        let out: Vec<(VertexSet, Rational)> = phi_outcomes(&tf, 0b01110).unwrap();
        assert_eq!(out, vec![(0b01010, ratio(1, 2)), (0b00100, ratio(1, 2))]);
    }

    #[test]
    fn runs_wrap_around() {
        let tf = pentagon_prism();
        let runs = runs_of(&tf, 0b11001 | 1 << 7);
        assert_eq!(runs[0], Run { vertices: vec![3, 4, 0], cyclic: false });
        assert_eq!(runs[1], Run { vertices: vec![7], cyclic: false });
    }

    #[test]
    fn probabilities_sum_to_one() {
        let tf = pentagon_prism();
        for set in [0u64, 0b1011011011, 0b1111111111, 0b0101010101] {
            let out: Vec<(VertexSet, Rational)> = phi_outcomes(&tf, set).unwrap();
            let total: Rational = out.iter().map(|x| x.1.clone()).sum();
            assert_eq!(total, ratio(1, 1));
        }
    }
}
