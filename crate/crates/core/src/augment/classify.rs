use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{ratio, Rational};
use crate::two_factor::TwoFactor;

/// Deficiency type of a vertex. Starred variants are mirror images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DType {
    Zero,
    I,
    Ia,
    Ib,
    II,
    IIa,
    III,
    IaStar,
    IbStar,
    IIStar,
    IIaStar,
    IIIStar,
}

impl DType {
    pub const ALL: [DType; 12] = [
        DType::Zero,
        DType::I,
        DType::Ia,
        DType::Ib,
        DType::II,
        DType::IIa,
        DType::III,
        DType::IaStar,
        DType::IbStar,
        DType::IIStar,
        DType::IIaStar,
        DType::IIIStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DType::Zero => "0",
            DType::I => "I",
            DType::Ia => "Ia",
            DType::Ib => "Ib",
            DType::II => "II",
            DType::IIa => "IIa",
            DType::III => "III",
            DType::IaStar => "Ia*",
            DType::IbStar => "Ib*",
            DType::IIStar => "II*",
            DType::IIaStar => "IIa*",
            DType::IIIStar => "III*",
        }
    }

    /// The unstarred type.
    pub fn base(self) -> DType {
        match self {
            DType::IaStar => DType::Ia,
            DType::IbStar => DType::Ib,
            DType::IIStar => DType::II,
            DType::IIaStar => DType::IIa,
            DType::IIIStar => DType::III,
            t => t,
        }
    }

    fn starred(self) -> DType {
        match self {
            DType::Ia => DType::IaStar,
            DType::Ib => DType::IbStar,
            DType::II => DType::IIStar,
            DType::IIa => DType::IIaStar,
            DType::III => DType::IIIStar,
            t => t,
        }
    }

    /// `|epsilon|` for this type.
    pub fn magnitude(self) -> Rational {
        match self.base() {
            DType::Zero => ratio(1, 1),
            DType::I => ratio(1, 2),
            DType::Ia => ratio(2, 1),
            DType::Ib => ratio(3, 2),
            DType::II => ratio(1, 8),
            DType::IIa => ratio(1, 2),
            DType::III => ratio(1, 8),
            _ => unreachable!(),
        }
    }

    pub fn is_chord_type(self) -> bool {
        self != DType::Zero
    }
}

impl fmt::Display for DType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for DType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// True iff the edge `uv` lies on a 4-cycle.
pub fn edge_in_four_cycle(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbours(u)
        .iter()
        .filter(|&&a| a != v)
        .any(|&a| g.neighbours(v).iter().any(|&b| b != u && b != a && g.has_edge(a, b)))
}

/// True iff the path `a x b` lies on a 4-cycle, i.e. `a` and `b` have a common neighbour other than `x`.
pub fn path_in_four_cycle(g: &Graph, a: usize, x: usize, b: usize) -> bool {
    g.neighbours(a).iter().any(|&y| y != x && y != b && g.has_edge(y, b))
}

/// `epsilon(u)` when the mate of `u` lies on another cycle.
pub fn epsilon_nochord(g: &Graph, tf: &TwoFactor, u: usize) -> Result<i64> {
    if tf.is_chord(u) {
        return Err(Error::Precondition { vertex: u, msg: "mate lies on the same cycle".into() });
    }
    let v = tf.mate(u);
    if edge_in_four_cycle(g, u, v) {
        return Ok(1);
    }
    let cv = tf.cycle_mask(tf.cycle_of(v));
    let hits = [tf.prev(u), tf.next(u)].into_iter().any(|w| {
        crate::graph::four_cycles_through(g, w)
            .iter()
            .any(|c| c.iter().any(|&x| crate::bits::contains(cv, x)))
    });
    Ok(if hits { -1 } else { 0 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordClass {
    pub vertex: usize,
    /// Matching rows in table order, unstarred rows first.
    pub matches: Vec<DType>,
}

impl ChordClass {
    pub fn dtype(&self) -> Option<DType> {
        self.matches.first().copied()
    }
}

fn chord_rows(tf: &TwoFactor, u: usize) -> Vec<DType> {
    let v = tf.mate(u);
    let at = |k: i64| tf.navigate(u, k);
    let vt = |k: i64| tf.navigate(v, k);
    let inm = |a: usize, b: usize| tf.mate(a) == b;
    let d = tf.dist(u, v);
    let rest = tf.cycle_len(u) - d;
    let mut out = vec![];
    if d != 4 {
        return out;
    }
    let ia_core = inm(at(2), vt(1)) && inm(at(-2), vt(-1));
    if ia_core && !inm(at(1), vt(2)) {
        out.push(DType::Ia);
    }
    if ia_core && inm(at(1), vt(2)) {
        out.push(DType::Ib);
    }
    let shared = inm(at(-2), vt(1)) && inm(at(-3), at(1));
    if rest >= 7 && shared && inm(at(-1), vt(2)) && !inm(vt(3), vt(-1)) {
        out.push(DType::II);
    }
    if rest == 6 && shared && inm(at(-1), at(-4)) {
        out.push(DType::IIa);
    }
    if rest == 8 && shared && inm(vt(3), vt(-1)) && inm(at(-1), at(-4)) {
        out.push(DType::III);
    }
    out
}

/// Deficiency type of a chord vertex `u` whose chord is on no 4-cycle.
pub fn classify_chord(g: &Graph, tf: &TwoFactor, u: usize) -> Result<ChordClass> {
    if !tf.is_chord(u) {
        return Err(Error::Precondition { vertex: u, msg: "mate lies on another cycle".into() });
    }
    let v = tf.mate(u);
    if edge_in_four_cycle(g, u, v) {
        return Err(Error::Precondition { vertex: u, msg: "chord lies on a 4-cycle".into() });
    }
    let mut matches = chord_rows(tf, u);
    let rev = tf.reversed();
    matches.extend(chord_rows(&rev, u).into_iter().map(DType::starred));
    let ia_family = matches.iter().any(|t| matches!(t.base(), DType::Ia | DType::Ib));
    let type_i = path_in_four_cycle(g, tf.prev(v), v, tf.next(v)) && !path_in_four_cycle(g, tf.prev(u), u, tf.next(u));
    if type_i && !ia_family {
        matches.push(DType::I);
    }
    Ok(ChordClass { vertex: u, matches })
}
