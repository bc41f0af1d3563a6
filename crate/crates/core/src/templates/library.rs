//! The built-in templates around a focus `u` with mate `v`, and their
//! left/right/upper combinations.

use super::Template;
use crate::error::{Error, Result};
use crate::two_factor::TwoFactor;

pub const BUILTIN_NAMES: [&str; 17] = [
    "E0", "E-", "E+", "E+-", "A", "B", "C1", "C2", "C3", "A*", "B*", "C1*", "C2*", "C3*", "D-", "D0", "D+",
];
pub const LEFT_NAMES: [&str; 5] = ["A", "B", "C1", "C2", "C3"];
pub const UPPER_NAMES: [&str; 3] = ["D-", "D0", "D+"];

#[derive(Default)]
struct Spec {
    heads: Vec<usize>,
    d1: Vec<usize>,
    d1bar: Vec<usize>,
    d3: Vec<usize>,
    d3bar: Vec<usize>,
}

impl Spec {
    fn build(self, tf: &TwoFactor, u: usize) -> Result<Template> {
        let mut t = Template::new(u);
        for h in self.heads {
            t.head(tf, h)?;
        }
        t.d1.extend(self.d1);
        t.d1bar.extend(self.d1bar);
        t.d3.extend(self.d3);
        t.d3bar.extend(self.d3bar);
        t.validate(tf)?;
        Ok(t)
    }
}

fn normalize(name: &str) -> String {
    name.replace('\u{2212}', "-").replace('\u{b1}', "+-").replace('₁', "1").replace('₂', "2").replace('₃', "3")
}

/// Instantiates the named template at `u`. Left templates `A..C3` look toward
/// `u-`; the starred versions look toward `u+`.
pub fn builtin(name: &str, tf: &TwoFactor, u: usize) -> Result<Template> {
    let name = normalize(name);
    let v = tf.mate(u);
    let at = |x: usize, k: i64| tf.navigate(x, k);
    let mate = |x: usize| tf.mate(x);
    let spec = match name.as_str() {
        "E0" => Spec { heads: vec![u, mate(at(u, -1)), mate(at(u, 1))], ..Default::default() },
        "E-" => Spec { heads: vec![u, at(u, -1), mate(at(u, 1))], d1: vec![u], ..Default::default() },
        "E+" => Spec { heads: vec![u, at(u, 1), mate(at(u, -1))], d1: vec![u], ..Default::default() },
        "E+-" => Spec { heads: vec![u, at(u, -1), at(u, 1)], d1: vec![u], ..Default::default() },
        "D-" => Spec { heads: vec![v, at(v, -1), mate(at(v, 1))], d1: vec![at(v, -1)], ..Default::default() },
        "D0" => Spec { heads: vec![v, at(v, -1), at(v, 1)], d1bar: vec![v], ..Default::default() },
        "D+" => Spec { heads: vec![v, mate(at(v, -1)), at(v, 1)], d1: vec![at(v, 1)], ..Default::default() },
        _ => {
            let (base, s) = match name.strip_suffix('*') {
                Some(b) => (b, 1),
                None => (name.as_str(), -1),
            };
            let (m1, m2, m3) = (at(u, s), at(u, 2 * s), at(u, 3 * s));
            match base {
                "A" => Spec { heads: vec![v, m1, m2], d1: vec![m2], ..Default::default() },
                "B" => Spec { heads: vec![v, mate(m1)], d3: vec![u], ..Default::default() },
                "C1" => Spec { heads: vec![v, mate(m1)], d3bar: vec![u], d1: vec![mate(m1)], ..Default::default() },
                "C2" => Spec {
                    heads: vec![v, mate(m1), m2],
                    d3bar: vec![u],
                    d1bar: vec![mate(m1)],
                    d1: vec![m2],
                    ..Default::default()
                },
                "C3" => Spec {
                    heads: vec![v, mate(m1), m2, mate(m3)],
                    d3bar: vec![u],
                    d1bar: vec![mate(m1), m2],
                    ..Default::default()
                },
                _ => return Err(Error::Template(format!("unknown template {name:?}"))),
            }
        }
    };
    spec.build(tf, u)
}

/// Outcome of combining a left, a right and an upper template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Composed {
    Valid(Template),
    Invalid(String),
}

impl Composed {
    pub fn template(&self) -> Option<&Template> {
        match self {
            Composed::Valid(t) => Some(t),
            Composed::Invalid(_) => None,
        }
    }
}

/// `PQR`: the union of `P`, the starred `Q` and `R`.
pub fn compose_pqr(p: &str, q: &str, r: &str, tf: &TwoFactor, u: usize) -> Composed {
    let parts = [builtin(p, tf, u), builtin(&format!("{q}*"), tf, u), builtin(r, tf, u)];
    let mut acc: Option<Template> = None;
    for part in parts {
        let t = match part {
            Ok(t) => t,
            Err(e) => return Composed::Invalid(e.to_string()),
        };
        acc = Some(match acc {
            None => t,
            Some(a) => match a.union(&t) {
                Ok(x) => x,
                Err(e) => return Composed::Invalid(e),
            },
        });
    }
    let t = acc.expect("three parts");
    match t.validate(tf) {
        Ok(()) => Composed::Valid(t),
        Err(e) => Composed::Invalid(e.to_string()),
    }
}

/// All 75 combinations `PQR`, named like `"B C1 D+"`.
pub fn sigma_library(tf: &TwoFactor, u: usize) -> Vec<(String, Composed)> {
    let mut out = Vec::with_capacity(75);
    for p in LEFT_NAMES {
        for q in LEFT_NAMES {
            for r in UPPER_NAMES {
                out.push((format!("{p} {q} {r}"), compose_pqr(p, q, r, tf, u)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::two_factor::{select_two_factor, SelectOptions};

    #[test]
    fn weights_of_local_templates() {
        let g = named::petersen();
        let tf = select_two_factor(&g, SelectOptions::default()).unwrap().two_factor;
        for u in 0..10 {
            assert_eq!(builtin("E0", &tf, u).unwrap().weight(), 3);
            assert_eq!(builtin("E+", &tf, u).unwrap().weight(), 4);
            assert_eq!(builtin("E\u{2212}", &tf, u).unwrap().weight(), 4);
            assert_eq!(builtin("E\u{b1}", &tf, u).unwrap().weight(), 4);
        }
        assert!(builtin("Q", &tf, 0).is_err());
    }

    #[test]
    fn c2_and_d0_shapes() {
        let g = named::petersen();
        let tf = select_two_factor(&g, SelectOptions::default()).unwrap().two_factor;
        let u = 0;
        let (v, um, um2) = (tf.mate(u), tf.prev(u), tf.navigate(u, -2));
        let c2 = builtin("C2", &tf, u).unwrap();
        assert_eq!(c2.heads(), [v, tf.mate(um), um2].into_iter().collect());
        assert!(c2.d3bar.contains(&u) && c2.d1bar.contains(&tf.mate(um)) && c2.d1.contains(&um2));
        let d0 = builtin("D0", &tf, u).unwrap();
        assert_eq!(d0.heads(), [v, tf.prev(v), tf.next(v)].into_iter().collect());
        assert!(d0.d1bar.contains(&v));
    }

    #[test]
    fn library_has_75_entries_and_b_c1_dplus_is_invalid() {
        let g = named::petersen();
        let tf = select_two_factor(&g, SelectOptions::default()).unwrap().two_factor;
        for u in 0..10 {
            let lib = sigma_library(&tf, u);
            assert_eq!(lib.len(), 75);
            let bc1 = &lib.iter().find(|(n, _)| n == "B C1 D+").unwrap().1;
            assert!(matches!(bc1, Composed::Invalid(_)));
        }
    }
}
