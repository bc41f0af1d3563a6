//! Candidate events favourable for a deficient vertex. Diagnostics only.

use super::favourable;
use crate::scalar::Scalar;
use crate::templates::{builtin, EventEngine, Template};
use crate::two_factor::TwoFactor;

/// Blocks `w` from the output: `w` is a tail and its neighbour `x` is starred.
fn guard(tf: &TwoFactor, focus: usize, w: usize, x: usize) -> Option<Template> {
    let mut t = Template::new(focus);
    t.add_arc(w, tf.mate(w)).ok()?;
    t.head(tf, x).ok()?;
    t.d1.insert(x);
    t.validate(tf).ok()?;
    Some(t)
}

fn guard_options(tf: &TwoFactor, u: usize, w: usize) -> Vec<(String, usize)> {
    if tf.mate(u) == w {
        vec![(format!("{w}-"), tf.prev(w)), (format!("{w}+"), tf.next(w))]
    } else {
        let dir = if tf.next(u) == w { 1 } else { -1 };
        vec![(format!("{w}{}", if dir > 0 { '+' } else { '-' }), tf.navigate(w, dir))]
    }
}

/// E-events at the sponsor `s`, each combined with guards keeping the other neighbours of `u` out.
pub fn witness_library(tf: &TwoFactor, u: usize, s: usize) -> Vec<(String, Template)> {
    let others: Vec<usize> = [tf.prev(u), tf.next(u), tf.mate(u)].into_iter().filter(|&w| w != s).collect();
    let mut out = vec![];
    for name in ["E0", "E-", "E+", "E+-"] {
        let Ok(base) = builtin(name, tf, s) else { continue };
        let mut partial = vec![(format!("{name}@{s}"), base)];
        for &w in &others {
            let mut next = vec![];
            for (label, t) in &partial {
                for (g_label, x) in guard_options(tf, u, w) {
                    let Some(gt) = guard(tf, s, w, x) else { continue };
                    if let Ok(joined) = t.union(&gt) {
                        if joined.validate(tf).is_ok() {
                            next.push((format!("{label} | {g_label}"), joined));
                        }
                    }
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

/// True iff every situation of the event is favourable for `u` with sponsor `s`.
pub fn is_favourable_event<S: Scalar>(engine: &EventEngine<S>, t: &Template, u: usize, s: usize) -> bool {
    let p = t.pattern();
    let g = &engine.ctx.graph;
    engine
        .space
        .situations
        .iter()
        .filter(|x| p.conforms(x.heads, x.s1, x.s3))
        .all(|x| favourable(g, u, s, x.output))
}
