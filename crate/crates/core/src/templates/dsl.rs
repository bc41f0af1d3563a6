//! Line-oriented text form of templates.
//!
//! ```text
//! focus 3
//! arc u -> v
//! arc u- -> (u-)'
//! tri u
//! ```
//!
//! Vertices are integers, `u` (the focus), `v` (its mate) or parenthesized
//! expressions, followed by any number of `+k`, `-k` (F-steps, `k` defaults
//! to 1) and `'` (mate).

use std::fmt::Write;

use super::Template;
use crate::error::{Error, Result};
use crate::two_factor::TwoFactor;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Resolver<'a> {
    tf: &'a TwoFactor,
    focus: Option<usize>,
    line: usize,
}

impl Resolver<'_> {
    fn expr(&self, s: &str) -> Result<usize> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (x, used) = self.postfix(&chars, 0)?;
        if used != chars.len() {
            return Err(parse_err(self.line, format!("unexpected text in vertex {s:?}")));
        }
        Ok(x)
    }

    fn postfix(&self, c: &[char], mut i: usize) -> Result<(usize, usize)> {
        let (mut x, next) = self.primary(c, i)?;
        i = next;
        while i < c.len() {
            match c[i] {
                '\'' => {
                    x = self.tf.mate(x);
                    i += 1;
                }
                '+' | '-' => {
                    let sign = if c[i] == '+' { 1 } else { -1 };
                    i += 1;
                    let start = i;
                    while i < c.len() && c[i].is_ascii_digit() {
                        i += 1;
                    }
                    let k: i64 = if start == i { 1 } else { c[start..i].iter().collect::<String>().parse().unwrap() };
                    x = self.tf.navigate(x, sign * k);
                }
                _ => break,
            }
        }
        Ok((x, i))
    }

    fn primary(&self, c: &[char], i: usize) -> Result<(usize, usize)> {
        let Some(&first) = c.get(i) else {
            return Err(parse_err(self.line, "missing vertex"));
        };
        match first {
            'u' | 'v' => {
                let u = self.focus.ok_or_else(|| parse_err(self.line, "`u` used without a focus"))?;
                Ok((if first == 'u' { u } else { self.tf.mate(u) }, i + 1))
            }
            '(' => {
                let (x, j) = self.postfix(c, i + 1)?;
                if c.get(j) != Some(&')') {
                    return Err(parse_err(self.line, "unbalanced parenthesis"));
                }
                Ok((x, j + 1))
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < c.len() && c[j].is_ascii_digit() {
                    j += 1;
                }
                let x: usize = c[i..j].iter().collect::<String>().parse().unwrap();
                if x >= self.tf.n() {
                    return Err(parse_err(self.line, format!("vertex {x} out of range")));
                }
                Ok((x, j))
            }
            other => Err(parse_err(self.line, format!("unexpected {other:?}"))),
        }
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let l = raw.split('#').next().unwrap().trim();
        if l.is_empty() {
            return None;
        }
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        Some((i + 1, kw, rest.trim()))
    })
}

/// Parses the template text against `tf` and validates the result.
pub fn parse_template_dsl(text: &str, tf: &TwoFactor) -> Result<Template> {
    let mut r = Resolver { tf, focus: None, line: 0 };
    for (line, kw, rest) in lines(text) {
        if kw == "focus" {
            if r.focus.is_some() {
                return Err(parse_err(line, "focus given twice"));
            }
            r.line = line;
            r.focus = Some(r.expr(rest)?);
        }
    }
    let focus = r.focus.ok_or_else(|| parse_err(0, "missing focus line"))?;
    let mut t = Template::new(focus);
    for (line, kw, rest) in lines(text) {
        r.line = line;
        match kw {
            "focus" => {}
            "arc" => {
                let split = rest.find("->").ok_or_else(|| parse_err(line, "arc needs `a -> b`"))?;
                let (a, b) = (r.expr(&rest[..split])?, r.expr(&rest[split + 2..])?);
                if tf.mate(a) != b {
                    return Err(parse_err(line, format!("{a}-{b} is not a matching edge")));
                }
                t.add_arc(a, b).map_err(|e| parse_err(line, e.to_string()))?;
            }
            "star" | "xstar" | "tri" | "xtri" => {
                let x = r.expr(rest)?;
                let set = match kw {
                    "star" => &mut t.d1,
                    "xstar" => &mut t.d1bar,
                    "tri" => &mut t.d3,
                    _ => &mut t.d3bar,
                };
                set.insert(x);
            }
            other => return Err(parse_err(line, format!("unknown keyword {other:?}"))),
        }
    }
    t.validate(tf)?;
    Ok(t)
}

/// Canonical text: numeric vertices, sorted entries.
pub fn print_template_dsl(t: &Template) -> String {
    let mut s = format!("focus {}\n", t.focus);
    for (a, b) in &t.arcs {
        writeln!(s, "arc {a} -> {b}").unwrap();
    }
    for (kw, set) in [("star", &t.d1), ("xstar", &t.d1bar), ("tri", &t.d3), ("xtri", &t.d3bar)] {
        for x in set {
            writeln!(s, "{kw} {x}").unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn pentagon_prism() -> TwoFactor {
        let g = named::circular_ladder(5);
        TwoFactor::from_matching(&g, &(0..5).map(|i| (i, i + 5)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn offsets_resolve() {
        let tf = pentagon_prism();
        let r = Resolver { tf: &tf, focus: Some(0), line: 1 };
        assert_eq!(r.expr("u").unwrap(), 0);
        assert_eq!(r.expr("v").unwrap(), 5);
        assert_eq!(r.expr("u+2").unwrap(), 2);
        assert_eq!(r.expr("u-").unwrap(), 4);
        assert_eq!(r.expr("(u-)'").unwrap(), 9);
        assert_eq!(r.expr("u-'").unwrap(), 9);
        assert_eq!(r.expr("v-2").unwrap(), 8);
        assert_eq!(r.expr("u' + 1").unwrap(), 6);
        assert!(r.expr("w").is_err());
        assert!(r.expr("(u-").is_err());
        assert!(r.expr("11").is_err());
    }

    #[test]
    fn template_b() {
        let tf = pentagon_prism();
        let t = parse_template_dsl("focus 0\narc u -> v\narc u- -> (u-)'\ntri u\n", &tf).unwrap();
        assert_eq!(t.arcs.iter().copied().collect::<Vec<_>>(), vec![(0, 5), (4, 9)]);
        assert_eq!(t.weight(), 3);
    }

    #[test]
    fn errors_carry_lines() {
        let tf = pentagon_prism();
        let e = parse_template_dsl("focus 0\narc 0->5\narc 5->0\n", &tf).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_template_dsl("focus 0\narc 0->1\n", &tf).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(parse_template_dsl("focus 0\nstar 0\n", &tf).is_err());
        assert!(parse_template_dsl("arc 0->5\n", &tf).is_err());
    }

    #[test]
    fn focus_only_is_weightless() {
        let tf = pentagon_prism();
        let t = parse_template_dsl("# nothing\nfocus 3\n", &tf).unwrap();
        assert_eq!(t.weight(), 0);
    }

    #[test]
    fn print_parse_round_trip() {
        let tf = pentagon_prism();
        let t = parse_template_dsl("focus 1\narc u->v\narc 0->5\nxstar 5\nxtri 1\n", &tf).unwrap();
        let p = print_template_dsl(&t);
        assert_eq!(parse_template_dsl(&p, &tf).unwrap(), t);
        assert_eq!(print_template_dsl(&parse_template_dsl(&p, &tf).unwrap()), p);
    }
}
