//! Text fixtures describing a finite category and a monoid over it.
//!
//! ```text
//! # comment
//! name z2
//! object *
//! mor e : * -> *
//! mor t : * -> *
//! id * = e
//! t;t = e            # composites with identities may be omitted
//! dag e = e
//! dag t = t
//! monoid hom         # or `monoid explicit` followed by elem/unit/mul/inv
//! expect diagram5 = pass
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use super::category::{one_object, FinDagCat, Mor};
use super::monoid::{dagger_involution, hom_monoid, InvolutiveStructure, MonoidInProf};
use super::profunctor::{Elem, FinProfunctor};
use super::KEYS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FixtureError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub category: FinDagCat,
    pub monoid: MonoidInProf,
    pub involution: Option<InvolutiveStructure>,
    /// Declared outcomes; keys not listed are expected to pass.
    pub expect: BTreeMap<String, bool>,
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}, monoid of {} elements)",
            self.name,
            self.category,
            self.monoid.len()
        )
    }
}

pub const BUNDLED: &[(&str, &str)] = &[
    ("trivial", include_str!("../../fixtures/trivial.fix")),
    ("z2", include_str!("../../fixtures/z2.fix")),
    ("idempotent", include_str!("../../fixtures/idempotent.fix")),
    ("defect", include_str!("../../fixtures/defect.fix")),
    ("z2_arrow", include_str!("../../fixtures/z2_arrow.fix")),
    ("pinj2", include_str!("../../fixtures/pinj2.fix")),
];

pub fn bundled(name: &str) -> Option<Fixture> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_fixture(text).expect("bundled fixtures parse"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Tok {
    col: usize,
    text: String,
}

fn tokenize(line: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut k = 0;
    let col = |byte: usize| line[..byte].chars().count() + 1;
    while k < chars.len() {
        let (b, ch) = chars[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch == '-' && chars.get(k + 1).map(|c| c.1) == Some('>') {
            out.push(Tok {
                col: col(b),
                text: "->".into(),
            });
            k += 2;
        } else if matches!(ch, ';' | '=' | ':') {
            out.push(Tok {
                col: col(b),
                text: ch.to_string(),
            });
            k += 1;
        } else {
            let start = k;
            while k < chars.len() {
                let c = chars[k].1;
                if c.is_whitespace()
                    || matches!(c, ';' | '=' | ':')
                    || (c == '-' && chars.get(k + 1).map(|c| c.1) == Some('>'))
                {
                    break;
                }
                k += 1;
            }
            let end = chars.get(k).map_or(line.len(), |c| c.0);
            out.push(Tok {
                col: col(b),
                text: line[chars[start].0..end].to_string(),
            });
        }
    }
    out
}

struct Line<'a> {
    no: usize,
    toks: &'a [Tok],
    end_col: usize,
    pos: usize,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> FixtureError {
        FixtureError {
            line: self.no,
            column: col,
            message: message.into(),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(usize, &'a str), FixtureError> {
        match self.toks.get(self.pos) {
            Some(t) if !matches!(t.text.as_str(), ";" | "=" | ":" | "->") => {
                self.pos += 1;
                Ok((t.col, t.text.as_str()))
            }
            Some(t) => Err(self.err(t.col, format!("expected {what}, found `{}`", t.text))),
            None => Err(self.err(self.end_col, format!("expected {what}, found end of line"))),
        }
    }

    fn punct(&mut self, p: &str) -> Result<(), FixtureError> {
        match self.toks.get(self.pos) {
            Some(t) if t.text == p => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(t.col, format!("expected `{p}`, found `{}`", t.text))),
            None => Err(self.err(self.end_col, format!("expected `{p}`, found end of line"))),
        }
    }

    fn done(&self) -> Result<(), FixtureError> {
        match self.toks.get(self.pos) {
            Some(t) => Err(self.err(t.col, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

#[derive(Default)]
struct Builder {
    name: Option<String>,
    objects: Vec<String>,
    obj_index: HashMap<String, usize>,
    mors: Vec<Mor>,
    mor_index: HashMap<String, usize>,
    ids: HashMap<usize, usize>,
    comps: Vec<(usize, usize, usize)>,
    dagger: HashMap<usize, usize>,
    monoid: Option<(usize, bool)>,
    elems: Vec<Elem>,
    elem_index: HashMap<String, usize>,
    unit: HashMap<usize, usize>,
    mul: HashMap<(usize, usize), usize>,
    inv: HashMap<usize, usize>,
    pre: HashMap<(usize, usize), usize>,
    post: HashMap<(usize, usize), usize>,
    expect: BTreeMap<String, bool>,
}

impl Builder {
    fn object(&self, l: &Line, (col, name): (usize, &str)) -> Result<usize, FixtureError> {
        self.obj_index
            .get(name)
            .copied()
            .ok_or_else(|| l.err(col, format!("unknown object `{name}`")))
    }

    fn mor(&self, l: &Line, (col, name): (usize, &str)) -> Result<usize, FixtureError> {
        self.mor_index
            .get(name)
            .copied()
            .ok_or_else(|| l.err(col, format!("unknown morphism `{name}`")))
    }

    fn elem(&self, l: &Line, (col, name): (usize, &str)) -> Result<usize, FixtureError> {
        self.elem_index
            .get(name)
            .copied()
            .ok_or_else(|| l.err(col, format!("unknown element `{name}`")))
    }

    fn explicit(&self, l: &Line, col: usize, what: &str) -> Result<(), FixtureError> {
        match self.monoid {
            Some((_, true)) => Ok(()),
            Some((_, false)) => Err(l.err(col, format!("`{what}` needs `monoid explicit`"))),
            None => Err(l.err(col, format!("`{what}` before `monoid explicit`"))),
        }
    }

    fn line(&mut self, l: &mut Line) -> Result<(), FixtureError> {
        let first = l.toks[0].clone();
        match first.text.as_str() {
            "name" => {
                let rest: Vec<&str> = l.toks[1..].iter().map(|t| t.text.as_str()).collect();
                if rest.is_empty() {
                    return Err(l.err(l.end_col, "expected a name"));
                }
                self.name = Some(rest.join(" "));
                return Ok(());
            }
            "object" => {
                l.pos = 1;
                if l.toks.len() == 1 {
                    return Err(l.err(l.end_col, "expected object names"));
                }
                while l.pos < l.toks.len() {
                    let (col, name) = l.ident("object name")?;
                    if self.obj_index.contains_key(name) {
                        return Err(l.err(col, format!("object `{name}` declared twice")));
                    }
                    self.obj_index.insert(name.into(), self.objects.len());
                    self.objects.push(name.into());
                }
            }
            "mor" | "elem" => {
                l.pos = 1;
                if first.text == "elem" {
                    self.explicit(l, first.col, "elem")?;
                }
                let (col, name) = l.ident("a name")?;
                l.punct(":")?;
                let dom = {
                    let t = l.ident("an object")?;
                    self.object(l, t)?
                };
                l.punct("->")?;
                let cod = {
                    let t = l.ident("an object")?;
                    self.object(l, t)?
                };
                l.done()?;
                if first.text == "mor" {
                    if self.monoid.is_some() {
                        return Err(l.err(first.col, "morphisms must be declared before the monoid"));
                    }
                    if self.mor_index.contains_key(name) {
                        return Err(l.err(col, format!("morphism `{name}` declared twice")));
                    }
                    self.mor_index.insert(name.into(), self.mors.len());
                    self.mors.push(Mor {
                        name: name.into(),
                        dom,
                        cod,
                    });
                } else {
                    if self.elem_index.contains_key(name) {
                        return Err(l.err(col, format!("element `{name}` declared twice")));
                    }
                    self.elem_index.insert(name.into(), self.elems.len());
                    self.elems.push(Elem {
                        label: name.into(),
                        dom,
                        cod,
                    });
                }
            }
            "id" | "dag" => {
                l.pos = 1;
                let lhs = l.ident("a name")?;
                l.punct("=")?;
                let rhs = {
                    let t = l.ident("a morphism")?;
                    self.mor(l, t)?
                };
                l.done()?;
                if first.text == "id" {
                    let x = self.object(l, lhs)?;
                    self.ids.insert(x, rhs);
                } else {
                    let f = self.mor(l, lhs)?;
                    self.dagger.insert(f, rhs);
                }
            }
            "monoid" => {
                l.pos = 1;
                let (col, kind) = l.ident("`hom` or `explicit`")?;
                l.done()?;
                if self.monoid.is_some() {
                    return Err(l.err(first.col, "monoid declared twice"));
                }
                match kind {
                    "hom" => self.monoid = Some((l.no, false)),
                    "explicit" => self.monoid = Some((l.no, true)),
                    other => return Err(l.err(col, format!("unknown monoid kind `{other}`"))),
                }
            }
            "unit" | "inv" => {
                l.pos = 1;
                self.explicit(l, first.col, &first.text)?;
                if first.text == "unit" {
                    let f = {
                        let t = l.ident("a morphism")?;
                        self.mor(l, t)?
                    };
                    l.punct("=")?;
                    let a = {
                        let t = l.ident("an element")?;
                        self.elem(l, t)?
                    };
                    l.done()?;
                    self.unit.insert(f, a);
                } else {
                    let a = {
                        let t = l.ident("an element")?;
                        self.elem(l, t)?
                    };
                    l.punct("=")?;
                    let b = {
                        let t = l.ident("an element")?;
                        self.elem(l, t)?
                    };
                    l.done()?;
                    self.inv.insert(a, b);
                }
            }
            "mul" => {
                l.pos = 1;
                self.explicit(l, first.col, "mul")?;
                let a = {
                    let t = l.ident("an element")?;
                    self.elem(l, t)?
                };
                let b = {
                    let t = l.ident("an element")?;
                    self.elem(l, t)?
                };
                l.punct("=")?;
                let c = {
                    let t = l.ident("an element")?;
                    self.elem(l, t)?
                };
                l.done()?;
                self.mul.insert((a, b), c);
            }
            "pre" => {
                l.pos = 1;
                self.explicit(l, first.col, "pre")?;
                let f = {
                    let t = l.ident("a morphism")?;
                    self.mor(l, t)?
                };
                let a = {
                    let t = l.ident("an element")?;
                    self.elem(l, t)?
                };
                l.punct("=")?;
                let b = {
                    let t = l.ident("an element")?;
                    self.elem(l, t)?
                };
                l.done()?;
                self.pre.insert((f, a), b);
            }
            "post" => {
                l.pos = 1;
                self.explicit(l, first.col, "post")?;
                let a = {
                    let t = l.ident("an element")?;
                    self.elem(l, t)?
                };
                let f = {
                    let t = l.ident("a morphism")?;
                    self.mor(l, t)?
                };
                l.punct("=")?;
                let b = {
                    let t = l.ident("an element")?;
                    self.elem(l, t)?
                };
                l.done()?;
                self.post.insert((a, f), b);
            }
            "expect" => {
                l.pos = 1;
                let (col, key) = l.ident("a check name")?;
                if !KEYS.contains(&key) {
                    return Err(l.err(col, format!("unknown check `{key}`")));
                }
                l.punct("=")?;
                let (vcol, v) = l.ident("`pass` or `fail`")?;
                l.done()?;
                let pass = match v {
                    "pass" => true,
                    "fail" => false,
                    other => return Err(l.err(vcol, format!("expected `pass` or `fail`, found `{other}`"))),
                };
                self.expect.insert(key.into(), pass);
            }
            _ => {
                l.pos = 0;
                let f = {
                    let t = l.ident("a directive or morphism")?;
                    self.mor(l, t)?
                };
                l.punct(";")?;
                let g = {
                    let t = l.ident("a morphism")?;
                    self.mor(l, t)?
                };
                l.punct("=")?;
                let h = {
                    let t = l.ident("a morphism")?;
                    self.mor(l, t)?
                };
                l.done()?;
                if self.monoid.is_some() {
                    return Err(l.err(first.col, "composites must be listed before the monoid"));
                }
                self.comps.push((f, g, h));
            }
        }
        Ok(())
    }

    fn finish(self, last: usize) -> Result<Fixture, FixtureError> {
        let at_end = |message: String| FixtureError {
            line: last + 1,
            column: 1,
            message,
        };
        if self.objects.is_empty() {
            return Err(at_end("no objects declared".into()));
        }
        let mut ids = Vec::new();
        for (x, name) in self.objects.iter().enumerate() {
            ids.push(
                *self
                    .ids
                    .get(&x)
                    .ok_or_else(|| at_end(format!("object `{name}` has no identity")))?,
            );
        }
        let dagger = if self.dagger.is_empty() {
            None
        } else {
            let mut d = Vec::new();
            for (f, m) in self.mors.iter().enumerate() {
                d.push(
                    *self
                        .dagger
                        .get(&f)
                        .ok_or_else(|| at_end(format!("dagger of `{}` is missing", m.name)))?,
                );
            }
            Some(d)
        };
        let c = FinDagCat::new(self.objects.clone(), self.mors.clone(), ids, self.comps.clone(), dagger)
            .map_err(|e| at_end(e.to_string()))?;
        let (_, explicit) = self.monoid.ok_or_else(|| at_end("no monoid declared".into()))?;
        let (monoid, involution) = if !explicit {
            (hom_monoid(&c), dagger_involution(&c))
        } else {
            let n = c.mor_count();
            let mut unit = Vec::new();
            for f in 0..n {
                unit.push(
                    *self
                        .unit
                        .get(&f)
                        .ok_or_else(|| at_end(format!("unit of `{}` is missing", c.name(f))))?,
                );
            }
            for a in 0..self.elems.len() {
                for b in 0..self.elems.len() {
                    if self.elems[a].cod == self.elems[b].dom && !self.mul.contains_key(&(a, b)) {
                        return Err(at_end(format!(
                            "missing product mul {} {}",
                            self.elems[a].label, self.elems[b].label
                        )));
                    }
                }
            }
            let mul = |a: usize, b: usize| self.mul[&(a, b)];
            let prof = FinProfunctor::from_actions(
                &c,
                self.elems.clone(),
                |f, a| self.pre.get(&(f, a)).copied().unwrap_or_else(|| mul(unit[f], a)),
                |a, g| self.post.get(&(a, g)).copied().unwrap_or_else(|| mul(a, unit[g])),
            )
            .map_err(|e| at_end(e.to_string()))?;
            let m = MonoidInProf::new(&c, prof, unit.clone(), |a, b| self.mul.get(&(a, b)).copied())
                .map_err(|e| at_end(e.to_string()))?;
            let inv = if self.inv.is_empty() {
                None
            } else {
                let mut t = Vec::new();
                for (a, e) in self.elems.iter().enumerate() {
                    t.push(
                        *self
                            .inv
                            .get(&a)
                            .ok_or_else(|| at_end(format!("inv of `{}` is missing", e.label)))?,
                    );
                }
                Some(InvolutiveStructure { inv: t })
            };
            (m, inv)
        };
        Ok(Fixture {
            name: self.name.unwrap_or_else(|| "fixture".into()),
            category: c,
            monoid,
            involution,
            expect: self.expect,
        })
    }
}

pub fn parse_fixture(text: &str) -> Result<Fixture, FixtureError> {
    let mut b = Builder::default();
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        last = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content);
        if toks.is_empty() {
            continue;
        }
        let mut l = Line {
            no: k + 1,
            toks: &toks,
            end_col: content.trim_end().chars().count() + 1,
            pos: 0,
        };
        b.line(&mut l)?;
    }
    b.finish(last)
}

/// The symmetric group on three letters as a one-object groupoid.
pub fn s3_category() -> FinDagCat {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let names = ["e", "s01", "s12", "s02", "r", "r2"];
    let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
    // a;b applies a first.
    let mul = |a: usize, b: usize| find([0, 1, 2].map(|x| perms[b][perms[a][x]]));
    let inv = (0..6)
        .map(|a| {
            let mut q = [0; 3];
            for x in 0..3 {
                q[perms[a][x]] = x;
            }
            find(q)
        })
        .collect();
    one_object(&names, 0, mul, Some(inv)).expect("group table")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse() {
        for (name, text) in BUNDLED {
            let fx = parse_fixture(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(fx.name, *name);
        }
    }

    #[test]
    fn defect_declares_its_expectations() {
        let fx = bundled("defect").unwrap();
        assert_eq!(fx.expect.get("diagram5"), Some(&false));
        assert_eq!(fx.monoid.len(), 3);
        assert!(fx.involution.is_some());
    }

    #[test]
    fn tokens_split_punctuation() {
        let t: Vec<String> = tokenize("f;g=h").into_iter().map(|t| t.text).collect();
        assert_eq!(t, ["f", ";", "g", "=", "h"]);
        let t: Vec<String> = tokenize("mor a:X->Y").into_iter().map(|t| t.text).collect();
        assert_eq!(t, ["mor", "a", ":", "X", "->", "Y"]);
    }

    #[test]
    fn errors_carry_line_and_column() {
        let e = parse_fixture("object A\nmor f : A -> B\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 14));
        let e = parse_fixture("object A\nmor f : A -> A\nid A = f\nf;f =").unwrap_err();
        assert_eq!((e.line, e.column), (4, 6));
        assert!(e.message.contains("end of line"));
        let e = parse_fixture("object A\nmor f : A -> A\nid A = f\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("no monoid"));
    }

    #[test]
    fn missing_composites_are_reported() {
        let e = parse_fixture("object A\nmor 1 : A -> A\nmor f : A -> A\nid A = 1\nmonoid hom\n").unwrap_err();
        assert!(e.message.contains("f;f"), "{e}");
    }

    #[test]
    fn unknown_expectation_key() {
        let e = parse_fixture("object A\nmor 1 : A -> A\nid A = 1\nmonoid hom\nexpect diagram9 = pass\n").unwrap_err();
        assert_eq!((e.line, e.column), (5, 8));
    }

    #[test]
    fn s3_is_a_group() {
        let c = s3_category();
        assert!(super::super::category::check_inverse(&c).is_ok());
        assert_ne!(c.then(1, 2), c.then(2, 1));
    }
}
