//! Exhaustive law checking for arrow instances.
//!
//! Every law is quantified over all type-matching combinations of the
//! supplied fixtures and, for laws mentioning pure maps, over the full
//! homsets between the types of a small [`PureUniverse`]. Sides are
//! compared with the instance's own equality.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use super::{arr, first, inv, seq, ArrowError, ArrowInstance, ArrowValue, Discrepancy};
use crate::pinj::{self, Coherence, PartialIso};
use crate::values::Ty;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Law(u8),
    /// The instance-specific invariant of arrow values.
    Invariant,
    /// Laws (13)-(14) imply (11)-(12) and `inv(arr id) = arr id`.
    Redundancy,
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckId::Law(n) => f.pad(&n.to_string()),
            CheckId::Invariant => f.pad("I"),
            CheckId::Redundancy => f.pad("R"),
        }
    }
}

pub fn law_name(n: u8) -> &'static str {
    match n {
        1 => "seq associativity",
        2 => "arr preserves composition",
        3 => "arr id is a unit",
        4 => "first with unit object",
        5 => "first commutes with pure ancilla maps",
        6 => "first respects associator",
        7 => "first of arr",
        8 => "first preserves seq",
        9 => "inv is involutive",
        10 => "inv reverses seq",
        11 => "inv of arr",
        12 => "inv commutes with first",
        13 => "a;inv a;a = a",
        14 => "positive arrows commute",
        _ => "unknown",
    }
}

/// Laws the weak fragment does not check.
pub fn mentions_first(n: u8) -> bool {
    matches!(n, 4..=8 | 12)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    Full,
    Weak,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::Full => "full",
            Fragment::Weak => "weak",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// The arrows and types instantiating the law.
    pub cell: String,
    pub detail: Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct LawEntry {
    pub id: CheckId,
    pub name: &'static str,
    pub verdict: Verdict,
    /// Cells evaluated, up to and including a failing one.
    pub cells: usize,
}

#[derive(Debug, Clone)]
pub struct LawReport {
    pub instance: String,
    pub object_map: String,
    pub fragment: Fragment,
    pub domains: Vec<String>,
    pub fixtures: usize,
    pub entries: Vec<LawEntry>,
    pub elapsed: Duration,
}

impl LawReport {
    pub fn entry(&self, id: CheckId) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn failed(&self) -> BTreeSet<CheckId> {
        self.entries
            .iter()
            .filter(|e| matches!(e.verdict, Verdict::Fail(_)))
            .map(|e| e.id)
            .collect()
    }

    pub fn count(&self, pred: impl Fn(&Verdict) -> bool) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.id, CheckId::Law(_)) && pred(&e.verdict))
            .count()
    }

    pub fn passes(&self) -> usize {
        self.count(|v| *v == Verdict::Pass)
    }

    pub fn skips(&self) -> usize {
        self.count(|v| matches!(v, Verdict::Skipped(_)))
    }

    pub fn all_pass(&self) -> bool {
        self.failed().is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "instance {} [{}] fragment={}",
            self.instance, self.object_map, self.fragment
        );
        let _ = writeln!(out, "domains {} fixtures={}", self.domains.join(" "), self.fixtures);
        for e in &self.entries {
            let verdict = match &e.verdict {
                Verdict::Pass => "pass".to_string(),
                Verdict::Fail(_) => "FAIL".to_string(),
                Verdict::Skipped(why) => format!("skipped ({why})"),
            };
            let _ = writeln!(out, "law {:>2}  {:<40} {:<8} cells={}", e.id, e.name, verdict, e.cells);
            if let Verdict::Fail(w) = &e.verdict {
                let _ = writeln!(out, "        witness {}", w.cell);
                let _ = writeln!(out, "        {}", w.detail);
            }
        }
        let _ = writeln!(
            out,
            "summary pass={} fail={} skip={} time={:.2}s",
            self.passes(),
            self.failed().len(),
            self.skips(),
            self.elapsed.as_secs_f64()
        );
        out
    }

    /// Line-oriented `key=value` records; contains no timing.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "instance name={} fragment={} fixtures={} domains={}",
            quote(&self.instance),
            self.fragment,
            self.fixtures,
            quote(&self.domains.join(" "))
        );
        for e in &self.entries {
            let (verdict, cell, input, lhs, rhs) = match &e.verdict {
                Verdict::Pass => ("pass", "", "", "", ""),
                Verdict::Skipped(_) => ("skipped", "", "", "", ""),
                Verdict::Fail(w) => (
                    "fail",
                    w.cell.as_str(),
                    w.detail.input.as_str(),
                    w.detail.lhs.as_str(),
                    w.detail.rhs.as_str(),
                ),
            };
            let _ = writeln!(
                out,
                "law id={} name={} verdict={} cells={} cell={} input={} lhs={} rhs={}",
                e.id,
                quote(e.name),
                verdict,
                e.cells,
                quote(cell),
                quote(input),
                quote(lhs),
                quote(rhs)
            );
        }
        let _ = writeln!(
            out,
            "summary pass={} fail={} skip={}",
            self.passes(),
            self.failed().len(),
            self.skips()
        );
        out
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Small object types and all lifted pure maps between them.
pub struct PureUniverse {
    pub types: Vec<Ty>,
    homs: Vec<Vec<Vec<PartialIso>>>,
}

impl PureUniverse {
    pub fn new(types: Vec<Ty>, inst: &dyn ArrowInstance) -> Self {
        let homs = types
            .iter()
            .map(|a| {
                types
                    .iter()
                    .map(|b| pinj::homset(a, b).into_iter().filter(|f| inst.lifts(f)).collect())
                    .collect()
            })
            .collect();
        PureUniverse { types, homs }
    }

    fn index(&self, t: &Ty) -> Option<usize> {
        self.types.iter().position(|u| u == t)
    }

    pub fn hom(&self, a: &Ty, b: &Ty) -> &[PartialIso] {
        match (self.index(a), self.index(b)) {
            (Some(i), Some(j)) => &self.homs[i][j],
            _ => &[],
        }
    }

    pub fn all_maps(&self) -> impl Iterator<Item = &PartialIso> {
        self.homs.iter().flatten().flatten()
    }
}

type Sides = Result<(ArrowValue, ArrowValue), ArrowError>;

struct LawRun<'a> {
    inst: &'a dyn ArrowInstance,
    cells: usize,
    failure: Option<Witness>,
}

impl<'a> LawRun<'a> {
    fn new(inst: &'a dyn ArrowInstance) -> Self {
        LawRun {
            inst,
            cells: 0,
            failure: None,
        }
    }

    /// Evaluates one cell; returns false once a failure has been recorded.
    fn cell(&mut self, describe: impl FnOnce() -> String, sides: impl FnOnce() -> Sides) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.cells += 1;
        let detail = match sides() {
            Ok((l, r)) => {
                if l.dom != r.dom || l.cod != r.cod {
                    Some(Discrepancy {
                        input: "signature".into(),
                        lhs: l.signature(),
                        rhs: r.signature(),
                    })
                } else {
                    self.inst.diff(&l, &r).map(|d| Discrepancy {
                        input: d.input,
                        lhs: format!("{} [{}]", d.lhs, l.label),
                        rhs: format!("{} [{}]", d.rhs, r.label),
                    })
                }
            }
            Err(e) => Some(Discrepancy {
                input: "evaluation".into(),
                lhs: format!("error: {e}"),
                rhs: "-".into(),
            }),
        };
        if let Some(detail) = detail {
            self.failure = Some(Witness {
                cell: describe(),
                detail,
            });
            return false;
        }
        true
    }

    fn finish(self, n: u8) -> LawEntry {
        LawEntry {
            id: CheckId::Law(n),
            name: law_name(n),
            verdict: self.failure.map_or(Verdict::Pass, Verdict::Fail),
            cells: self.cells,
        }
    }
}

fn rho(x: &Ty) -> PartialIso {
    pinj::coherence(&Coherence::RightUnitor(x.clone()), false)
}

fn alpha(x: &Ty, y: &Ty, z: &Ty) -> PartialIso {
    pinj::coherence(&Coherence::Assoc(x.clone(), y.clone(), z.clone()), false)
}

/// Runs laws (1)-(14) plus the invariant and redundancy checks.
pub fn check_laws(
    inst: &dyn ArrowInstance,
    fixtures: &[ArrowValue],
    universe: &PureUniverse,
    fragment: Fragment,
) -> LawReport {
    let start = Instant::now();
    let fx = fixtures;
    let tys = &universe.types;
    let check_first = fragment == Fragment::Full && inst.supports_first();
    let mut entries = Vec::new();

    for n in 1..=14u8 {
        if mentions_first(n) && !check_first {
            let why = if fragment == Fragment::Weak {
                "weak fragment"
            } else {
                "no first"
            };
            entries.push(LawEntry {
                id: CheckId::Law(n),
                name: law_name(n),
                verdict: Verdict::Skipped(why.into()),
                cells: 0,
            });
            continue;
        }
        let mut run = LawRun::new(inst);
        match n {
            1 => {
                'outer: for a in fx {
                    for b in fx.iter().filter(|b| b.dom == a.cod) {
                        for c in fx.iter().filter(|c| c.dom == b.cod) {
                            let ok = run.cell(
                                || format!("a={a} b={b} c={c}"),
                                || Ok((seq(inst, &seq(inst, a, b)?, c)?, seq(inst, a, &seq(inst, b, c)?)?)),
                            );
                            if !ok {
                                break 'outer;
                            }
                        }
                    }
                }
            }
            2 => {
                'outer: for x in tys {
                    for y in tys {
                        for z in tys {
                            for f in universe.hom(x, y) {
                                for g in universe.hom(y, z) {
                                    let ok = run.cell(
                                        || format!("f={f} g={g}"),
                                        || {
                                            let fg = pinj::compose(f, g)?;
                                            Ok((arr(inst, &fg)?, seq(inst, &arr(inst, f)?, &arr(inst, g)?)?))
                                        },
                                    );
                                    if !ok {
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            3 => {
                for a in fx {
                    let ok = run.cell(
                        || format!("a={a} (left unit)"),
                        || Ok((seq(inst, &arr(inst, &pinj::identity(&a.dom))?, a)?, a.clone())),
                    ) && run.cell(
                        || format!("a={a} (right unit)"),
                        || Ok((seq(inst, a, &arr(inst, &pinj::identity(&a.cod))?)?, a.clone())),
                    );
                    if !ok {
                        break;
                    }
                }
            }
            4 => {
                for a in fx {
                    let ok = run.cell(
                        || format!("a={a}"),
                        || {
                            let l = seq(inst, &first(inst, a, &Ty::Unit)?, &arr(inst, &rho(&a.cod))?)?;
                            let r = seq(inst, &arr(inst, &rho(&a.dom))?, a)?;
                            Ok((l, r))
                        },
                    );
                    if !ok {
                        break;
                    }
                }
            }
            5 => {
                'outer: for a in fx {
                    for z in tys {
                        for z2 in tys {
                            for f in universe.hom(z, z2) {
                                let ok = run.cell(
                                    || format!("a={a} f={f}"),
                                    || {
                                        let post = pinj::tensor_prod(&pinj::identity(&a.cod), f);
                                        let pre = pinj::tensor_prod(&pinj::identity(&a.dom), f);
                                        let l = seq(inst, &first(inst, a, z)?, &arr(inst, &post)?)?;
                                        let r = seq(inst, &arr(inst, &pre)?, &first(inst, a, z2)?)?;
                                        Ok((l, r))
                                    },
                                );
                                if !ok {
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            6 => {
                'outer: for a in fx {
                    for z in tys {
                        for v in tys {
                            let ok = run.cell(
                                || format!("a={a} Z={z} V={v}"),
                                || {
                                    let zv = Ty::prod(z.clone(), v.clone());
                                    let l = seq(inst, &first(inst, a, &zv)?, &arr(inst, &alpha(&a.cod, z, v))?)?;
                                    let ff = first(inst, &first(inst, a, z)?, v)?;
                                    let r = seq(inst, &arr(inst, &alpha(&a.dom, z, v))?, &ff)?;
                                    Ok((l, r))
                                },
                            );
                            if !ok {
                                break 'outer;
                            }
                        }
                    }
                }
            }
            7 => {
                'outer: for f in universe.all_maps() {
                    for z in tys {
                        let ok = run.cell(
                            || format!("f={f} Z={z}"),
                            || {
                                let l = first(inst, &arr(inst, f)?, z)?;
                                let r = arr(inst, &pinj::tensor_prod(f, &pinj::identity(z)))?;
                                Ok((l, r))
                            },
                        );
                        if !ok {
                            break 'outer;
                        }
                    }
                }
            }
            8 => {
                'outer: for a in fx {
                    for b in fx.iter().filter(|b| b.dom == a.cod) {
                        for z in tys {
                            let ok = run.cell(
                                || format!("a={a} b={b} Z={z}"),
                                || {
                                    let l = first(inst, &seq(inst, a, b)?, z)?;
                                    let r = seq(inst, &first(inst, a, z)?, &first(inst, b, z)?)?;
                                    Ok((l, r))
                                },
                            );
                            if !ok {
                                break 'outer;
                            }
                        }
                    }
                }
            }
            9 => {
                for a in fx {
                    if !run.cell(|| format!("a={a}"), || Ok((inv(inst, &inv(inst, a)?)?, a.clone()))) {
                        break;
                    }
                }
            }
            10 => {
                'outer: for a in fx {
                    for b in fx.iter().filter(|b| b.cod == a.dom) {
                        let ok = run.cell(
                            || format!("a={a} b={b}"),
                            || {
                                Ok((
                                    seq(inst, &inv(inst, a)?, &inv(inst, b)?)?,
                                    inv(inst, &seq(inst, b, a)?)?,
                                ))
                            },
                        );
                        if !ok {
                            break 'outer;
                        }
                    }
                }
            }
            11 => {
                for f in universe.all_maps() {
                    let ok = run.cell(
                        || format!("f={f}"),
                        || Ok((arr(inst, &pinj::dagger(f))?, inv(inst, &arr(inst, f)?)?)),
                    );
                    if !ok {
                        break;
                    }
                }
            }
            12 => {
                'outer: for a in fx {
                    for z in tys {
                        let ok = run.cell(
                            || format!("a={a} Z={z}"),
                            || Ok((inv(inst, &first(inst, a, z)?)?, first(inst, &inv(inst, a)?, z)?)),
                        );
                        if !ok {
                            break 'outer;
                        }
                    }
                }
            }
            13 => {
                for a in fx {
                    let ok = run.cell(
                        || format!("a={a}"),
                        || Ok((seq(inst, &seq(inst, a, &inv(inst, a)?)?, a)?, a.clone())),
                    );
                    if !ok {
                        break;
                    }
                }
            }
            14 => {
                'outer: for a in fx {
                    for b in fx.iter().filter(|b| b.dom == a.dom) {
                        let ok = run.cell(
                            || format!("a={a} b={b}"),
                            || {
                                let pa = seq(inst, a, &inv(inst, a)?)?;
                                let pb = seq(inst, b, &inv(inst, b)?)?;
                                Ok((seq(inst, &pa, &pb)?, seq(inst, &pb, &pa)?))
                            },
                        );
                        if !ok {
                            break 'outer;
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        entries.push(run.finish(n));
    }

    entries.push(invariant_entry(inst, fx, tys, check_first));
    entries.push(redundancy_entry(inst, tys, &entries));

    LawReport {
        instance: inst.name().to_string(),
        object_map: inst.object_map(),
        fragment,
        domains: tys.iter().map(|t| t.to_string()).collect(),
        fixtures: fx.len(),
        entries,
        elapsed: start.elapsed(),
    }
}

/// The invariant on the fixtures and on everything one operation away.
fn invariant_entry(inst: &dyn ArrowInstance, fx: &[ArrowValue], tys: &[Ty], with_first: bool) -> LawEntry {
    let mut cells = 0;
    let mut failure = None;
    let mut visit = |v: Result<ArrowValue, ArrowError>, cell: &dyn Fn() -> String| -> bool {
        cells += 1;
        let outcome = match v {
            Ok(v) => inst.check_invariant(&v),
            // Operations failing is the business of the laws.
            Err(_) => Ok(()),
        };
        match outcome {
            Ok(()) => true,
            Err(detail) => {
                failure = Some(Witness { cell: cell(), detail });
                false
            }
        }
    };
    'outer: for a in fx {
        if !visit(Ok(a.clone()), &|| format!("a={a}")) || !visit(inv(inst, a), &|| format!("inv a, a={a}")) {
            break;
        }
        if with_first {
            for z in tys {
                if !visit(first(inst, a, z), &|| format!("first a, a={a} Z={z}")) {
                    break 'outer;
                }
            }
        }
        for b in fx.iter().filter(|b| b.dom == a.cod) {
            if !visit(seq(inst, a, b), &|| format!("a;b, a={a} b={b}")) {
                break 'outer;
            }
        }
    }
    LawEntry {
        id: CheckId::Invariant,
        name: "instance invariant",
        verdict: failure.map_or(Verdict::Pass, Verdict::Fail),
        cells,
    }
}

fn redundancy_entry(inst: &dyn ArrowInstance, tys: &[Ty], entries: &[LawEntry]) -> LawEntry {
    let verdict_of = |n: u8| entries.iter().find(|e| e.id == CheckId::Law(n)).map(|e| &e.verdict);
    let passed = |n: u8| matches!(verdict_of(n), Some(Verdict::Pass));
    let not_failed = |n: u8| !matches!(verdict_of(n), Some(Verdict::Fail(_)));
    let name = "(13),(14) imply (11),(12), inv(arr id)";
    if !(passed(13) && passed(14)) {
        return LawEntry {
            id: CheckId::Redundancy,
            name,
            verdict: Verdict::Skipped("premise failed".into()),
            cells: 0,
        };
    }
    let mut run = LawRun::new(inst);
    for t in tys {
        let ok = run.cell(
            || format!("X={t}"),
            || {
                let id = arr(inst, &pinj::identity(t))?;
                Ok((inv(inst, &id)?, id))
            },
        );
        if !ok {
            break;
        }
    }
    let mut entry = run.finish(0);
    entry.id = CheckId::Redundancy;
    entry.name = name;
    if entry.verdict == Verdict::Pass {
        for n in [11u8, 12] {
            if !not_failed(n) {
                entry.verdict = Verdict::Fail(Witness {
                    cell: format!("law ({n})"),
                    detail: Discrepancy {
                        input: "implication".into(),
                        lhs: "(13) and (14) pass".into(),
                        rhs: format!("({n}) fails"),
                    },
                });
                break;
            }
        }
    }
    entry
}
