//! Finite-category engine: profunctor tensors, involutions, involutive
//! monoids, and the characterization of inverse arrows by three diagrams.

pub mod category;
pub mod fixture;
pub mod monoid;
pub mod profunctor;

use std::fmt::Write as _;

use category::{check_category, check_dagger, check_inverse, FinDagCat, TableError, Verdict};
use fixture::Fixture;
use monoid::{
    build_dm, build_l, build_lplus, category_to_monoid, check_dagger_functor, check_diagram3, check_diagram4,
    check_diagram5, check_involutive_monoid, check_monoid, d_side, dagger_involution, diagram3_natural,
    diagram4_natural, diagram5_natural, hom_monoid, monoid_iso, monoid_to_category, InvolutiveStructure, MonoidInProf,
};
use profunctor::{
    check_chi_coherence, check_profunctor, hom_profunctor, involution_prof, left_unitor, prof_tensor,
    prof_tensor_shuffled, right_unitor,
};

/// Every check name a report can contain, in report order.
pub const KEYS: &[&str] = &[
    "category",
    "dagger",
    "inverse",
    "hom.functorial",
    "monoid.functorial",
    "monoid.unit_natural",
    "monoid.balanced",
    "monoid.mult_natural",
    "monoid.assoc",
    "monoid.unit_laws",
    "monoid.arr_functorial",
    "coend.unitors",
    "coend.merge_order",
    "involution.strict",
    "involution.chi",
    "involutive.typed",
    "involutive.involutive",
    "involutive.homomorphism",
    "involutive.natural",
    "lplus.closed",
    "dm.closed",
    "diagram3",
    "diagram3.natural",
    "diagram4",
    "diagram4.natural",
    "diagram5",
    "diagram5.natural",
    "d.category",
    "d.dagger",
    "d.diagram3",
    "d.diagram4",
    "d.diagram5",
    "d.inverse",
    "d.j_dagger",
    "roundtrip",
    "theorem.diagrams",
    "theorem.inverse",
    "theorem.agree",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowVerdict {
    Pass,
    Fail(String),
    Skip(String),
}

impl From<Verdict> for RowVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Ok(()) => RowVerdict::Pass,
            Err(w) => RowVerdict::Fail(w),
        }
    }
}

impl RowVerdict {
    fn word(&self) -> &'static str {
        match self {
            RowVerdict::Pass => "pass",
            RowVerdict::Fail(_) => "fail",
            RowVerdict::Skip(_) => "skip",
        }
    }

    fn note(&self) -> &str {
        match self {
            RowVerdict::Pass => "",
            RowVerdict::Fail(w) | RowVerdict::Skip(w) => w,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub key: &'static str,
    pub verdict: RowVerdict,
    pub expected: Option<bool>,
}

impl Row {
    /// Rows without a declared outcome are expected to pass; skipped rows
    /// only count when an outcome was declared.
    pub fn met(&self) -> bool {
        match (&self.verdict, self.expected) {
            (RowVerdict::Pass, e) => e != Some(false),
            (RowVerdict::Fail(_), e) => e == Some(false),
            (RowVerdict::Skip(_), e) => e.is_none(),
        }
    }
}

/// Both sides of the characterization for one involutive monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    /// Diagrams (3), (4), (5) on the monoid.
    pub diagrams: [Verdict; 3],
    /// The same three conditions read off the reconstructed category.
    pub d_diagrams: [Verdict; 3],
    pub d_inverse: Verdict,
    pub j_dagger: Verdict,
}

impl CharacterizationReport {
    pub fn left(&self) -> bool {
        self.diagrams.iter().all(Result::is_ok)
    }

    pub fn right(&self) -> bool {
        self.d_inverse.is_ok() && self.j_dagger.is_ok()
    }

    /// The biconditional, plus matching verdicts and witnesses per diagram.
    pub fn agree(&self) -> Verdict {
        if self.left() != self.right() {
            return Err(format!(
                "diagrams {} but inverse check {}",
                if self.left() { "pass" } else { "fail" },
                if self.right() { "passes" } else { "fails" }
            ));
        }
        for (k, (l, r)) in self.diagrams.iter().zip(&self.d_diagrams).enumerate() {
            if l != r {
                return Err(format!("diagram ({}) differs: {:?} against {:?}", k + 3, l, r));
            }
        }
        Ok(())
    }
}

/// Checks the diagrams on `M` and the inverse-category axioms on the
/// category built from `M`; `C` must be an inverse category.
pub fn verify_characterization(
    c: &FinDagCat,
    m: &MonoidInProf,
    i: &InvolutiveStructure,
) -> Result<CharacterizationReport, TableError> {
    let (d, j) = monoid_to_category(c, m, Some(i))?;
    Ok(CharacterizationReport {
        diagrams: [check_diagram3(c, m, i), check_diagram4(c, m, i), check_diagram5(m, i)],
        d_diagrams: d_side(c, &d, &j),
        d_inverse: check_inverse(&d),
        j_dagger: check_dagger_functor(c, m, i),
    })
}

#[derive(Debug, Clone)]
pub struct ProfReport {
    pub fixture: String,
    pub rows: Vec<Row>,
}

impl ProfReport {
    pub fn get(&self, key: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.key == key)
    }

    pub fn expectation_met(&self) -> bool {
        self.rows.iter().all(Row::met)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("fixture {}\n", self.fixture);
        for r in &self.rows {
            let mark = if r.met() { "" } else { "  (unexpected)" };
            let _ = write!(out, "{:<24} {}{}", r.key, r.verdict.word(), mark);
            if !r.verdict.note().is_empty() {
                let _ = write!(out, "  {}", r.verdict.note());
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "expectations {}",
            if self.expectation_met() { "met" } else { "NOT met" }
        );
        out
    }

    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "check fixture={} key={} verdict={} expected={} met={} note={:?}",
                self.fixture,
                r.key,
                r.verdict.word(),
                match r.expected {
                    Some(false) => "fail",
                    _ => "pass",
                },
                r.met(),
                r.verdict.note()
            );
        }
        let _ = writeln!(out, "summary fixture={} met={}", self.fixture, self.expectation_met());
        out
    }
}

fn skip(reason: &str) -> RowVerdict {
    RowVerdict::Skip(reason.into())
}

fn and_all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
    vs.into_iter().collect::<Result<Vec<()>, String>>().map(|_| ())
}

/// Class counts of `F (x) G` agree across two shuffled merge orders and
/// the unshuffled one.
fn merge_order(c: &FinDagCat, f: &profunctor::FinProfunctor, g: &profunctor::FinProfunctor) -> Verdict {
    let k = c.objects.len();
    let base = prof_tensor(c, f, g).map_err(|e| e.to_string())?.prof.sizes(k);
    for seed in [1, 2] {
        let t = prof_tensor_shuffled(c, f, g, seed).map_err(|e| e.to_string())?;
        if t.prof.sizes(k) != base {
            return Err(format!("class counts change under merge order {seed}"));
        }
    }
    Ok(())
}

/// Runs every check on a fixture.
pub fn run_fixture(fx: &Fixture) -> ProfReport {
    let c = &fx.category;
    let m = &fx.monoid;
    let mut rows: Vec<(&'static str, RowVerdict)> = Vec::new();
    let cat_ok = check_category(c);
    let dag_ok = check_dagger(c);
    let inv_ok = check_inverse(c);
    rows.push(("category", cat_ok.clone().into()));
    rows.push(("dagger", dag_ok.clone().into()));
    rows.push(("inverse", inv_ok.clone().into()));
    let hom = hom_profunctor(c);
    rows.push(("hom.functorial", check_profunctor(c, &hom).into()));
    let monoid_rows = check_monoid(c, m);
    let monoid_ok = monoid_rows.iter().all(|(_, v)| v.is_ok());
    rows.extend(monoid_rows.into_iter().map(|(k, v)| (k, v.into())));

    let coend = (|| {
        let p = &m.prof;
        left_unitor(p, &prof_tensor(c, &hom, p).map_err(|e| e.to_string())?)?;
        right_unitor(p, &prof_tensor(c, p, &hom).map_err(|e| e.to_string())?)
    })();
    rows.push(("coend.unitors", coend.into()));
    rows.push((
        "coend.merge_order",
        and_all([
            merge_order(c, &m.prof, &m.prof),
            merge_order(c, &hom, &m.prof),
            merge_order(c, &m.prof, &hom),
        ])
        .into(),
    ));

    let dagger = dag_ok.is_ok();
    if dagger {
        let strict = (|| {
            let mb = involution_prof(c, &m.prof).map_err(|e| e.to_string())?;
            check_profunctor(c, &mb)?;
            if involution_prof(c, &mb).map_err(|e| e.to_string())? != m.prof {
                return Err("conj(conj M) differs from M".into());
            }
            Ok(())
        })();
        rows.push(("involution.strict", strict.into()));
        rows.push((
            "involution.chi",
            check_chi_coherence(c, &m.prof, &m.prof, &m.prof).into(),
        ));
    } else {
        rows.push(("involution.strict", skip("base has no dagger")));
        rows.push(("involution.chi", skip("base has no dagger")));
    }

    let involutive_ok = match &fx.involution {
        Some(i) if dagger => {
            let r = check_involutive_monoid(c, m, i);
            let ok = r.iter().all(|(_, v)| v.is_ok());
            rows.extend(r.into_iter().map(|(k, v)| (k, v.into())));
            ok
        }
        _ => {
            let why = if dagger {
                "no involution given"
            } else {
                "base has no dagger"
            };
            for k in [
                "involutive.typed",
                "involutive.involutive",
                "involutive.homomorphism",
                "involutive.natural",
            ] {
                rows.push((k, skip(why)));
            }
            false
        }
    };

    let ready = monoid_ok && involutive_ok && inv_ok.is_ok() && cat_ok.is_ok();
    let reason = "needs an inverse base and an involutive monoid";
    match (&fx.involution, ready) {
        (Some(i), true) => {
            let hom_m = hom_monoid(c);
            let hom_i = dagger_involution(c).expect("dagger");
            let closed = (|| {
                build_l(c, m)?;
                build_lplus(c, m, i)?;
                build_lplus(c, &hom_m, &hom_i).map(|_| ())
            })();
            rows.push(("lplus.closed", closed.into()));
            rows.push(("dm.closed", build_dm(c, m, i).map(|_| ()).into()));
            let th = verify_characterization(c, m, i);
            match th {
                Ok(th) => {
                    let naturals = [
                        diagram3_natural(c, m),
                        diagram4_natural(c, m, i),
                        diagram5_natural(c, m, i),
                    ];
                    for (k, (main, nat)) in th.diagrams.iter().zip(naturals).enumerate() {
                        rows.push((["diagram3", "diagram4", "diagram5"][k], main.clone().into()));
                        rows.push((
                            ["diagram3.natural", "diagram4.natural", "diagram5.natural"][k],
                            nat.into(),
                        ));
                    }
                    let (d, j) = monoid_to_category(c, m, Some(i)).expect("built above");
                    rows.push(("d.category", check_category(&d).into()));
                    rows.push(("d.dagger", check_dagger(&d).into()));
                    for (k, v) in th.d_diagrams.iter().enumerate() {
                        rows.push((["d.diagram3", "d.diagram4", "d.diagram5"][k], v.clone().into()));
                    }
                    rows.push(("d.inverse", th.d_inverse.clone().into()));
                    rows.push(("d.j_dagger", th.j_dagger.clone().into()));
                    let round = match category_to_monoid(c, &d, &j) {
                        Ok((m2, i2)) => match monoid_iso(c, m, Some(i), &m2, i2.as_ref()) {
                            Some(_) => match monoid_to_category(c, &m2, i2.as_ref()) {
                                Ok((d2, _)) if d2 == d => Ok(()),
                                _ => Err("category round trip differs".into()),
                            },
                            None => Err("no isomorphism back to the monoid".into()),
                        },
                        Err(e) => Err(e.to_string()),
                    };
                    rows.push(("roundtrip", round.into()));
                    let side = |ok: bool, what: &str| if ok { Ok(()) } else { Err(format!("{what} fail")) };
                    rows.push(("theorem.diagrams", side(th.left(), "diagrams").into()));
                    rows.push(("theorem.inverse", side(th.right(), "inverse-category side").into()));
                    rows.push(("theorem.agree", th.agree().into()));
                }
                Err(e) => {
                    for k in KEYS.iter().skip_while(|k| **k != "diagram3") {
                        rows.push((k, RowVerdict::Fail(e.to_string())));
                    }
                }
            }
        }
        _ => {
            for k in KEYS.iter().skip_while(|k| **k != "lplus.closed") {
                rows.push((k, skip(reason)));
            }
        }
    }

    let rows = rows
        .into_iter()
        .map(|(key, verdict)| Row {
            key,
            verdict,
            expected: fx.expect.get(key).copied(),
        })
        .collect();
    ProfReport {
        fixture: fx.name.clone(),
        rows,
    }
}

/// All bundled fixtures, parsed.
pub fn bundled_fixtures() -> Vec<Fixture> {
    fixture::BUNDLED
        .iter()
        .map(|(_, text)| fixture::parse_fixture(text).expect("bundled fixtures parse"))
        .collect()
}
