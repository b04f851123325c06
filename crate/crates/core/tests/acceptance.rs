//! Acceptance gate: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use revarrow::arrow::laws::{CheckId, Fragment, Verdict};
use revarrow::arrow::pipeline::{do_undo, pipelines};
use revarrow::effects::serializer::{default_codec, token_list};
use revarrow::effects::{suite, Bounds, INSTANCES, MUTANTS, TOKEN_LEN};
use revarrow::pinj::{
    coherence, compose, dagger, delta, homset, identity, positives_commute, quasi_injection, restriction, tensor_prod,
    Coherence, PartialIso, Side,
};
use revarrow::profcheck::category::check_inverse;
use revarrow::profcheck::fixture::bundled;
use revarrow::profcheck::profunctor::{hom_profunctor, prof_tensor_shuffled};
use revarrow::profcheck::{bundled_fixtures, run_fixture, verify_characterization};
use revarrow::values::{enumerate, Ty};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn law_suites() -> Outcome {
    let start = Instant::now();
    for name in INSTANCES {
        let s = suite(name, Bounds::default()).map_err(|e| e.to_string())?;
        let r = s.run();
        ensure(r.all_pass(), || format!("{name} fails {:?}", r.failed()))?;
        let skipped: BTreeSet<CheckId> = r
            .entries
            .iter()
            .filter(|e| matches!(e.verdict, Verdict::Skipped(_)))
            .map(|e| e.id)
            .collect();
        let want: BTreeSet<CheckId> = if name == "error" {
            [4, 5, 6, 7, 8, 12].into_iter().map(CheckId::Law).collect()
        } else {
            BTreeSet::new()
        };
        ensure(skipped == want, || format!("{name} skipped {skipped:?}"))?;
        let frag = if name == "error" {
            Fragment::Weak
        } else {
            Fragment::Full
        };
        ensure(s.fragment == frag, || format!("{name} uses fragment {}", s.fragment))?;
    }
    let t = start.elapsed();
    ensure(t.as_secs() < 60, || format!("took {t:?}"))?;
    Ok(format!("{} instances in {:.2}s", INSTANCES.len(), t.as_secs_f64()))
}

fn then(f: &PartialIso, g: &PartialIso) -> PartialIso {
    compose(f, g).expect("composable")
}

fn base_axioms() -> Outcome {
    let tys = [Ty::Zero, Ty::Unit, Ty::fin(2), Ty::fin(3)];
    let mut checked = 0usize;
    for a in &tys {
        for b in &tys {
            let fs = homset(a, b);
            for f in &fs {
                ensure(then(&identity(a), f) == *f && then(f, &identity(b)) == *f, || {
                    format!("unit law at {}", f.label())
                })?;
                ensure(dagger(&dagger(f)) == *f, || {
                    format!("dagger involution at {}", f.label())
                })?;
                ensure(then(&then(f, &dagger(f)), f) == *f, || {
                    format!("f;f†;f at {}", f.label())
                })?;
                ensure(then(&restriction(f), f) == *f, || {
                    format!("restriction at {}", f.label())
                })?;
                ensure(then(f, &delta(b)) == then(&delta(a), &tensor_prod(f, f)), || {
                    format!("copy naturality at {}", f.label())
                })?;
                checked += 1;
            }
            for c in &tys {
                for f in &fs {
                    for g in homset(b, c) {
                        ensure(dagger(&then(f, &g)) == then(&dagger(&g), &dagger(f)), || {
                            "dagger reverses".into()
                        })?;
                        ensure(then(f, &restriction(&g)) == then(&restriction(&then(f, &g)), f), || {
                            "restriction R4".into()
                        })?;
                        for d in &tys {
                            for h in homset(c, d) {
                                ensure(then(&then(f, &g), &h) == then(f, &then(&g, &h)), || {
                                    "associativity".into()
                                })?;
                                checked += 1;
                            }
                        }
                    }
                    for g in homset(a, c) {
                        ensure(positives_commute(f, &g).unwrap(), || "positives commute".into())?;
                        let (rf, rg) = (restriction(f), restriction(&g));
                        ensure(then(&rf, &rg) == then(&rg, &rf), || "restriction R2".into())?;
                        ensure(restriction(&then(&rf, &g)) == then(&rf, &rg), || {
                            "restriction R3".into()
                        })?;
                    }
                }
            }
        }
        let d = delta(a);
        let id = identity(a);
        let x = a.clone();
        ensure(
            then(&d, &coherence(&Coherence::Swap(x.clone(), x.clone()), false)) == d,
            || format!("cocommutativity on {a}"),
        )?;
        let alpha = coherence(&Coherence::Assoc(x.clone(), x.clone(), x.clone()), false);
        ensure(
            then(&then(&d, &tensor_prod(&id, &d)), &alpha) == then(&d, &tensor_prod(&d, &id)),
            || format!("coassociativity on {a}"),
        )?;
        ensure(then(&d, &dagger(&d)) == id, || format!("speciality on {a}"))?;
        let frob = then(
            &then(&tensor_prod(&d, &id), &dagger(&alpha)),
            &tensor_prod(&id, &dagger(&d)),
        );
        ensure(frob == then(&dagger(&d), &d), || format!("Frobenius on {a}"))?;
    }
    for x in &tys[..3] {
        for y in &tys[..3] {
            let s = Ty::sum(x.clone(), y.clone());
            let inl = quasi_injection(Side::Left, x, y);
            let inr = quasi_injection(Side::Right, x, y);
            for z in &tys {
                let maps = homset(&s, z);
                let mut seen = BTreeSet::new();
                for f in &maps {
                    let key = (
                        format!("{:?}", then(&inl, f).graph().collect::<Vec<_>>()),
                        format!("{:?}", then(&inr, f).graph().collect::<Vec<_>>()),
                    );
                    ensure(seen.insert(key), || format!("injections not jointly epic into {z}"))?;
                }
            }
        }
    }
    Ok(format!("{checked} cells, zero failures"))
}

fn mutants() -> Outcome {
    let mut parts = Vec::new();
    for name in MUTANTS {
        let s = suite(name, Bounds::default()).map_err(|e| e.to_string())?;
        let r = s.run();
        ensure(!s.expected_failures.is_empty(), || format!("{name} designs no failure"))?;
        ensure(s.meets_expectation(&r), || {
            format!("{name} failed {:?}, designed {:?}", r.failed(), s.expected_failures)
        })?;
        for id in &s.expected_failures {
            match &r.entry(*id).map(|e| &e.verdict) {
                Some(Verdict::Fail(w)) if !w.detail.input.is_empty() => {}
                _ => return Err(format!("{name} law {id} has no concrete witness")),
            }
        }
        let ids: Vec<String> = s.expected_failures.iter().map(|c| c.to_string()).collect();
        parts.push(format!("{name} {{{}}}", ids.join(",")));
    }
    Ok(parts.join(", "))
}

fn serializer() -> Outcome {
    let codec = default_codec(Bounds::default().alphabet, TOKEN_LEN);
    let x = Ty::fin(2);
    let types = [
        Ty::Unit,
        x.clone(),
        Ty::prod(x.clone(), x.clone()),
        Ty::prod(x.clone(), Ty::prod(x.clone(), x.clone())),
        Ty::sum(x.clone(), Ty::Unit),
        Ty::seq(x.clone(), 2),
    ];
    let mut values = 0;
    for t in &types {
        let ser = codec.serialize(t).map_err(|e| e.to_string())?;
        ensure(then(&ser, &dagger(&ser)) == identity(t), || {
            format!("round trip on {t}")
        })?;
        values += enumerate(t).len();
        let bad = codec
            .non_canonical(t)
            .ok_or_else(|| format!("no undecodable string for {t}"))?;
        ensure(
            codec.decode(t, &token_list(&bad)).is_none() && ser.backward(&bad).is_none(),
            || format!("{bad} decodes as {t}"),
        )?;
    }
    Ok(format!("{} types, {values} values", types.len()))
}

fn doundo() -> Outcome {
    let x = Ty::fin(2);
    let base = vec![x.clone(), Ty::prod(x.clone(), x), Ty::Unit];
    for name in INSTANCES {
        let s = suite(name, Bounds::default()).map_err(|e| e.to_string())?;
        let inst = s.instance.as_ref();
        let ps = pipelines(inst, &s.primitives, base.clone(), 0x5eed, 100).map_err(|e| e.to_string())?;
        for (k, p) in ps.iter().enumerate() {
            match do_undo(inst, p) {
                Ok(None) => {}
                Ok(Some(d)) => return Err(format!("{name} pipeline {k} {}: {d}", p.label)),
                Err(e) => return Err(format!("{name} pipeline {k}: {e}")),
            }
        }
    }
    Ok(format!("{} instances x 100 pipelines", INSTANCES.len()))
}

fn characterization() -> Outcome {
    let mut n = 0;
    for fx in bundled_fixtures() {
        let report = run_fixture(&fx);
        ensure(report.expectation_met(), || {
            format!("{} does not meet its expectations", fx.name)
        })?;
        let Some(i) = &fx.involution else { continue };
        if check_inverse(&fx.category).is_err() {
            continue;
        }
        let th = verify_characterization(&fx.category, &fx.monoid, i).map_err(|e| e.to_string())?;
        ensure(th.agree().is_ok(), || format!("{}: {:?}", fx.name, th.agree()))?;
        n += 1;
    }
    let fx = bundled("defect").ok_or("no defect fixture")?;
    let th = verify_characterization(&fx.category, &fx.monoid, fx.involution.as_ref().ok_or("no involution")?)
        .map_err(|e| e.to_string())?;
    let fails = |v: &[Result<(), String>; 3]| v.iter().map(Result::is_err).collect::<Vec<_>>();
    ensure(fails(&th.diagrams) == [false, false, true], || {
        format!("defect diagrams {:?}", th.diagrams)
    })?;
    ensure(th.diagrams == th.d_diagrams, || "defect witnesses differ".into())?;
    Ok(format!(
        "{n} fixtures agree; defect fails only (5): {}",
        th.diagrams[2].clone().unwrap_err()
    ))
}

fn coend() -> Outcome {
    let mut n = 0;
    for fx in bundled_fixtures() {
        let c = &fx.category;
        let m = &fx.monoid.prof;
        let hom = hom_profunctor(c);
        for (l, r) in [(m, m), (&hom, m), (m, &hom)] {
            let a = prof_tensor_shuffled(c, l, r, 1).map_err(|e| e.to_string())?;
            let b = prof_tensor_shuffled(c, l, r, 2).map_err(|e| e.to_string())?;
            ensure(a.class_count() == b.class_count() && a.members == b.members, || {
                format!("{} class counts differ", fx.name)
            })?;
        }
        n += 1;
    }
    Ok(format!("{n} fixtures"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("law suites", law_suites),
        ("base-category axioms", base_axioms),
        ("mutant detection", mutants),
        ("serializer round trip", serializer),
        ("do/undo", doundo),
        ("inverse arrows characterization", characterization),
        ("coend well-definedness", coend),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
