//! Exhaustive checks of the structure on partial injections, over every map
//! between small types built from `Fin(n <= 3)`, `Unit` and `Zero`.

use revarrow::pinj::{
    coherence, compose, dagger, delta, homset, identity, oplus, positives_commute, quasi_injection, restriction,
    tensor_prod, zero_morphism, Coherence, PartialIso, Side,
};
use revarrow::values::{enumerate, Ty};

fn base() -> Vec<Ty> {
    vec![Ty::Zero, Ty::Unit, Ty::fin(2), Ty::fin(3)]
}

fn then(f: &PartialIso, g: &PartialIso) -> PartialIso {
    compose(f, g).expect("composable")
}

/// `sum_k C(m,k) C(n,k) k!`
fn count_injections(m: usize, n: usize) -> usize {
    fn choose(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    (0..=m.min(n))
        .map(|k| choose(m, k) * choose(n, k) * (1..=k).product::<usize>())
        .sum()
}

#[test]
fn homsets_are_complete_and_duplicate_free() {
    for a in base() {
        for b in base() {
            let hs = homset(&a, &b);
            assert_eq!(
                hs.len(),
                count_injections(a.cardinality(), b.cardinality()),
                "{a} -> {b}"
            );
            for (i, f) in hs.iter().enumerate() {
                assert!(hs[i + 1..].iter().all(|g| g != f));
            }
        }
    }
}

#[test]
fn category_axioms() {
    let tys = base();
    for a in &tys {
        for b in &tys {
            for f in homset(a, b) {
                assert_eq!(then(&identity(a), &f), f);
                assert_eq!(then(&f, &identity(b)), f);
            }
        }
    }
    let mut triples = 0usize;
    for a in &tys {
        for b in &tys {
            let fs = homset(a, b);
            for c in &tys {
                let gs = homset(b, c);
                let fgs: Vec<Vec<PartialIso>> = fs.iter().map(|f| gs.iter().map(|g| then(f, g)).collect()).collect();
                for d in &tys {
                    let hs = homset(c, d);
                    let ghs: Vec<Vec<PartialIso>> =
                        gs.iter().map(|g| hs.iter().map(|h| then(g, h)).collect()).collect();
                    for (i, f) in fs.iter().enumerate() {
                        for j in 0..gs.len() {
                            for (k, h) in hs.iter().enumerate() {
                                assert_eq!(then(&fgs[i][j], h), then(f, &ghs[j][k]));
                                triples += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(triples > 10_000);
}

#[test]
fn dagger_axioms() {
    let tys = base();
    for a in &tys {
        assert_eq!(dagger(&identity(a)), identity(a));
        for b in &tys {
            let fs = homset(a, b);
            for f in &fs {
                assert_eq!(dagger(&dagger(f)), *f);
                assert_eq!((dagger(f).dom(), dagger(f).cod()), (b, a));
            }
            for c in &tys {
                for f in &fs {
                    for g in homset(b, c) {
                        assert_eq!(dagger(&then(f, &g)), then(&dagger(&g), &dagger(f)));
                    }
                }
            }
        }
    }
}

#[test]
fn inverse_category_axioms() {
    let tys = base();
    for a in &tys {
        for b in &tys {
            for f in homset(a, b) {
                assert_eq!(then(&then(&f, &dagger(&f)), &f), f, "{}", f.label());
            }
            for c in &tys {
                let fs = homset(a, b);
                let gs = homset(a, c);
                for f in &fs {
                    for g in &gs {
                        assert!(positives_commute(f, g).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn restriction_axioms() {
    let tys = base();
    for a in &tys {
        for b in &tys {
            let fs = homset(a, b);
            for f in &fs {
                let rf = restriction(f);
                assert_eq!(then(&rf, f), *f);
                assert_eq!(rf, then(f, &dagger(f)));
                assert_eq!(restriction(&rf), rf);
            }
            for c in &tys {
                for f in &fs {
                    for g in homset(a, c) {
                        let (rf, rg) = (restriction(f), restriction(&g));
                        assert_eq!(then(&rf, &rg), then(&rg, &rf));
                        assert_eq!(restriction(&then(&rf, &g)), then(&rf, &rg));
                    }
                    for g in homset(b, c) {
                        let rg = restriction(&g);
                        assert_eq!(then(f, &rg), then(&restriction(&then(f, &g)), f));
                    }
                }
            }
        }
    }
}

fn product_types() -> Vec<Ty> {
    let mut out = base();
    out.push(Ty::sum(Ty::Unit, Ty::fin(2)));
    out.push(Ty::prod(Ty::fin(2), Ty::Unit));
    out
}

#[test]
fn inverse_product_axioms() {
    for x in product_types() {
        let d = delta(&x);
        let xx = Ty::prod(x.clone(), x.clone());
        let id = identity(&x);
        assert_eq!(
            then(&d, &coherence(&Coherence::Swap(x.clone(), x.clone()), false)),
            d,
            "cocommutative on {x}"
        );
        assert_eq!(
            then(
                &then(&d, &tensor_prod(&id, &d)),
                &coherence(&Coherence::Assoc(x.clone(), x.clone(), x.clone()), false)
            ),
            then(&d, &tensor_prod(&d, &id)),
            "coassociative on {x}"
        );
        assert_eq!(then(&d, &dagger(&d)), id, "special on {x}");
        let frobenius = then(
            &then(
                &tensor_prod(&d, &id),
                &coherence(&Coherence::Assoc(x.clone(), x.clone(), x.clone()), true),
            ),
            &tensor_prod(&id, &dagger(&d)),
        );
        assert_eq!(frobenius, then(&dagger(&d), &d), "Frobenius on {x}");
        assert_eq!(frobenius.dom(), &xx);
    }
}

#[test]
fn delta_is_natural() {
    let tys = base();
    for a in &tys {
        for b in &tys {
            for f in homset(a, b) {
                assert_eq!(then(&f, &delta(b)), then(&delta(a), &tensor_prod(&f, &f)));
            }
        }
    }
}

#[test]
fn tensor_and_sum_are_bifunctors() {
    let tys = [Ty::Zero, Ty::Unit, Ty::fin(2)];
    for a in &tys {
        for b in &tys {
            for c in &tys {
                for d in &tys {
                    let fs = homset(a, b);
                    let gs = homset(c, d);
                    let fs2 = homset(b, a);
                    let gs2 = homset(d, c);
                    for f in &fs {
                        for g in &gs {
                            for f2 in &fs2 {
                                for g2 in &gs2 {
                                    assert_eq!(
                                        then(&tensor_prod(f, g), &tensor_prod(f2, g2)),
                                        tensor_prod(&then(f, f2), &then(g, g2))
                                    );
                                    assert_eq!(then(&oplus(f, g), &oplus(f2, g2)), oplus(&then(f, f2), &then(g, g2)));
                                }
                            }
                        }
                    }
                }
            }
            assert_eq!(
                tensor_prod(&identity(a), &identity(b)),
                identity(&Ty::prod(a.clone(), b.clone()))
            );
            assert_eq!(
                oplus(&identity(a), &identity(b)),
                identity(&Ty::sum(a.clone(), b.clone()))
            );
        }
    }
}

#[test]
fn quasi_injections_are_disjoint_and_jointly_epic() {
    let small = [Ty::Zero, Ty::Unit, Ty::fin(2)];
    let targets = base();
    for x in &small {
        for y in &small {
            let inl = quasi_injection(Side::Left, x, y);
            let inr = quasi_injection(Side::Right, x, y);
            let s = Ty::sum(x.clone(), y.clone());
            assert_eq!(then(&inl, &dagger(&inl)), identity(x));
            assert_eq!(then(&inr, &dagger(&inr)), identity(y));
            assert_eq!(then(&inl, &dagger(&inr)), zero_morphism(x, y));
            let (el, er) = (then(&dagger(&inl), &inl), then(&dagger(&inr), &inr));
            assert_eq!(then(&el, &er), zero_morphism(&s, &s));
            for v in enumerate(&s) {
                assert!(
                    el.is_defined_at(&v) != er.is_defined_at(&v),
                    "{v} in exactly one summand"
                );
            }
            for z in &targets {
                let maps = homset(&s, z);
                let restricted: Vec<_> = maps.iter().map(|f| (then(&inl, f), then(&inr, f))).collect();
                for i in 0..maps.len() {
                    for j in i + 1..maps.len() {
                        assert_ne!(
                            restricted[i],
                            restricted[j],
                            "{} and {} agree on both injections",
                            maps[i].label(),
                            maps[j].label()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn zero_is_a_zero_object() {
    for x in base() {
        assert_eq!(homset(&Ty::Zero, &x).len(), 1);
        assert_eq!(homset(&x, &Ty::Zero).len(), 1);
        for y in base() {
            let z = zero_morphism(&x, &y);
            assert_eq!(z, then(&homset(&x, &Ty::Zero)[0], &homset(&Ty::Zero, &y)[0]));
            for f in homset(&y, &x) {
                assert_eq!(then(&f, &z), zero_morphism(&y, &y));
            }
        }
    }
}
