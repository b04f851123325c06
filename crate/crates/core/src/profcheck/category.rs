//! Finite categories given by tables, with an optional dagger.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("object `{0}` has no identity")]
    MissingIdentity(String),
    #[error("identity for `{object}` must be an endomorphism, `{mor}` is not")]
    IllTypedIdentity { object: String, mor: String },
    #[error("missing composite {f};{g}")]
    MissingComposite { f: String, g: String },
    #[error("composite {f};{g} = {h} has the wrong type")]
    IllTypedComposite { f: String, g: String, h: String },
    #[error("{f};{g} is listed but `{f}` and `{g}` are not composable")]
    NotComposable { f: String, g: String },
    #[error("dagger of `{0}` is missing")]
    MissingDagger(String),
    #[error("dagger {f} = {g} has the wrong type")]
    IllTypedDagger { f: String, g: String },
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mor {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category; `comp[f][g]` is `f;g` (first `f`, then `g`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDagCat {
    pub objects: Vec<String>,
    pub mors: Vec<Mor>,
    comp: Vec<Vec<Option<usize>>>,
    ids: Vec<usize>,
    dagger: Option<Vec<usize>>,
}

/// Outcome of one table scan: `Err` carries a witness.
pub type Verdict = Result<(), String>;

impl FinDagCat {
    /// Validates typing and totality of the tables.
    pub fn new(
        objects: Vec<String>,
        mors: Vec<Mor>,
        ids: Vec<usize>,
        composites: impl IntoIterator<Item = (usize, usize, usize)>,
        dagger: Option<Vec<usize>>,
    ) -> Result<Self, TableError> {
        let n = mors.len();
        let name = |f: usize| mors[f].name.clone();
        if ids.len() != objects.len() {
            return Err(TableError::Other("one identity per object is required".into()));
        }
        for (x, &i) in ids.iter().enumerate() {
            if mors[i].dom != x || mors[i].cod != x {
                return Err(TableError::IllTypedIdentity {
                    object: objects[x].clone(),
                    mor: name(i),
                });
            }
        }
        let mut comp = vec![vec![None; n]; n];
        for (f, g, h) in composites {
            if mors[f].cod != mors[g].dom {
                return Err(TableError::NotComposable { f: name(f), g: name(g) });
            }
            if mors[h].dom != mors[f].dom || mors[h].cod != mors[g].cod {
                return Err(TableError::IllTypedComposite {
                    f: name(f),
                    g: name(g),
                    h: name(h),
                });
            }
            comp[f][g] = Some(h);
        }
        // Composites with identities default to the unit laws.
        for f in 0..n {
            let (d, c) = (mors[f].dom, mors[f].cod);
            comp[ids[d]][f].get_or_insert(f);
            comp[f][ids[c]].get_or_insert(f);
        }
        for f in 0..n {
            for g in 0..n {
                if mors[f].cod == mors[g].dom && comp[f][g].is_none() {
                    return Err(TableError::MissingComposite { f: name(f), g: name(g) });
                }
            }
        }
        if let Some(d) = &dagger {
            if d.len() != n {
                return Err(TableError::Other("dagger table has the wrong length".into()));
            }
            for (f, &g) in d.iter().enumerate() {
                if mors[g].dom != mors[f].cod || mors[g].cod != mors[f].dom {
                    return Err(TableError::IllTypedDagger { f: name(f), g: name(g) });
                }
            }
        }
        Ok(FinDagCat {
            objects,
            mors,
            comp,
            ids,
            dagger,
        })
    }

    pub fn mor_count(&self) -> usize {
        self.mors.len()
    }

    pub fn name(&self, f: usize) -> &str {
        &self.mors[f].name
    }

    pub fn dom(&self, f: usize) -> usize {
        self.mors[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.mors[f].cod
    }

    pub fn id(&self, x: usize) -> usize {
        self.ids[x]
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// `f;g`. Panics when the pair is not composable.
    pub fn then(&self, f: usize, g: usize) -> usize {
        self.comp[f][g].unwrap_or_else(|| panic!("{};{} is not composable", self.name(f), self.name(g)))
    }

    pub fn has_dagger(&self) -> bool {
        self.dagger.is_some()
    }

    pub fn dagger_table(&self) -> Option<&[usize]> {
        self.dagger.as_deref()
    }

    /// `f†`. Panics without a dagger.
    pub fn dag(&self, f: usize) -> usize {
        self.dagger.as_ref().expect("dagger category")[f]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.mors.len())
            .filter(|&f| self.mors[f].dom == x && self.mors[f].cod == y)
            .collect()
    }

    /// Morphisms out of `x`.
    pub fn out_of(&self, x: usize) -> Vec<usize> {
        (0..self.mors.len()).filter(|&f| self.mors[f].dom == x).collect()
    }

    pub fn composable(&self, f: usize, g: usize) -> bool {
        self.mors[f].cod == self.mors[g].dom
    }

    /// Positive endomorphisms `f;f†` of `x`, without repeats.
    pub fn positives(&self, x: usize) -> Vec<usize> {
        let mut ps: Vec<usize> = self.out_of(x).into_iter().map(|f| self.then(f, self.dag(f))).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

impl fmt::Display for FinDagCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} objects, {} morphisms{}",
            self.objects.len(),
            self.mors.len(),
            if self.has_dagger() { ", dagger" } else { "" }
        )
    }
}

/// Associativity and the identity laws.
pub fn check_category(c: &FinDagCat) -> Verdict {
    let n = c.mor_count();
    for &i in c.ids() {
        for f in 0..n {
            if c.composable(i, f) && c.then(i, f) != f {
                return Err(format!("{};{} != {}", c.name(i), c.name(f), c.name(f)));
            }
            if c.composable(f, i) && c.then(f, i) != f {
                return Err(format!("{};{} != {}", c.name(f), c.name(i), c.name(f)));
            }
        }
    }
    for f in 0..n {
        for g in (0..n).filter(|&g| c.composable(f, g)) {
            let fg = c.then(f, g);
            for h in (0..n).filter(|&h| c.composable(g, h)) {
                let l = c.then(fg, h);
                let r = c.then(f, c.then(g, h));
                if l != r {
                    return Err(format!(
                        "({f};{g});{h} = {} but {f};({g};{h}) = {}",
                        c.name(l),
                        c.name(r),
                        f = c.name(f),
                        g = c.name(g),
                        h = c.name(h)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `f†† = f`, `(f;g)† = g†;f†`, `id† = id`.
pub fn check_dagger(c: &FinDagCat) -> Verdict {
    if !c.has_dagger() {
        return Err("no dagger table".into());
    }
    let n = c.mor_count();
    for f in 0..n {
        if c.dag(c.dag(f)) != f {
            return Err(format!("{}†† != {}", c.name(f), c.name(f)));
        }
    }
    for &i in c.ids() {
        if c.dag(i) != i {
            return Err(format!("{}† != {}", c.name(i), c.name(i)));
        }
    }
    for f in 0..n {
        for g in (0..n).filter(|&g| c.composable(f, g)) {
            let l = c.dag(c.then(f, g));
            let r = c.then(c.dag(g), c.dag(f));
            if l != r {
                return Err(format!(
                    "({f};{g})† = {} but {g}†;{f}† = {}",
                    c.name(l),
                    c.name(r),
                    f = c.name(f),
                    g = c.name(g)
                ));
            }
        }
    }
    Ok(())
}

/// Every morphism is a partial isometry.
pub fn check_partial_isometries(c: &FinDagCat) -> Verdict {
    for f in 0..c.mor_count() {
        let r = c.then(c.then(f, c.dag(f)), f);
        if r != f {
            return Err(format!("{}: {f};{f}†;{f} = {}", c.name(f), c.name(r), f = c.name(f)));
        }
    }
    Ok(())
}

/// Positive endomorphisms of each object commute pairwise.
pub fn check_positives_commute(c: &FinDagCat) -> Verdict {
    for x in 0..c.objects.len() {
        let ps = c.positives(x);
        for (k, &p) in ps.iter().enumerate() {
            for &q in &ps[k + 1..] {
                if c.then(p, q) != c.then(q, p) {
                    return Err(format!("{} and {} do not commute", c.name(p), c.name(q)));
                }
            }
        }
    }
    Ok(())
}

/// Dagger laws, partial isometries and commuting positives.
pub fn check_inverse(c: &FinDagCat) -> Verdict {
    check_dagger(c)?;
    check_partial_isometries(c)?;
    check_positives_commute(c)
}

/// One-object category from a multiplication table; `mul[a][b]` is `a;b`.
pub fn one_object(
    names: &[&str],
    unit: usize,
    mul: impl Fn(usize, usize) -> usize,
    dagger: Option<Vec<usize>>,
) -> Result<FinDagCat, TableError> {
    let mors = names
        .iter()
        .map(|n| Mor {
            name: n.to_string(),
            dom: 0,
            cod: 0,
        })
        .collect();
    let k = names.len();
    let comps: Vec<_> = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, mul(a, b)))
        .collect();
    FinDagCat::new(vec!["*".into()], mors, vec![unit], comps, dagger)
}
