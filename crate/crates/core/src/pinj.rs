//! Typed partial injections: the pure base category.
//!
//! A [`PartialIso`] is stored as its finite graph in both directions. The
//! constructors evaluate the supplied maps over the (finite) domain, check
//! typing and injectivity, and refuse anything that is not a partial
//! injection. Equality is graph equality; labels never take part in it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::values::{check_type, enumerate, Ty, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PinjError {
    #[error("value {value} does not inhabit {ty}")]
    NotAnInhabitant { value: Value, ty: Ty },
    #[error("cannot compose {left_label}: _ -> {left} with {right_label}: {right} -> _")]
    ObjectMismatch {
        left_label: String,
        left: Ty,
        right_label: String,
        right: Ty,
    },
    #[error("`{label}` maps {input} to {output}, which does not inhabit {ty}")]
    IllTypedImage {
        label: String,
        input: Value,
        output: Value,
        ty: Ty,
    },
    #[error("`{label}` is not injective: {first} and {second} both map to {image}")]
    NotInjective {
        label: String,
        first: Value,
        second: Value,
        image: Value,
    },
    #[error("`{label}` has forward and backward maps that disagree at {at}")]
    NotMutualInverse { label: String, at: Value },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

struct Graph {
    dom: Ty,
    cod: Ty,
    label: String,
    fwd: BTreeMap<Value, Value>,
    bwd: BTreeMap<Value, Value>,
}

/// A typed partial injection `dom -> cod`.
#[derive(Clone)]
pub struct PartialIso(Arc<Graph>);

impl PartialIso {
    /// Tabulates `f` over `enumerate(dom)`.
    pub fn from_fn(
        dom: Ty,
        cod: Ty,
        label: impl Into<String>,
        f: impl Fn(&Value) -> Option<Value>,
    ) -> Result<Self, PinjError> {
        let label = label.into();
        let pairs = enumerate(&dom).into_iter().filter_map(|v| f(&v).map(|w| (v, w)));
        Self::from_pairs(dom, cod, label, pairs)
    }

    /// Tabulates a forward/backward pair and checks that they are mutually
    /// inverse on every point where either is defined. Enumerates both `dom`
    /// and `cod`.
    pub fn from_fns(
        dom: Ty,
        cod: Ty,
        label: impl Into<String>,
        fwd: impl Fn(&Value) -> Option<Value>,
        bwd: impl Fn(&Value) -> Option<Value>,
    ) -> Result<Self, PinjError> {
        let label = label.into();
        let forward = Self::from_fn(dom.clone(), cod.clone(), label.clone(), fwd)?;
        let backward = Self::from_fn(cod, dom, label.clone(), bwd)?;
        for (v, w) in forward.graph() {
            if backward.forward(w) != Some(v) {
                return Err(PinjError::NotMutualInverse { label, at: v.clone() });
            }
        }
        for (w, v) in backward.graph() {
            if forward.forward(v) != Some(w) {
                return Err(PinjError::NotMutualInverse { label, at: w.clone() });
            }
        }
        Ok(forward)
    }

    /// Builds a partial injection from its graph.
    pub fn from_pairs(
        dom: Ty,
        cod: Ty,
        label: impl Into<String>,
        pairs: impl IntoIterator<Item = (Value, Value)>,
    ) -> Result<Self, PinjError> {
        let label = label.into();
        let mut fwd = BTreeMap::new();
        let mut bwd: BTreeMap<Value, Value> = BTreeMap::new();
        for (v, w) in pairs {
            if !check_type(&v, &dom) {
                return Err(PinjError::NotAnInhabitant { value: v, ty: dom });
            }
            if !check_type(&w, &cod) {
                return Err(PinjError::IllTypedImage {
                    label,
                    input: v,
                    output: w,
                    ty: cod,
                });
            }
            if let Some(prev) = bwd.get(&w) {
                if *prev != v {
                    return Err(PinjError::NotInjective {
                        label,
                        first: prev.clone(),
                        second: v,
                        image: w,
                    });
                }
            }
            if let Some(prev) = fwd.get(&v) {
                if *prev != w {
                    return Err(PinjError::NotMutualInverse { label, at: v });
                }
            }
            bwd.insert(w.clone(), v.clone());
            fwd.insert(v, w);
        }
        Ok(Self::from_tables(dom, cod, label, fwd, bwd))
    }

    fn from_tables(dom: Ty, cod: Ty, label: String, fwd: BTreeMap<Value, Value>, bwd: BTreeMap<Value, Value>) -> Self {
        PartialIso(Arc::new(Graph {
            dom,
            cod,
            label,
            fwd,
            bwd,
        }))
    }

    pub fn dom(&self) -> &Ty {
        &self.0.dom
    }

    pub fn cod(&self) -> &Ty {
        &self.0.cod
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn relabel(&self, label: impl Into<String>) -> PartialIso {
        Self::from_tables(
            self.0.dom.clone(),
            self.0.cod.clone(),
            label.into(),
            self.0.fwd.clone(),
            self.0.bwd.clone(),
        )
    }

    /// Unchecked forward lookup: `None` both for undefined points and for
    /// values outside the domain.
    pub fn forward(&self, v: &Value) -> Option<&Value> {
        self.0.fwd.get(v)
    }

    pub fn backward(&self, w: &Value) -> Option<&Value> {
        self.0.bwd.get(w)
    }

    /// The graph `(input, output)` in ascending input order.
    pub fn graph(&self) -> impl Iterator<Item = (&Value, &Value)> {
        self.0.fwd.iter()
    }

    /// Size of the domain of definition.
    pub fn len(&self) -> usize {
        self.0.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.fwd.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.len() == self.0.dom.cardinality()
    }

    pub fn is_defined_at(&self, v: &Value) -> bool {
        self.0.fwd.contains_key(v)
    }

    /// First input (in enumeration order of the domain) on which `self` and
    /// `other` disagree, with both outputs. `None` means equal graphs.
    pub fn distinguish(&self, other: &PartialIso) -> Option<(Value, Option<Value>, Option<Value>)> {
        let mut keys: Vec<&Value> = self.0.fwd.keys().chain(other.0.fwd.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|k| {
            let a = self.forward(k);
            let b = other.forward(k);
            (a != b).then(|| (k.clone(), a.cloned(), b.cloned()))
        })
    }
}

impl PartialEq for PartialIso {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dom == other.0.dom && self.0.cod == other.0.cod && self.0.fwd == other.0.fwd)
    }
}

impl Eq for PartialIso {}

impl fmt::Debug for PartialIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {} {{", self.label(), self.dom(), self.cod())?;
        for (i, (v, w)) in self.graph().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {v} |-> {w}")?;
        }
        write!(f, " }}")
    }
}

impl fmt::Display for PartialIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Applies `f` in the chosen direction. Undefinedness is `Ok(None)`; an
/// argument outside the expected side is an error.
pub fn apply(f: &PartialIso, v: &Value, direction: Direction) -> Result<Option<Value>, PinjError> {
    let (ty, table) = match direction {
        Direction::Forward => (f.dom(), &f.0.fwd),
        Direction::Backward => (f.cod(), &f.0.bwd),
    };
    if !check_type(v, ty) {
        return Err(PinjError::NotAnInhabitant {
            value: v.clone(),
            ty: ty.clone(),
        });
    }
    Ok(table.get(v).cloned())
}

pub fn identity(ty: &Ty) -> PartialIso {
    let table: BTreeMap<Value, Value> = enumerate(ty).into_iter().map(|v| (v.clone(), v)).collect();
    PartialIso::from_tables(ty.clone(), ty.clone(), format!("id{{{ty}}}"), table.clone(), table)
}

/// Diagrammatic composition: `f` then `g`.
pub fn compose(f: &PartialIso, g: &PartialIso) -> Result<PartialIso, PinjError> {
    if f.cod() != g.dom() {
        return Err(PinjError::ObjectMismatch {
            left_label: f.label().to_string(),
            left: f.cod().clone(),
            right_label: g.label().to_string(),
            right: g.dom().clone(),
        });
    }
    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    for (v, w) in f.graph() {
        if let Some(u) = g.forward(w) {
            fwd.insert(v.clone(), u.clone());
            bwd.insert(u.clone(), v.clone());
        }
    }
    Ok(PartialIso::from_tables(
        f.dom().clone(),
        g.cod().clone(),
        format!("{};{}", f.label(), g.label()),
        fwd,
        bwd,
    ))
}

pub fn dagger(f: &PartialIso) -> PartialIso {
    let l = f.label();
    let label = match l.strip_suffix('†') {
        Some(inner) => inner.trim_start_matches('(').trim_end_matches(')').to_string(),
        None if l.contains(';') => format!("({l})†"),
        None => format!("{l}†"),
    };
    PartialIso::from_tables(
        f.cod().clone(),
        f.dom().clone(),
        label,
        f.0.bwd.clone(),
        f.0.fwd.clone(),
    )
}

/// The partial identity on the domain of definition of `f`.
pub fn restriction(f: &PartialIso) -> PartialIso {
    let table: BTreeMap<Value, Value> = f.0.fwd.keys().map(|v| (v.clone(), v.clone())).collect();
    PartialIso::from_tables(
        f.dom().clone(),
        f.dom().clone(),
        format!("restr({})", f.label()),
        table.clone(),
        table,
    )
}

pub fn tensor_prod(f: &PartialIso, g: &PartialIso) -> PartialIso {
    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    for (a, a2) in f.graph() {
        for (b, b2) in g.graph() {
            let v = Value::pair(a.clone(), b.clone());
            let w = Value::pair(a2.clone(), b2.clone());
            bwd.insert(w.clone(), v.clone());
            fwd.insert(v, w);
        }
    }
    PartialIso::from_tables(
        Ty::prod(f.dom().clone(), g.dom().clone()),
        Ty::prod(f.cod().clone(), g.cod().clone()),
        format!("({} * {})", f.label(), g.label()),
        fwd,
        bwd,
    )
}

pub fn oplus(f: &PartialIso, g: &PartialIso) -> PartialIso {
    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    for (a, a2) in f.graph() {
        fwd.insert(Value::inl(a.clone()), Value::inl(a2.clone()));
        bwd.insert(Value::inl(a2.clone()), Value::inl(a.clone()));
    }
    for (b, b2) in g.graph() {
        fwd.insert(Value::inr(b.clone()), Value::inr(b2.clone()));
        bwd.insert(Value::inr(b2.clone()), Value::inr(b.clone()));
    }
    PartialIso::from_tables(
        Ty::sum(f.dom().clone(), g.dom().clone()),
        Ty::sum(f.cod().clone(), g.cod().clone()),
        format!("({} + {})", f.label(), g.label()),
        fwd,
        bwd,
    )
}

/// `Left`: `x -> x + y`, `v |-> inl v`. `Right`: `y -> x + y`, `v |-> inr v`.
pub fn quasi_injection(side: Side, x: &Ty, y: &Ty) -> PartialIso {
    let cod = Ty::sum(x.clone(), y.clone());
    let (dom, tag, name): (&Ty, fn(Value) -> Value, &str) = match side {
        Side::Left => (x, Value::inl, "inl"),
        Side::Right => (y, Value::inr, "inr"),
    };
    let fwd: BTreeMap<Value, Value> = enumerate(dom).into_iter().map(|v| (v.clone(), tag(v))).collect();
    let bwd = fwd.iter().map(|(v, w)| (w.clone(), v.clone())).collect();
    PartialIso::from_tables(dom.clone(), cod, name.to_string(), fwd, bwd)
}

/// The nowhere-defined map.
pub fn zero_morphism(a: &Ty, b: &Ty) -> PartialIso {
    PartialIso::from_tables(a.clone(), b.clone(), "0".to_string(), BTreeMap::new(), BTreeMap::new())
}

/// `v |-> (v, v)`.
pub fn delta(ty: &Ty) -> PartialIso {
    let fwd: BTreeMap<Value, Value> = enumerate(ty)
        .into_iter()
        .map(|v| (v.clone(), Value::pair(v.clone(), v)))
        .collect();
    let bwd = fwd.iter().map(|(v, w)| (w.clone(), v.clone())).collect();
    PartialIso::from_tables(
        ty.clone(),
        Ty::prod(ty.clone(), ty.clone()),
        "delta".to_string(),
        fwd,
        bwd,
    )
}

/// Structural isomorphisms of the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coherence {
    /// `x * (y * z) -> (x * y) * z`
    Assoc(Ty, Ty, Ty),
    /// `x * unit -> x`
    RightUnitor(Ty),
    /// `unit * x -> x`
    LeftUnitor(Ty),
    /// `x * y -> y * x`
    Swap(Ty, Ty),
}

pub fn coherence(kind: &Coherence, inverse: bool) -> PartialIso {
    let iso = match kind {
        Coherence::Assoc(x, y, z) => bijection(
            Ty::prod(x.clone(), Ty::prod(y.clone(), z.clone())),
            Ty::prod(Ty::prod(x.clone(), y.clone()), z.clone()),
            "alpha",
            |v| {
                let (a, bc) = v.as_pair().expect("typed");
                let (b, c) = bc.as_pair().expect("typed");
                Value::pair(Value::pair(a.clone(), b.clone()), c.clone())
            },
        ),
        Coherence::RightUnitor(x) => bijection(Ty::prod(x.clone(), Ty::Unit), x.clone(), "rho", |v| {
            v.as_pair().expect("typed").0.clone()
        }),
        Coherence::LeftUnitor(x) => bijection(Ty::prod(Ty::Unit, x.clone()), x.clone(), "lambda", |v| {
            v.as_pair().expect("typed").1.clone()
        }),
        Coherence::Swap(x, y) => bijection(
            Ty::prod(x.clone(), y.clone()),
            Ty::prod(y.clone(), x.clone()),
            "sigma",
            |v| {
                let (a, b) = v.as_pair().expect("typed");
                Value::pair(b.clone(), a.clone())
            },
        ),
    };
    if inverse {
        dagger(&iso)
    } else {
        iso
    }
}

fn bijection(dom: Ty, cod: Ty, label: &str, f: impl Fn(&Value) -> Value) -> PartialIso {
    let fwd: BTreeMap<Value, Value> = enumerate(&dom).into_iter().map(|v| (v.clone(), f(&v))).collect();
    let bwd = fwd.iter().map(|(v, w)| (w.clone(), v.clone())).collect();
    PartialIso::from_tables(dom, cod, label.to_string(), fwd, bwd)
}

/// Every partial injection `a -> b`, in a deterministic order.
pub fn homset(a: &Ty, b: &Ty) -> Vec<PartialIso> {
    let inputs = enumerate(a);
    let outputs = enumerate(b);
    let mut out = Vec::new();
    let mut used = vec![false; outputs.len()];
    let mut choice: Vec<Option<usize>> = Vec::with_capacity(inputs.len());
    fn go(
        i: usize,
        inputs: &[Value],
        outputs: &[Value],
        used: &mut [bool],
        choice: &mut Vec<Option<usize>>,
        emit: &mut dyn FnMut(&[Option<usize>]),
    ) {
        if i == inputs.len() {
            emit(choice);
            return;
        }
        choice.push(None);
        go(i + 1, inputs, outputs, used, choice, emit);
        choice.pop();
        for j in 0..outputs.len() {
            if !used[j] {
                used[j] = true;
                choice.push(Some(j));
                go(i + 1, inputs, outputs, used, choice, emit);
                choice.pop();
                used[j] = false;
            }
        }
    }
    let mut emit = |choice: &[Option<usize>]| {
        let mut fwd = BTreeMap::new();
        let mut bwd = BTreeMap::new();
        let mut parts = Vec::new();
        for (i, c) in choice.iter().enumerate() {
            if let Some(j) = c {
                fwd.insert(inputs[i].clone(), outputs[*j].clone());
                bwd.insert(outputs[*j].clone(), inputs[i].clone());
                parts.push(format!("{}>{}", inputs[i], outputs[*j]));
            }
        }
        let label = format!("{{{}}}", parts.join(" "));
        out.push(PartialIso::from_tables(a.clone(), b.clone(), label, fwd, bwd));
    };
    go(0, &inputs, &outputs, &mut used, &mut choice, &mut emit);
    out
}

/// `f = f;f†;f`. Holds for every partial injection.
pub fn is_partial_isometry(f: &PartialIso) -> bool {
    let round = compose(&compose(f, &dagger(f)).expect("typed"), f).expect("typed");
    round == *f
}

/// The positive map `f;f†` on `dom f`.
pub fn positive(f: &PartialIso) -> PartialIso {
    compose(f, &dagger(f)).expect("typed")
}

/// Whether the positives of `f` and `g` commute; requires `dom f = dom g`.
pub fn positives_commute(f: &PartialIso, g: &PartialIso) -> Result<bool, PinjError> {
    if f.dom() != g.dom() {
        return Err(PinjError::ObjectMismatch {
            left_label: f.label().to_string(),
            left: f.dom().clone(),
            right_label: g.label().to_string(),
            right: g.dom().clone(),
        });
    }
    let p = positive(f);
    let q = positive(g);
    Ok(compose(&p, &q)? == compose(&q, &p)?)
}

/// Whether `candidate` witnesses `f` as a partial isomorphism in the
/// restriction-category sense: `f;candidate = restr f` and
/// `candidate;f = restr candidate`.
pub fn is_partial_isomorphism(f: &PartialIso, candidate: &PartialIso) -> Result<bool, PinjError> {
    if candidate.dom() != f.cod() || candidate.cod() != f.dom() {
        return Err(PinjError::ObjectMismatch {
            left_label: f.label().to_string(),
            left: f.cod().clone(),
            right_label: candidate.label().to_string(),
            right: candidate.dom().clone(),
        });
    }
    Ok(compose(f, candidate)? == restriction(f) && compose(candidate, f)? == restriction(candidate))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(n: usize) -> Ty {
        Ty::fin(n)
    }

    fn atom(i: usize) -> Value {
        Value::Atom(i)
    }

    fn swap2() -> PartialIso {
        PartialIso::from_fn(fin(2), fin(2), "not", |v| match v {
            Value::Atom(i) => Some(Value::Atom(1 - i)),
            _ => None,
        })
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        let id = identity(&fin(2));
        assert_eq!(apply(&id, &atom(0), Direction::Forward).unwrap(), Some(atom(0)));
        let d = delta(&fin(2));
        assert_eq!(
            apply(&d, &atom(1), Direction::Forward).unwrap(),
            Some(Value::pair(atom(1), atom(1)))
        );
        let dd = dagger(&d);
        assert_eq!(
            apply(&dd, &Value::pair(atom(0), atom(1)), Direction::Forward).unwrap(),
            None
        );
        assert_eq!(
            apply(&dd, &Value::pair(atom(1), atom(1)), Direction::Forward).unwrap(),
            Some(atom(1))
        );
        assert_eq!(
            apply(&d, &Value::pair(atom(0), atom(0)), Direction::Backward).unwrap(),
            Some(atom(0))
        );
    }

    #[test]
    fn apply_rejects_ill_typed_arguments() {
        let id = identity(&fin(2));
        assert!(matches!(
            apply(&id, &atom(2), Direction::Forward),
            Err(PinjError::NotAnInhabitant { .. })
        ));
        assert!(apply(&delta(&fin(2)), &atom(0), Direction::Backward).is_err());
    }

    #[test]
    fn constructors_reject_non_injections() {
        let err = PartialIso::from_fn(fin(2), fin(2), "const", |_| Some(atom(0))).unwrap_err();
        assert!(matches!(err, PinjError::NotInjective { .. }));
        let err = PartialIso::from_fn(fin(2), fin(2), "escape", |_| Some(Value::Unit)).unwrap_err();
        assert!(matches!(err, PinjError::IllTypedImage { .. }));
        let err = PartialIso::from_fns(
            fin(2),
            fin(2),
            "mismatched",
            |v| Some(v.clone()),
            |w| match w {
                Value::Atom(i) => Some(Value::Atom(1 - i)),
                _ => None,
            },
        )
        .unwrap_err();
        assert!(matches!(err, PinjError::NotMutualInverse { .. }));
    }

    #[test]
    fn from_fns_accepts_a_consistent_pair() {
        let f = PartialIso::from_fns(
            fin(3),
            fin(3),
            "partial",
            |v| (v != &atom(2)).then(|| v.clone()),
            |w| (w != &atom(2)).then(|| w.clone()),
        )
        .unwrap();
        assert_eq!(f, restriction(&f));
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn composition_and_units() {
        let f = swap2();
        assert_eq!(compose(&identity(&fin(2)), &f).unwrap(), f);
        assert_eq!(compose(&f, &identity(&fin(2))).unwrap(), f);
        assert!(matches!(
            compose(&f, &identity(&fin(3))),
            Err(PinjError::ObjectMismatch { .. })
        ));
    }

    #[test]
    fn cyclic_permutations_compose_to_product() {
        let cycle = |k: usize| {
            PartialIso::from_fn(fin(3), fin(3), format!("c{k}"), move |v| match v {
                Value::Atom(i) => Some(Value::Atom((i + k) % 3)),
                _ => None,
            })
            .unwrap()
        };
        // Oracle: permutation product computed on index arrays.
        let p1 = [1usize, 2, 0];
        let p2 = [2usize, 0, 1];
        let product: Vec<usize> = (0..3).map(|i| p2[p1[i]]).collect();
        let composite = compose(&cycle(1), &cycle(2)).unwrap();
        for i in 0..3 {
            assert_eq!(composite.forward(&atom(i)), Some(&atom(product[i])));
        }
    }

    #[test]
    fn f_then_dagger_fixes_exactly_the_image() {
        for f in homset(&fin(2), &fin(3)) {
            let back = compose(&dagger(&f), &f).unwrap();
            let image: Vec<&Value> = f.graph().map(|(_, w)| w).collect();
            for w in enumerate(&fin(3)) {
                let fixed = back.forward(&w) == Some(&w);
                assert_eq!(fixed, image.contains(&&w));
                assert!(back.forward(&w).is_none() || fixed);
            }
        }
    }

    #[test]
    fn dagger_examples() {
        let f = swap2();
        assert_eq!(dagger(&dagger(&f)), f);
        assert_eq!(dagger(&identity(&fin(3))), identity(&fin(3)));
        let inl = quasi_injection(Side::Left, &fin(2), &Ty::Unit);
        let proj = dagger(&inl);
        assert_eq!(proj.forward(&Value::inl(atom(1))), Some(&atom(1)));
        assert_eq!(proj.forward(&Value::inr(Value::Unit)), None);
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restriction(&identity(&fin(2))), identity(&fin(2)));
        let inl = quasi_injection(Side::Left, &fin(2), &Ty::Unit);
        let r = restriction(&dagger(&inl));
        let lefts: Vec<Value> = enumerate(&fin(2)).into_iter().map(Value::inl).collect();
        let oracle = PartialIso::from_pairs(
            Ty::sum(fin(2), Ty::Unit),
            Ty::sum(fin(2), Ty::Unit),
            "oracle",
            lefts.iter().map(|v| (v.clone(), v.clone())),
        )
        .unwrap();
        assert_eq!(r, oracle);
    }

    #[test]
    fn restriction_law_on_fifty_deterministic_maps() {
        use rand::seq::IndexedRandom;
        use rand::SeedableRng;
        let all = homset(&fin(3), &fin(3));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for f in all.choose_multiple(&mut rng, 50) {
            assert_eq!(compose(&restriction(f), f).unwrap(), *f);
        }
    }

    #[test]
    fn tensor_examples() {
        let id2 = identity(&fin(2));
        assert_eq!(tensor_prod(&id2, &id2), identity(&Ty::prod(fin(2), fin(2))));
        let partial = PartialIso::from_pairs(fin(3), fin(3), "p", [(atom(0), atom(2))]).unwrap();
        let t = tensor_prod(&swap2(), &partial);
        assert_eq!(dagger(&t), tensor_prod(&dagger(&swap2()), &dagger(&partial)));
        let defined: Vec<Value> = t.graph().map(|(v, _)| v.clone()).collect();
        let oracle: Vec<Value> = enumerate(&fin(2))
            .into_iter()
            .map(|a| Value::pair(a, atom(0)))
            .collect();
        assert_eq!(defined, oracle);
    }

    #[test]
    fn coherence_examples() {
        let sigma = coherence(&Coherence::Swap(fin(2), Ty::Unit), false);
        assert_eq!(
            sigma.forward(&Value::pair(atom(1), Value::Unit)),
            Some(&Value::pair(Value::Unit, atom(1)))
        );
        let rho = coherence(&Coherence::RightUnitor(fin(3)), false);
        for v in enumerate(&fin(3)) {
            assert_eq!(rho.forward(&Value::pair(v.clone(), Value::Unit)), Some(&v));
        }
        let a = Coherence::Assoc(fin(2), Ty::Unit, fin(3));
        let round = compose(&coherence(&a, false), &coherence(&a, true)).unwrap();
        assert_eq!(round, identity(&Ty::prod(fin(2), Ty::prod(Ty::Unit, fin(3)))));
    }

    #[test]
    fn sums_and_zero() {
        let inl = quasi_injection(Side::Left, &fin(2), &Ty::Unit);
        assert_eq!(inl.forward(&atom(0)), Some(&Value::inl(atom(0))));
        let f = swap2();
        let g = identity(&Ty::Unit);
        let s = oplus(&f, &g);
        assert_eq!(s.forward(&Value::inr(Value::Unit)), Some(&Value::inr(Value::Unit)));
        assert_eq!(s.forward(&Value::inl(atom(0))), Some(&Value::inl(atom(1))));
        let z = zero_morphism(&fin(2), &fin(2));
        assert!(z.is_empty());
        assert_eq!(compose(&f, &z).unwrap(), z);
        assert_eq!(compose(&z, &f).unwrap(), z);
    }

    #[test]
    fn delta_examples() {
        let d = delta(&Ty::Unit);
        assert_eq!(d.forward(&Value::Unit), Some(&Value::pair(Value::Unit, Value::Unit)));
        let d3 = delta(&fin(3));
        let sigma = coherence(&Coherence::Swap(fin(3), fin(3)), false);
        assert_eq!(compose(&d3, &sigma).unwrap(), d3);
    }

    #[test]
    fn homset_sizes_match_counting_oracle() {
        // sum_k C(n,k) C(m,k) k!
        fn count(n: u64, m: u64) -> u64 {
            fn choose(n: u64, k: u64) -> u64 {
                (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
            }
            (0..=n.min(m))
                .map(|k| choose(n, k) * choose(m, k) * (1..=k).product::<u64>())
                .sum()
        }
        for (n, m) in [(0, 2), (1, 1), (2, 2), (2, 3), (3, 3), (4, 2)] {
            let a = if n == 0 { Ty::Zero } else { fin(n) };
            assert_eq!(homset(&a, &fin(m)).len() as u64, count(n as u64, m as u64));
        }
        assert_eq!(homset(&Ty::Zero, &fin(3)).len(), 1);
    }

    #[test]
    fn decision_procedures() {
        for f in homset(&fin(2), &fin(3)) {
            assert!(is_partial_isometry(&f));
            assert!(is_partial_isomorphism(&f, &dagger(&f)).unwrap());
        }
        let f = swap2();
        assert!(positives_commute(&f, &identity(&fin(2))).unwrap());
        assert!(positives_commute(&f, &identity(&fin(3))).is_err());
        assert!(is_partial_isomorphism(&f, &identity(&fin(3))).is_err());
        assert!(!is_partial_isomorphism(&f, &identity(&fin(2))).unwrap());
    }
}
