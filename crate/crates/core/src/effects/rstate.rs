//! Store-passing arrows `X*S -> Y*S`: reversible state, the reader
//! (context that must stay fixed) and the rewriter (a group acting on the
//! store).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arrow::{iso_diff, ArrowError, ArrowInstance, ArrowValue, Carrier, Discrepancy};
use crate::pinj::{self, apply, Direction, PartialIso};
use crate::values::{enumerate, Ty, Value};

#[derive(Clone)]
enum Flavor {
    State,
    Reader,
    Rewriter(GroupSpec),
}

/// `RState S`, `Reader C` and `Rewriter G` share every operation.
#[derive(Clone)]
pub struct StoreArrow {
    name: String,
    store: Ty,
    flavor: Flavor,
}

pub fn rstate_instance(s: Ty) -> StoreArrow {
    StoreArrow {
        name: "rstate".into(),
        store: s,
        flavor: Flavor::State,
    }
}

pub fn reader_instance(c: Ty) -> StoreArrow {
    StoreArrow {
        name: "reader".into(),
        store: c,
        flavor: Flavor::Reader,
    }
}

pub fn rewriter_instance(g: GroupSpec) -> StoreArrow {
    StoreArrow {
        name: "rewriter".into(),
        store: g.carrier.clone(),
        flavor: Flavor::Rewriter(g),
    }
}

impl StoreArrow {
    pub fn store(&self) -> &Ty {
        &self.store
    }

    pub fn group(&self) -> Option<&GroupSpec> {
        match &self.flavor {
            Flavor::Rewriter(g) => Some(g),
            _ => None,
        }
    }

    /// Wraps a carrier `x*S -> y*S` without any check.
    pub fn value(&self, x: Ty, y: Ty, core: PartialIso, label: impl Into<String>) -> ArrowValue {
        ArrowValue::new(&self.name, x, y, Carrier::Iso(core), label)
    }

    fn split(&self, t: &Ty) -> Result<Ty, ArrowError> {
        match t {
            Ty::Prod(x, s) if **s == self.store => Ok((**x).clone()),
            other => Err(ArrowError::Carrier(format!(
                "{other} is not of the form X * {}",
                self.store
            ))),
        }
    }

    /// A raw carrier `X*S -> Y*S` as an arrow value, types read off the carrier.
    pub fn from_core(&self, core: PartialIso) -> Result<ArrowValue, ArrowError> {
        let x = self.split(core.dom())?;
        let y = self.split(core.cod())?;
        let label = core.label().to_string();
        Ok(self.value(x, y, core, label))
    }
}

impl ArrowInstance for StoreArrow {
    fn name(&self) -> &str {
        &self.name
    }

    fn object_map(&self) -> String {
        format!("X*S -> Y*S, S = {}", self.store)
    }

    fn arr(&self, f: &PartialIso) -> Result<ArrowValue, ArrowError> {
        let core = pinj::tensor_prod(f, &pinj::identity(&self.store));
        Ok(self.value(f.dom().clone(), f.cod().clone(), core, format!("arr {}", f.label())))
    }

    fn seq(&self, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let core = pinj::compose(a.iso()?, b.iso()?)?;
        Ok(self.value(a.dom.clone(), b.cod.clone(), core, format!("{};{}", a.label, b.label)))
    }

    fn first(&self, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
        let core = a.iso()?;
        let zs = enumerate(z);
        let pairs = core.graph().flat_map(|(xs, ys)| {
            let (x, s) = xs.as_pair().expect("typed");
            let (y, s2) = ys.as_pair().expect("typed");
            zs.iter().map(move |zv| {
                (
                    Value::pair(Value::pair(x.clone(), zv.clone()), s.clone()),
                    Value::pair(Value::pair(y.clone(), zv.clone()), s2.clone()),
                )
            })
        });
        let dom = Ty::prod(a.dom.clone(), z.clone());
        let cod = Ty::prod(a.cod.clone(), z.clone());
        let label = format!("first({},{z})", a.label);
        let carrier = PartialIso::from_pairs(
            Ty::prod(dom.clone(), self.store.clone()),
            Ty::prod(cod.clone(), self.store.clone()),
            label.clone(),
            pairs,
        )?;
        Ok(self.value(dom, cod, carrier, label))
    }

    fn inv(&self, a: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let core = pinj::dagger(a.iso()?);
        Ok(self.value(a.cod.clone(), a.dom.clone(), core, format!("inv({})", a.label)))
    }

    fn diff(&self, a: &ArrowValue, b: &ArrowValue) -> Option<Discrepancy> {
        match (a.iso(), b.iso()) {
            (Ok(p), Ok(q)) => iso_diff(p, q),
            _ => Some(Discrepancy {
                input: "carrier".into(),
                lhs: format!("{:?}", a.carrier),
                rhs: format!("{:?}", b.carrier),
            }),
        }
    }

    fn supports_first(&self) -> bool {
        true
    }

    fn check_invariant(&self, a: &ArrowValue) -> Result<(), Discrepancy> {
        let core = a.iso().map_err(|e| Discrepancy {
            input: "carrier".into(),
            lhs: e.to_string(),
            rhs: "-".into(),
        })?;
        match self.flavor {
            Flavor::Reader => context_violation(core).map_or(Ok(()), Err),
            _ => Ok(()),
        }
    }
}

fn context_violation(core: &PartialIso) -> Option<Discrepancy> {
    core.graph().find_map(|(v, w)| {
        let (_, c) = v.as_pair()?;
        let (_, c2) = w.as_pair()?;
        (c != c2).then(|| Discrepancy {
            input: v.to_string(),
            lhs: w.to_string(),
            rhs: format!("context {c} must be kept"),
        })
    })
}

/// `get (x,s) = ((x,s),s)`.
pub fn rstate_get(inst: &StoreArrow, x: &Ty) -> ArrowValue {
    let s = inst.store.clone();
    let xs = Ty::prod(x.clone(), s.clone());
    let core = PartialIso::from_fn(xs.clone(), Ty::prod(xs.clone(), s), "get", |v| {
        let (_, s) = v.as_pair()?;
        Some(Value::pair(v.clone(), s.clone()))
    })
    .expect("get is injective");
    inst.value(x.clone(), xs, core, "get")
}

/// The inverse of `get`: defined only when the state equals the given copy.
pub fn rstate_assert(inst: &StoreArrow, x: &Ty) -> ArrowValue {
    let g = rstate_get(inst, x);
    let core = pinj::dagger(g.iso().expect("iso carrier")).relabel("assert");
    inst.value(g.cod, g.dom, core, "assert")
}

/// `update f (x,s) = (x, f s)`.
pub fn rstate_update(inst: &StoreArrow, f: &PartialIso, x: &Ty) -> Result<ArrowValue, ArrowError> {
    if f.dom() != &inst.store || f.cod() != &inst.store {
        return Err(ArrowError::TypeMismatch {
            op: "update",
            expected: inst.store.clone(),
            found: f.dom().clone(),
        });
    }
    let core = pinj::tensor_prod(&pinj::identity(x), f);
    let label = format!("update({})", f.label());
    Ok(inst.value(x.clone(), x.clone(), core, label))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReaderError {
    #[error("core must have shape X * C -> Y * C with C = {context}, found {found}")]
    Shape { context: Ty, found: String },
    #[error("core modifies the context: {input} |-> {output}")]
    ContextModified { input: Value, output: Value },
}

/// Accepts a core only if it never changes the context component.
pub fn reader_make(inst: &StoreArrow, core: PartialIso) -> Result<ArrowValue, ReaderError> {
    let shape_err = || ReaderError::Shape {
        context: inst.store.clone(),
        found: format!("{} -> {}", core.dom(), core.cod()),
    };
    let x = inst.split(core.dom()).map_err(|_| shape_err())?;
    let y = inst.split(core.cod()).map_err(|_| shape_err())?;
    if let Some((v, w)) = core
        .graph()
        .find(|(v, w)| v.as_pair().map(|p| p.1) != w.as_pair().map(|p| p.1))
    {
        return Err(ReaderError::ContextModified {
            input: v.clone(),
            output: w.clone(),
        });
    }
    let label = core.label().to_string();
    Ok(inst.value(x, y, core, label))
}

/// Context access, defined exactly as `get`.
pub fn reader_get(inst: &StoreArrow, x: &Ty) -> ArrowValue {
    rstate_get(inst, x).with_label("ask")
}

/// A group in the parametrized style: `gmul : G -> (G <-> G)`.
#[derive(Clone)]
pub struct GroupSpec {
    pub name: String,
    pub carrier: Ty,
    pub unit: Value,
    pub mul: Arc<dyn Fn(&Value) -> PartialIso + Send + Sync>,
    pub inv: PartialIso,
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({} on {})", self.name, self.carrier)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("group axiom `{axiom}` fails at {at}")]
pub struct GroupAxiomError {
    pub axiom: &'static str,
    pub at: String,
}

impl GroupSpec {
    /// `Z mod n` on `Fin(n)`.
    pub fn cyclic(n: usize) -> GroupSpec {
        let carrier = Ty::fin(n);
        let c = carrier.clone();
        let mul = move |a: &Value| {
            let k = match a {
                Value::Atom(k) => *k,
                _ => panic!("group element expected"),
            };
            PartialIso::from_fn(c.clone(), c.clone(), format!("+{k}"), |b| match b {
                Value::Atom(i) => Some(Value::Atom((i + k) % n)),
                _ => None,
            })
            .expect("translation is a bijection")
        };
        let inv = PartialIso::from_fn(carrier.clone(), carrier.clone(), "neg", |a| match a {
            Value::Atom(i) => Some(Value::Atom((n - i) % n)),
            _ => None,
        })
        .expect("negation is a bijection");
        GroupSpec {
            name: format!("Z/{n}"),
            carrier,
            unit: Value::Atom(0),
            mul: Arc::new(mul),
            inv,
        }
    }

    /// `a . b = gmul a b`.
    pub fn product(&self, a: &Value, b: &Value) -> Value {
        (self.mul)(a).forward(b).cloned().expect("gmul a is total")
    }

    pub fn inverse(&self, a: &Value) -> Value {
        self.inv.forward(a).cloned().expect("ginv is total")
    }

    pub fn elements(&self) -> Vec<Value> {
        enumerate(&self.carrier)
    }

    /// Checks the axioms extensionally over the carrier.
    pub fn validate(&self) -> Result<(), GroupAxiomError> {
        let id = pinj::identity(&self.carrier);
        let fail = |axiom, at: String| Err(GroupAxiomError { axiom, at });
        if (self.mul)(&self.unit) != id {
            return fail("gmul gunit = id", self.unit.to_string());
        }
        if pinj::compose(&self.inv, &self.inv).ok() != Some(id) {
            return fail("ginv;ginv = id", "carrier".into());
        }
        for a in self.elements() {
            if !(self.mul)(&a).is_total() {
                return fail("gmul a total", a.to_string());
            }
            if (self.mul)(&self.inverse(&a)) != pinj::dagger(&(self.mul)(&a)) {
                return fail("gmul (ginv a) = (gmul a)†", a.to_string());
            }
            for b in self.elements() {
                let ab = self.product(&a, &b);
                // gmul b after gmul a is gmul (a.b) as maps.
                let lhs = pinj::compose(&(self.mul)(&b), &(self.mul)(&a)).expect("endomaps");
                if lhs != (self.mul)(&ab) {
                    return fail("gmul a . gmul b = gmul (a.b)", format!("({a}, {b})"));
                }
            }
        }
        Ok(())
    }
}

/// `rewrite a (x, b) = (x, gmul a b)`.
pub fn rewrite(inst: &StoreArrow, a: &Value, x: &Ty) -> Result<ArrowValue, ArrowError> {
    let g = inst.group().ok_or_else(|| ArrowError::Unsupported {
        instance: inst.name.clone(),
        op: "rewrite",
    })?;
    apply(&pinj::identity(&g.carrier), a, Direction::Forward)?;
    let core = pinj::tensor_prod(&pinj::identity(x), &(g.mul)(a));
    Ok(inst.value(x.clone(), x.clone(), core, format!("rewrite({a})")))
}
