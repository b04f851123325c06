//! Deliberately broken instances used to show the harness catches them.

use crate::arrow::{ArrowError, ArrowInstance, ArrowValue, Discrepancy};
use crate::pinj::{self, PartialIso};
use crate::values::{Ty, Value};

use super::identity::IdentityArrow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutantKind {
    /// `inv a = a` on endomorphisms.
    NoInv,
    /// `first a = a * shift` with a nontrivial permutation of the ancilla.
    BadFirst,
}

#[derive(Debug, Clone)]
pub struct Mutant {
    kind: MutantKind,
    inner: IdentityArrow,
}

pub fn mutant(kind: MutantKind) -> Mutant {
    Mutant {
        kind,
        inner: IdentityArrow,
    }
}

/// `i |-> i+1 mod n` on `Fin(n)`, identity elsewhere.
fn shift(z: &Ty) -> PartialIso {
    match z {
        Ty::Fin(n) if *n >= 2 => {
            let n = *n;
            PartialIso::from_fn(z.clone(), z.clone(), "shift", |v| match v {
                Value::Atom(i) => Some(Value::Atom((i + 1) % n)),
                _ => None,
            })
            .expect("bijection")
        }
        other => pinj::identity(other),
    }
}

impl Mutant {
    fn tag(&self, r: Result<ArrowValue, ArrowError>) -> Result<ArrowValue, ArrowError> {
        r.map(|v| v.retag(self.name()))
    }
}

impl ArrowInstance for Mutant {
    fn name(&self) -> &str {
        match self.kind {
            MutantKind::NoInv => "mutant-noinv",
            MutantKind::BadFirst => "mutant-badfirst",
        }
    }

    fn object_map(&self) -> String {
        match self.kind {
            MutantKind::NoInv => "X -> Y, inv a = a on endomorphisms".into(),
            MutantKind::BadFirst => "X -> Y, first a = a * shift".into(),
        }
    }

    fn arr(&self, f: &PartialIso) -> Result<ArrowValue, ArrowError> {
        self.tag(self.inner.arr(f))
    }

    fn seq(&self, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        self.tag(self.inner.seq(a, b))
    }

    fn first(&self, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
        match self.kind {
            MutantKind::NoInv => self.tag(self.inner.first(a, z)),
            MutantKind::BadFirst => {
                let f = pinj::tensor_prod(a.iso()?, &shift(z));
                Ok(self
                    .inner
                    .value(f, format!("first({},{z})", a.label))
                    .retag(self.name()))
            }
        }
    }

    fn inv(&self, a: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        match self.kind {
            MutantKind::NoInv if a.dom == a.cod => Ok(a.clone().with_label(format!("inv({})", a.label))),
            _ => self.tag(self.inner.inv(a)),
        }
    }

    fn diff(&self, a: &ArrowValue, b: &ArrowValue) -> Option<Discrepancy> {
        self.inner.diff(a, b)
    }

    fn supports_first(&self) -> bool {
        true
    }
}
