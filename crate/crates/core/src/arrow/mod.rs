//! The inverse-arrow interface and its derived combinators.
//!
//! An [`ArrowInstance`] supplies the raw operations on carriers. The free
//! functions in this module are the checked entry points: they validate the
//! instance tag and the object types before delegating.

pub mod laws;
pub mod pipeline;

use std::fmt;

use thiserror::Error;

use crate::effects::info::GhArrow;
use crate::pinj::{self, Coherence, PartialIso, PinjError};
use crate::values::Ty;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrowError {
    #[error("type mismatch in {op}: expected {expected}, found {found}")]
    TypeMismatch { op: &'static str, expected: Ty, found: Ty },
    #[error("arrow value belongs to instance `{found}`, not `{expected}`")]
    InstanceMismatch { expected: String, found: String },
    #[error("instance `{instance}` does not support {op}")]
    Unsupported { instance: String, op: &'static str },
    #[error("malformed carrier: {0}")]
    Carrier(String),
    #[error(transparent)]
    Pinj(#[from] PinjError),
}

/// The instance-specific payload of an arrow value.
#[derive(Clone, PartialEq, Eq)]
pub enum Carrier {
    /// A partial injection over effect-extended types.
    Iso(PartialIso),
    /// A heap/garbage arrow (information effects).
    Gh(GhArrow),
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Iso(p) => write!(f, "{p:?}"),
            Carrier::Gh(g) => write!(f, "{g:?}"),
        }
    }
}

/// An element of `A X Y` for some instance `A`.
#[derive(Clone, Debug)]
pub struct ArrowValue {
    pub instance: String,
    pub dom: Ty,
    pub cod: Ty,
    pub carrier: Carrier,
    pub label: String,
}

impl ArrowValue {
    pub fn new(instance: &str, dom: Ty, cod: Ty, carrier: Carrier, label: impl Into<String>) -> Self {
        ArrowValue {
            instance: instance.to_string(),
            dom,
            cod,
            carrier,
            label: label.into(),
        }
    }

    pub fn iso(&self) -> Result<&PartialIso, ArrowError> {
        match &self.carrier {
            Carrier::Iso(p) => Ok(p),
            Carrier::Gh(_) => Err(ArrowError::Carrier(format!(
                "`{}` has a heap/garbage carrier",
                self.label
            ))),
        }
    }

    pub fn gh(&self) -> Result<&GhArrow, ArrowError> {
        match &self.carrier {
            Carrier::Gh(g) => Ok(g),
            Carrier::Iso(_) => Err(ArrowError::Carrier(format!(
                "`{}` has a partial-injection carrier",
                self.label
            ))),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn retag(mut self, instance: &str) -> Self {
        self.instance = instance.to_string();
        self
    }

    pub fn signature(&self) -> String {
        format!("{} -> {}", self.dom, self.cod)
    }
}

impl fmt::Display for ArrowValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// A point at which two arrow values disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: lhs={} rhs={}", self.input, self.lhs, self.rhs)
    }
}

/// Extensional comparison of two partial injections as a [`Discrepancy`].
pub fn iso_diff(a: &PartialIso, b: &PartialIso) -> Option<Discrepancy> {
    if a.dom() != b.dom() || a.cod() != b.cod() {
        return Some(Discrepancy {
            input: "signature".into(),
            lhs: format!("{} -> {}", a.dom(), a.cod()),
            rhs: format!("{} -> {}", b.dom(), b.cod()),
        });
    }
    a.distinguish(b).map(|(v, l, r)| Discrepancy {
        input: v.to_string(),
        lhs: l.map_or("undefined".into(), |w| w.to_string()),
        rhs: r.map_or("undefined".into(), |w| w.to_string()),
    })
}

/// An effect, given by raw operations on carriers.
///
/// Implementations may assume that arguments are tagged with this instance
/// and correctly typed; the free functions of this module check that.
pub trait ArrowInstance: Send + Sync {
    fn name(&self) -> &str;

    /// How effect types are built from object types, for reports.
    fn object_map(&self) -> String;

    fn arr(&self, f: &PartialIso) -> Result<ArrowValue, ArrowError>;

    fn seq(&self, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, ArrowError>;

    fn first(&self, _a: &ArrowValue, _z: &Ty) -> Result<ArrowValue, ArrowError> {
        Err(ArrowError::Unsupported {
            instance: self.name().to_string(),
            op: "first",
        })
    }

    fn inv(&self, a: &ArrowValue) -> Result<ArrowValue, ArrowError>;

    fn left(&self, _a: &ArrowValue, _z: &Ty) -> Result<ArrowValue, ArrowError> {
        Err(ArrowError::Unsupported {
            instance: self.name().to_string(),
            op: "left",
        })
    }

    /// First observed difference, or `None` when the values are equal.
    fn diff(&self, a: &ArrowValue, b: &ArrowValue) -> Option<Discrepancy>;

    fn eq(&self, a: &ArrowValue, b: &ArrowValue) -> bool {
        self.diff(a, b).is_none()
    }

    fn supports_first(&self) -> bool;

    fn supports_choice(&self) -> bool {
        false
    }

    /// Whether `arr` accepts this pure map.
    fn lifts(&self, _f: &PartialIso) -> bool {
        true
    }

    /// An instance-specific invariant every arrow value must satisfy.
    fn check_invariant(&self, _a: &ArrowValue) -> Result<(), Discrepancy> {
        Ok(())
    }
}

fn check_tag(inst: &dyn ArrowInstance, a: &ArrowValue) -> Result<(), ArrowError> {
    if a.instance != inst.name() {
        return Err(ArrowError::InstanceMismatch {
            expected: inst.name().to_string(),
            found: a.instance.clone(),
        });
    }
    Ok(())
}

fn check_ty(op: &'static str, expected: &Ty, found: &Ty) -> Result<(), ArrowError> {
    if expected != found {
        return Err(ArrowError::TypeMismatch {
            op,
            expected: expected.clone(),
            found: found.clone(),
        });
    }
    Ok(())
}

pub fn arr(inst: &dyn ArrowInstance, f: &PartialIso) -> Result<ArrowValue, ArrowError> {
    let v = inst.arr(f)?;
    debug_assert!(v.dom == *f.dom() && v.cod == *f.cod());
    Ok(v)
}

pub fn seq(inst: &dyn ArrowInstance, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, ArrowError> {
    check_tag(inst, a)?;
    check_tag(inst, b)?;
    check_ty("seq", &a.cod, &b.dom)?;
    inst.seq(a, b)
}

pub fn first(inst: &dyn ArrowInstance, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
    check_tag(inst, a)?;
    if !inst.supports_first() {
        return Err(ArrowError::Unsupported {
            instance: inst.name().to_string(),
            op: "first",
        });
    }
    inst.first(a, z)
}

/// `arr(sigma) ; first(a) ; arr(sigma)`: `z * x -> z * y`.
pub fn second(inst: &dyn ArrowInstance, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
    let pre = arr(
        inst,
        &pinj::coherence(&Coherence::Swap(z.clone(), a.dom.clone()), false),
    )?;
    let post = arr(
        inst,
        &pinj::coherence(&Coherence::Swap(a.cod.clone(), z.clone()), false),
    )?;
    let mid = first(inst, a, z)?;
    let out = seq(inst, &seq(inst, &pre, &mid)?, &post)?;
    Ok(out.with_label(format!("second({},{z})", a.label)))
}

pub fn inv(inst: &dyn ArrowInstance, a: &ArrowValue) -> Result<ArrowValue, ArrowError> {
    check_tag(inst, a)?;
    inst.inv(a)
}

pub fn left(inst: &dyn ArrowInstance, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
    check_tag(inst, a)?;
    if !inst.supports_choice() {
        return Err(ArrowError::Unsupported {
            instance: inst.name().to_string(),
            op: "left",
        });
    }
    inst.left(a, z)
}

/// `f &&& g = arr(copy) ; first(f) ; second(g)`.
pub fn fanout(inst: &dyn ArrowInstance, f: &ArrowValue, g: &ArrowValue) -> Result<ArrowValue, ArrowError> {
    check_ty("fanout", &f.dom, &g.dom)?;
    let copy = arr(inst, &pinj::delta(&f.dom))?;
    let step = seq(inst, &copy, &first(inst, f, &g.dom)?)?;
    let out = seq(inst, &step, &second(inst, g, &f.cod)?)?;
    Ok(out.with_label(format!("({} &&& {})", f.label, g.label)))
}

/// `f bind g = (arr(id) &&& f) ; g`.
pub fn bind(inst: &dyn ArrowInstance, f: &ArrowValue, g: &ArrowValue) -> Result<ArrowValue, ArrowError> {
    check_ty("bind", &Ty::prod(f.dom.clone(), f.cod.clone()), &g.dom)?;
    let id = arr(inst, &pinj::identity(&f.dom))?;
    let out = seq(inst, &fanout(inst, &id, f)?, g)?;
    Ok(out.with_label(format!("({} bind {})", f.label, g.label)))
}

/// Checked extensional equality through the instance.
pub fn arrow_eq(inst: &dyn ArrowInstance, a: &ArrowValue, b: &ArrowValue) -> bool {
    a.instance == b.instance && a.dom == b.dom && a.cod == b.cod && inst.eq(a, b)
}
