//! Reversible error handling, a weak arrow on `X + E <-> Y + E`.

use crate::arrow::{iso_diff, ArrowError, ArrowInstance, ArrowValue, Carrier, Discrepancy};
use crate::pinj::{self, PartialIso};
use crate::values::{Ty, Value};

#[derive(Debug, Clone)]
pub struct ErrorArrow {
    errors: Ty,
}

pub fn error_instance(e: Ty) -> ErrorArrow {
    ErrorArrow { errors: e }
}

impl ErrorArrow {
    pub fn errors(&self) -> &Ty {
        &self.errors
    }

    pub fn value(&self, x: Ty, y: Ty, core: PartialIso, label: impl Into<String>) -> ArrowValue {
        ArrowValue::new("error", x, y, Carrier::Iso(core), label)
    }
}

impl ArrowInstance for ErrorArrow {
    fn name(&self) -> &str {
        "error"
    }

    fn object_map(&self) -> String {
        format!("X+E -> Y+E, E = {}", self.errors)
    }

    fn arr(&self, f: &PartialIso) -> Result<ArrowValue, ArrowError> {
        let core = pinj::oplus(f, &pinj::identity(&self.errors));
        Ok(self.value(f.dom().clone(), f.cod().clone(), core, format!("arr {}", f.label())))
    }

    fn seq(&self, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let core = pinj::compose(a.iso()?, b.iso()?)?;
        Ok(self.value(a.dom.clone(), b.cod.clone(), core, format!("{};{}", a.label, b.label)))
    }

    fn inv(&self, a: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let core = pinj::dagger(a.iso()?);
        Ok(self.value(a.cod.clone(), a.dom.clone(), core, format!("inv({})", a.label)))
    }

    fn diff(&self, a: &ArrowValue, b: &ArrowValue) -> Option<Discrepancy> {
        iso_diff(a.iso().ok()?, b.iso().ok()?)
    }

    fn supports_first(&self) -> bool {
        false
    }
}

/// `raise f p : Error E X Y`.
///
/// `inl x` becomes the error `p†(inl (f x))`; an incoming error `inr e`
/// becomes `p†(inr e)`.
pub fn raise(inst: &ErrorArrow, f: &PartialIso, p: &PartialIso, y: &Ty) -> Result<ArrowValue, ArrowError> {
    let e = &inst.errors;
    if f.cod() != e {
        return Err(ArrowError::TypeMismatch {
            op: "raise",
            expected: e.clone(),
            found: f.cod().clone(),
        });
    }
    let ee = Ty::sum(e.clone(), e.clone());
    if p.dom() != e || p.cod() != &ee {
        return Err(ArrowError::TypeMismatch {
            op: "raise",
            expected: ee,
            found: p.cod().clone(),
        });
    }
    let choose = pinj::dagger(p);
    let x = f.dom().clone();
    let label = format!("raise({},{})", f.label(), p.label());
    let core = PartialIso::from_fn(
        Ty::sum(x.clone(), e.clone()),
        Ty::sum(y.clone(), e.clone()),
        label.clone(),
        |v| {
            let tagged = match v {
                Value::InL(x) => Value::inl(f.forward(x)?.clone()),
                Value::InR(err) => Value::inr((**err).clone()),
                _ => return None,
            };
            choose.forward(&tagged).map(|e| Value::inr(e.clone()))
        },
    )?;
    Ok(inst.value(x, y.clone(), core, label))
}

/// The converse of `raise`.
pub fn handle(inst: &ErrorArrow, f: &PartialIso, p: &PartialIso, y: &Ty) -> Result<ArrowValue, ArrowError> {
    let r = raise(inst, f, p, y)?;
    let label = format!("handle({},{})", f.label(), p.label());
    Ok(inst.inv(&r)?.with_label(label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::{self, arrow_eq};
    use crate::pinj::{quasi_injection, Side};

    fn atom(i: usize) -> Value {
        Value::Atom(i)
    }

    #[test]
    fn arr_clauses() {
        let inst = error_instance(Ty::Unit);
        let not = PartialIso::from_fn(Ty::fin(2), Ty::fin(2), "not", |v| match v {
            Value::Atom(i) => Some(atom(1 - i)),
            _ => None,
        })
        .unwrap();
        let a = arrow::arr(&inst, &not).unwrap();
        let core = a.iso().unwrap();
        assert_eq!(core.forward(&Value::inl(atom(0))), Some(&Value::inl(atom(1))));
        assert_eq!(core.forward(&Value::inr(Value::Unit)), Some(&Value::inr(Value::Unit)));
        assert!(matches!(
            arrow::first(&inst, &a, &Ty::Unit),
            Err(ArrowError::Unsupported { .. })
        ));
    }

    #[test]
    fn raise_with_left_choice_tags_fresh_errors() {
        let e = Ty::fin(2);
        let inst = error_instance(e.clone());
        let f = pinj::identity(&Ty::fin(2)).relabel("f");
        let p = quasi_injection(Side::Left, &e, &e);
        let r = raise(&inst, &f, &p, &Ty::Unit).unwrap();
        let core = r.iso().unwrap();
        for i in 0..2 {
            assert_eq!(core.forward(&Value::inl(atom(i))), Some(&Value::inr(atom(i))));
            // Errors from elsewhere are not this site's under the left choice.
            assert_eq!(core.forward(&Value::inr(atom(i))), None);
        }
    }

    #[test]
    fn raise_with_a_split_choice() {
        let e = Ty::fin(2);
        let inst = error_instance(e.clone());
        let f = PartialIso::from_pairs(Ty::Unit, e.clone(), "oops", [(Value::Unit, atom(0))]).unwrap();
        let p = PartialIso::from_pairs(
            e.clone(),
            Ty::sum(e.clone(), e.clone()),
            "split",
            [(atom(0), Value::inl(atom(0))), (atom(1), Value::inr(atom(1)))],
        )
        .unwrap();
        let r = raise(&inst, &f, &p, &Ty::fin(2)).unwrap();
        let core = r.iso().unwrap();
        assert_eq!(core.forward(&Value::inl(Value::Unit)), Some(&Value::inr(atom(0))));
        assert_eq!(core.forward(&Value::inr(atom(1))), Some(&Value::inr(atom(1))));
        assert_eq!(core.forward(&Value::inr(atom(0))), None);

        let h = handle(&inst, &f, &p, &Ty::fin(2)).unwrap();
        let round = arrow::seq(&inst, &r, &h).unwrap();
        let restr = PartialIso::from_pairs(
            core.dom().clone(),
            core.dom().clone(),
            "restr",
            core.graph().map(|(v, _)| (v.clone(), v.clone())),
        )
        .unwrap();
        assert_eq!(round.iso().unwrap(), &restr);
        let again = arrow::seq(&inst, &round, &r).unwrap();
        assert!(arrow_eq(&inst, &again, &r));
    }

    #[test]
    fn raise_rejects_mistyped_arguments() {
        let inst = error_instance(Ty::fin(2));
        let f = pinj::identity(&Ty::Unit);
        let p = quasi_injection(Side::Left, &Ty::fin(2), &Ty::fin(2));
        assert!(raise(&inst, &f, &p, &Ty::Unit).is_err());
    }
}
