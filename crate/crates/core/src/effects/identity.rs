//! The identity arrow: arrow values are the pure maps themselves.

use crate::arrow::{iso_diff, ArrowError, ArrowInstance, ArrowValue, Carrier, Discrepancy};
use crate::pinj::{self, PartialIso};
use crate::values::Ty;

#[derive(Debug, Clone, Default)]
pub struct IdentityArrow;

pub fn identity_instance() -> IdentityArrow {
    IdentityArrow
}

impl IdentityArrow {
    pub fn value(&self, f: PartialIso, label: impl Into<String>) -> ArrowValue {
        ArrowValue::new("identity", f.dom().clone(), f.cod().clone(), Carrier::Iso(f), label)
    }
}

impl ArrowInstance for IdentityArrow {
    fn name(&self) -> &str {
        "identity"
    }

    fn object_map(&self) -> String {
        "X -> Y".into()
    }

    fn arr(&self, f: &PartialIso) -> Result<ArrowValue, ArrowError> {
        Ok(self.value(f.clone(), f.label()))
    }

    fn seq(&self, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let f = pinj::compose(a.iso()?, b.iso()?)?;
        Ok(self.value(f, format!("{};{}", a.label, b.label)))
    }

    fn first(&self, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
        let f = pinj::tensor_prod(a.iso()?, &pinj::identity(z));
        Ok(self.value(f, format!("first({},{z})", a.label)))
    }

    fn inv(&self, a: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        Ok(self.value(pinj::dagger(a.iso()?), format!("inv({})", a.label)))
    }

    /// `left f (InL x) = InL (f x)`, identity on `InR`.
    fn left(&self, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
        let f = pinj::oplus(a.iso()?, &pinj::identity(z));
        Ok(self.value(f, format!("left({},{z})", a.label)))
    }

    fn diff(&self, a: &ArrowValue, b: &ArrowValue) -> Option<Discrepancy> {
        iso_diff(a.iso().ok()?, b.iso().ok()?)
    }

    fn supports_first(&self) -> bool {
        true
    }

    fn supports_choice(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::{self, arrow_eq};
    use crate::values::Value;

    fn not2() -> PartialIso {
        PartialIso::from_fn(Ty::fin(2), Ty::fin(2), "not", |v| match v {
            Value::Atom(i) => Some(Value::Atom(1 - i)),
            _ => None,
        })
        .unwrap()
    }

    #[test]
    fn arr_and_inv_are_the_map_and_its_dagger() {
        let inst = identity_instance();
        for f in pinj::homset(&Ty::fin(2), &Ty::fin(3)) {
            let a = arrow::arr(&inst, &f).unwrap();
            assert_eq!(a.iso().unwrap(), &f);
            assert_eq!(arrow::inv(&inst, &a).unwrap().iso().unwrap(), &pinj::dagger(&f));
        }
    }

    #[test]
    fn left_acts_on_left_tags_only() {
        let inst = identity_instance();
        let a = arrow::arr(&inst, &not2()).unwrap();
        let l = arrow::left(&inst, &a, &Ty::Unit).unwrap();
        let f = l.iso().unwrap();
        assert_eq!(
            f.forward(&Value::inl(Value::Atom(0))),
            Some(&Value::inl(Value::Atom(1)))
        );
        assert_eq!(f.forward(&Value::inr(Value::Unit)), Some(&Value::inr(Value::Unit)));
        let id = arrow::arr(&inst, &pinj::identity(&Ty::fin(2))).unwrap();
        let lid = arrow::left(&inst, &id, &Ty::Unit).unwrap();
        let sum_id = arrow::arr(&inst, &pinj::identity(&Ty::sum(Ty::fin(2), Ty::Unit))).unwrap();
        assert!(arrow_eq(&inst, &lid, &sum_id));
    }

    #[test]
    fn left_is_functorial() {
        let inst = identity_instance();
        let maps = pinj::homset(&Ty::fin(2), &Ty::fin(2));
        for f in &maps {
            for g in &maps {
                let a = arrow::arr(&inst, f).unwrap();
                let b = arrow::arr(&inst, g).unwrap();
                let lhs = arrow::left(&inst, &arrow::seq(&inst, &a, &b).unwrap(), &Ty::fin(2)).unwrap();
                let rhs = arrow::seq(
                    &inst,
                    &arrow::left(&inst, &a, &Ty::fin(2)).unwrap(),
                    &arrow::left(&inst, &b, &Ty::fin(2)).unwrap(),
                )
                .unwrap();
                assert!(arrow_eq(&inst, &lhs, &rhs));
            }
        }
    }

    #[test]
    fn checked_entry_points_reject_bad_input() {
        let inst = identity_instance();
        let a = arrow::arr(&inst, &not2()).unwrap();
        let b = arrow::arr(&inst, &pinj::identity(&Ty::Unit)).unwrap();
        assert!(matches!(
            arrow::seq(&inst, &a, &b),
            Err(ArrowError::TypeMismatch { .. })
        ));
        let foreign = a.clone().retag("rstate");
        assert!(matches!(
            arrow::seq(&inst, &a, &foreign),
            Err(ArrowError::InstanceMismatch { .. })
        ));
    }
}
