//! Length-preserving list transformations `[X] <-> [Y]`.

use crate::arrow::{iso_diff, ArrowError, ArrowInstance, ArrowValue, Carrier, Discrepancy};
use crate::pinj::{self, PartialIso};
use crate::values::{Ty, Value};

#[derive(Debug, Clone)]
pub struct VectorArrow {
    max_len: usize,
}

pub fn vector_instance(max_len: usize) -> VectorArrow {
    VectorArrow { max_len }
}

impl VectorArrow {
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn list(&self, t: &Ty) -> Ty {
        Ty::seq(t.clone(), self.max_len)
    }

    pub fn value(&self, x: Ty, y: Ty, core: PartialIso, label: impl Into<String>) -> ArrowValue {
        ArrowValue::new("vector", x, y, Carrier::Iso(core), label)
    }

    /// An arbitrary carrier `[x] -> [y]`, taken as is.
    pub fn from_core(&self, core: PartialIso) -> Result<ArrowValue, ArrowError> {
        let elem = |t: &Ty| match t {
            Ty::Seq(e, n) if *n == self.max_len => Ok((**e).clone()),
            other => Err(ArrowError::Carrier(format!(
                "{other} is not a list type of bound {}",
                self.max_len
            ))),
        };
        let (x, y) = (elem(core.dom())?, elem(core.cod())?);
        let label = core.label().to_string();
        Ok(self.value(x, y, core, label))
    }
}

/// `map f`, defined on a list iff `f` is defined on every element.
pub fn rev_map(f: &PartialIso, max_len: usize) -> PartialIso {
    PartialIso::from_fn(
        Ty::seq(f.dom().clone(), max_len),
        Ty::seq(f.cod().clone(), max_len),
        format!("map {}", f.label()),
        |v| {
            let xs = v.as_seq()?;
            xs.iter()
                .map(|x| f.forward(x).cloned())
                .collect::<Option<Vec<_>>>()
                .map(Value::Seq)
        },
    )
    .expect("map of an injection is injective")
}

/// `zip : ([a],[b]) <-> [(a,b)]`, defined exactly on equal lengths.
pub fn rev_zip(a: &Ty, b: &Ty, max_len: usize) -> PartialIso {
    let dom = Ty::prod(Ty::seq(a.clone(), max_len), Ty::seq(b.clone(), max_len));
    let cod = Ty::seq(Ty::prod(a.clone(), b.clone()), max_len);
    PartialIso::from_fn(dom, cod, "zip", |v| {
        let (xs, ys) = v.as_pair()?;
        zip_lists(xs.as_seq()?, ys.as_seq()?)
    })
    .expect("zip is injective")
}

fn zip_lists(xs: &[Value], ys: &[Value]) -> Option<Value> {
    (xs.len() == ys.len()).then(|| {
        Value::Seq(
            xs.iter()
                .zip(ys)
                .map(|(x, y)| Value::pair(x.clone(), y.clone()))
                .collect(),
        )
    })
}

fn unzip_list(ps: &[Value]) -> (Vec<Value>, Vec<Value>) {
    ps.iter()
        .map(|p| {
            let (x, z) = p.as_pair().expect("pairs");
            (x.clone(), z.clone())
        })
        .unzip()
}

/// List reversal as a vector arrow.
pub fn rev_reverse(inst: &VectorArrow, x: &Ty) -> ArrowValue {
    let core = PartialIso::from_fn(inst.list(x), inst.list(x), "reverse", |v| {
        let mut xs = v.as_seq()?.to_vec();
        xs.reverse();
        Some(Value::Seq(xs))
    })
    .expect("reverse is a bijection");
    inst.value(x.clone(), x.clone(), core, "reverse")
}

impl ArrowInstance for VectorArrow {
    fn name(&self) -> &str {
        "vector"
    }

    fn object_map(&self) -> String {
        format!("[X] -> [Y], max length {}", self.max_len)
    }

    fn arr(&self, f: &PartialIso) -> Result<ArrowValue, ArrowError> {
        let core = rev_map(f, self.max_len);
        Ok(self.value(f.dom().clone(), f.cod().clone(), core, format!("arr {}", f.label())))
    }

    fn seq(&self, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let core = pinj::compose(a.iso()?, b.iso()?)?;
        Ok(self.value(a.dom.clone(), b.cod.clone(), core, format!("{};{}", a.label, b.label)))
    }

    /// `let (xs,zs) = zip† ps in zip (a xs, zs)`.
    fn first(&self, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
        let core = a.iso()?;
        let dom = Ty::prod(a.dom.clone(), z.clone());
        let cod = Ty::prod(a.cod.clone(), z.clone());
        let label = format!("first({},{z})", a.label);
        let carrier = PartialIso::from_fn(self.list(&dom), self.list(&cod), label.clone(), |ps| {
            let (xs, zs) = unzip_list(ps.as_seq()?);
            let ys = core.forward(&Value::Seq(xs))?;
            zip_lists(ys.as_seq()?, &zs)
        })?;
        Ok(self.value(dom, cod, carrier, label))
    }

    fn inv(&self, a: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let core = pinj::dagger(a.iso()?);
        Ok(self.value(a.cod.clone(), a.dom.clone(), core, format!("inv({})", a.label)))
    }

    fn diff(&self, a: &ArrowValue, b: &ArrowValue) -> Option<Discrepancy> {
        iso_diff(a.iso().ok()?, b.iso().ok()?)
    }

    fn supports_first(&self) -> bool {
        true
    }

    /// Length is preserved wherever the carrier is defined.
    fn check_invariant(&self, a: &ArrowValue) -> Result<(), Discrepancy> {
        let Ok(core) = a.iso() else {
            return Err(Discrepancy {
                input: "carrier".into(),
                lhs: "not a partial injection".into(),
                rhs: "-".into(),
            });
        };
        for (v, w) in core.graph() {
            let (n, m) = (v.as_seq().map_or(0, |s| s.len()), w.as_seq().map_or(0, |s| s.len()));
            if n != m {
                return Err(Discrepancy {
                    input: v.to_string(),
                    lhs: w.to_string(),
                    rhs: format!("a list of length {n}"),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::{self, arrow_eq};

    fn atom(i: usize) -> Value {
        Value::Atom(i)
    }

    fn list(xs: &[usize]) -> Value {
        Value::Seq(xs.iter().map(|&i| atom(i)).collect())
    }

    fn not2() -> PartialIso {
        PartialIso::from_fn(Ty::fin(2), Ty::fin(2), "not", |v| match v {
            Value::Atom(i) => Some(atom(1 - i)),
            _ => None,
        })
        .unwrap()
    }

    #[test]
    fn zip_examples() {
        let zip = rev_zip(&Ty::fin(2), &Ty::fin(2), 2);
        let out = zip.forward(&Value::pair(list(&[0, 1]), list(&[1, 0])));
        let expected = Value::Seq(vec![Value::pair(atom(0), atom(1)), Value::pair(atom(1), atom(0))]);
        assert_eq!(out, Some(&expected));
        assert_eq!(zip.forward(&Value::pair(list(&[0]), list(&[1, 0]))), None);
        assert_eq!(zip.forward(&Value::pair(list(&[]), list(&[]))), Some(&list(&[])));
    }

    #[test]
    fn map_examples() {
        let m = rev_map(&not2(), 2);
        assert_eq!(m.forward(&list(&[0, 0])), Some(&list(&[1, 1])));
        assert_eq!(m.forward(&list(&[])), Some(&list(&[])));
        let partial = PartialIso::from_pairs(Ty::fin(2), Ty::fin(2), "p", [(atom(0), atom(0))]).unwrap();
        assert_eq!(rev_map(&partial, 2).forward(&list(&[0, 1])), None);
    }

    #[test]
    fn arr_preserves_composition_over_bounded_lists() {
        let inst = vector_instance(2);
        let maps = pinj::homset(&Ty::fin(2), &Ty::fin(2));
        for f in &maps {
            for g in &maps {
                let lhs = arrow::arr(&inst, &pinj::compose(f, g).unwrap()).unwrap();
                let rhs = arrow::seq(&inst, &arrow::arr(&inst, f).unwrap(), &arrow::arr(&inst, g).unwrap()).unwrap();
                assert!(arrow_eq(&inst, &lhs, &rhs));
            }
        }
    }

    #[test]
    fn first_unzips_and_rezips() {
        let inst = vector_instance(2);
        let rev = rev_reverse(&inst, &Ty::fin(2));
        let f = arrow::first(&inst, &rev, &Ty::Unit).unwrap();
        let ps = Value::Seq(vec![
            Value::pair(atom(0), Value::Unit),
            Value::pair(atom(1), Value::Unit),
        ]);
        let expected = Value::Seq(vec![
            Value::pair(atom(1), Value::Unit),
            Value::pair(atom(0), Value::Unit),
        ]);
        assert_eq!(f.iso().unwrap().forward(&ps), Some(&expected));
    }

    #[test]
    fn first_is_undefined_when_length_changes() {
        let inst = vector_instance(2);
        let x = Ty::fin(2);
        let stretch =
            PartialIso::from_pairs(inst.list(&x), inst.list(&x), "stretch", [(list(&[]), list(&[0]))]).unwrap();
        let a = inst.from_core(stretch).unwrap();
        assert!(inst.check_invariant(&a).is_err());
        let f = arrow::first(&inst, &a, &Ty::Unit).unwrap();
        assert!(f.iso().unwrap().is_empty());
    }

    #[test]
    fn operations_preserve_length() {
        let inst = vector_instance(2);
        let x = Ty::fin(2);
        let rev = rev_reverse(&inst, &x);
        let m = arrow::arr(&inst, &not2()).unwrap();
        for v in [
            arrow::seq(&inst, &rev, &m).unwrap(),
            arrow::inv(&inst, &rev).unwrap(),
            arrow::first(&inst, &rev, &Ty::fin(2)).unwrap(),
        ] {
            assert!(inst.check_invariant(&v).is_ok());
        }
    }
}
