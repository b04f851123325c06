//! Information effects: arrows `X -> Y` carried by reversible cores
//! `X*H -> Y*G` with a heap `H` and a garbage dump `G`.
//!
//! Arrows are compared after normalizing the ancilla: heap and garbage
//! product trees are flattened with unit leaves dropped, wires running
//! straight from a heap leaf to a garbage leaf are removed, and what remains
//! is matched up to bijections of the heap and of the garbage.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arrow::{ArrowError, ArrowInstance, ArrowValue, Carrier, Discrepancy};
use crate::pinj::{self, PartialIso};
use crate::values::{enumerate, Ty, Value};

#[derive(Clone, PartialEq, Eq)]
pub struct GhArrow {
    pub dom: Ty,
    pub cod: Ty,
    pub heap: Ty,
    pub garbage: Ty,
    /// `dom * heap -> cod * garbage`.
    pub core: PartialIso,
}

impl fmt::Debug for GhArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[heap {} garbage {}] {:?}", self.heap, self.garbage, self.core)
    }
}

impl GhArrow {
    pub fn new(dom: Ty, cod: Ty, heap: Ty, garbage: Ty, core: PartialIso) -> Result<Self, ArrowError> {
        let want_dom = Ty::prod(dom.clone(), heap.clone());
        let want_cod = Ty::prod(cod.clone(), garbage.clone());
        if core.dom() != &want_dom {
            return Err(ArrowError::TypeMismatch {
                op: "info core",
                expected: want_dom,
                found: core.dom().clone(),
            });
        }
        if core.cod() != &want_cod {
            return Err(ArrowError::TypeMismatch {
                op: "info core",
                expected: want_cod,
                found: core.cod().clone(),
            });
        }
        Ok(GhArrow {
            dom,
            cod,
            heap,
            garbage,
            core,
        })
    }

    pub fn normalize(&self) -> Normal {
        let heap = leaves(&self.heap);
        let garbage = leaves(&self.garbage);
        let map = self
            .core
            .graph()
            .map(|(v, w)| {
                let (x, h) = v.as_pair().expect("typed");
                let (y, g) = w.as_pair().expect("typed");
                (
                    (x.clone(), leaf_values(h, &self.heap)),
                    (y.clone(), leaf_values(g, &self.garbage)),
                )
            })
            .collect();
        let mut n = Normal { heap, garbage, map };
        while n.strip_one_wire() {}
        n
    }
}

fn leaves(t: &Ty) -> Vec<Ty> {
    let mut out = Vec::new();
    fn go(t: &Ty, out: &mut Vec<Ty>) {
        match t {
            Ty::Unit => {}
            Ty::Prod(a, b) => {
                go(a, out);
                go(b, out);
            }
            other => out.push(other.clone()),
        }
    }
    go(t, &mut out);
    out
}

fn leaf_values(v: &Value, t: &Ty) -> Vec<Value> {
    let mut out = Vec::new();
    fn go(v: &Value, t: &Ty, out: &mut Vec<Value>) {
        match (v, t) {
            (_, Ty::Unit) => {}
            (Value::Pair(a, b), Ty::Prod(ta, tb)) => {
                go(a, ta, out);
                go(b, tb, out);
            }
            (v, _) => out.push(v.clone()),
        }
    }
    go(v, t, &mut out);
    out
}

type Key = (Value, Vec<Value>);

/// A core with flat ancilla lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normal {
    pub heap: Vec<Ty>,
    pub garbage: Vec<Ty>,
    pub map: BTreeMap<Key, Key>,
}

fn without(xs: &[Value], i: usize) -> Vec<Value> {
    xs.iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, x)| x.clone())
        .collect()
}

impl Normal {
    /// Removes the first heap leaf `i` / garbage leaf `j` pair for which the
    /// core is `core' * w` with `w` a fixed bijection of that leaf.
    fn strip_one_wire(&mut self) -> bool {
        for i in 0..self.heap.len() {
            for j in 0..self.garbage.len() {
                if self.heap[i] != self.garbage[j] {
                    continue;
                }
                if let Some(reduced) = self.strip(i, j) {
                    self.heap.remove(i);
                    self.garbage.remove(j);
                    self.map = reduced;
                    return true;
                }
            }
        }
        false
    }

    fn strip(&self, i: usize, j: usize) -> Option<BTreeMap<Key, Key>> {
        let width = self.heap[i].cardinality();
        let mut wire: BTreeMap<Value, Value> = BTreeMap::new();
        let mut reduced: BTreeMap<Key, Key> = BTreeMap::new();
        let mut seen: BTreeMap<Key, usize> = BTreeMap::new();
        for ((x, h), (y, g)) in &self.map {
            match wire.get(&h[i]) {
                Some(w) if *w != g[j] => return None,
                Some(_) => {}
                None => {
                    wire.insert(h[i].clone(), g[j].clone());
                }
            }
            let k = (x.clone(), without(h, i));
            let out = (y.clone(), without(g, j));
            match reduced.get(&k) {
                Some(prev) if *prev != out => return None,
                Some(_) => {}
                None => {
                    reduced.insert(k.clone(), out);
                }
            }
            *seen.entry(k).or_default() += 1;
        }
        let bijective = wire.values().collect::<BTreeSet<_>>().len() == wire.len();
        (bijective && seen.values().all(|&n| n == width)).then_some(reduced)
    }

    fn heap_values(&self) -> Vec<Vec<Value>> {
        tuples(&self.heap)
    }

    fn garbage_size(&self) -> usize {
        self.garbage.iter().map(Ty::cardinality).product()
    }

    /// Row of a heap value: the output (if any) for each input.
    fn row(&self, xs: &[Value], h: &[Value]) -> Vec<Option<Key>> {
        xs.iter()
            .map(|x| self.map.get(&(x.clone(), h.to_vec())).cloned())
            .collect()
    }
}

fn tuples(ts: &[Ty]) -> Vec<Vec<Value>> {
    ts.iter().fold(vec![Vec::new()], |acc, t| {
        let vs = enumerate(t);
        acc.iter()
            .flat_map(|p| {
                vs.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect()
    })
}

/// Backtracking search for bijections `phi` of heaps and `psi` of garbage
/// with `b(x, phi h) = (y, psi g)` exactly when `a(x, h) = (y, g)`.
struct Matcher {
    rows_a: Vec<Vec<Option<Key>>>,
    rows_b: Vec<Vec<Option<Key>>>,
    used: Vec<bool>,
    psi: BTreeMap<Vec<Value>, Vec<Value>>,
    psi_inv: BTreeMap<Vec<Value>, Vec<Value>>,
}

fn shape_of(row: &[Option<Key>]) -> Vec<Option<&Value>> {
    row.iter().map(|o| o.as_ref().map(|(y, _)| y)).collect()
}

impl Matcher {
    fn new(rows_a: Vec<Vec<Option<Key>>>, rows_b: Vec<Vec<Option<Key>>>) -> Self {
        let used = vec![false; rows_b.len()];
        Matcher {
            rows_a,
            rows_b,
            used,
            psi: BTreeMap::new(),
            psi_inv: BTreeMap::new(),
        }
    }

    fn search(&mut self, k: usize) -> bool {
        if k == self.rows_a.len() {
            return true;
        }
        for c in 0..self.rows_b.len() {
            if self.used[c] || shape_of(&self.rows_a[k]) != shape_of(&self.rows_b[c]) {
                continue;
            }
            let pairs: Vec<(Vec<Value>, Vec<Value>)> = self.rows_a[k]
                .iter()
                .zip(&self.rows_b[c])
                .filter_map(|(ra, rb)| Some((ra.as_ref()?.1.clone(), rb.as_ref()?.1.clone())))
                .collect();
            let mut added = Vec::new();
            let mut ok = true;
            for (ga, gb) in pairs {
                match (self.psi.get(&ga), self.psi_inv.get(&gb)) {
                    (Some(p), _) if *p != gb => ok = false,
                    (_, Some(q)) if *q != ga => ok = false,
                    (Some(_), Some(_)) => {}
                    _ => {
                        self.psi.insert(ga.clone(), gb.clone());
                        self.psi_inv.insert(gb.clone(), ga.clone());
                        added.push((ga, gb));
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                self.used[c] = true;
                if self.search(k + 1) {
                    return true;
                }
                self.used[c] = false;
            }
            for (ga, gb) in added {
                self.psi.remove(&ga);
                self.psi_inv.remove(&gb);
            }
        }
        false
    }
}

/// Equality up to ancilla coherence; `None` when equal.
pub fn gh_diff(a: &GhArrow, b: &GhArrow) -> Option<Discrepancy> {
    if a.dom != b.dom || a.cod != b.cod {
        return Some(Discrepancy {
            input: "signature".into(),
            lhs: format!("{} -> {}", a.dom, a.cod),
            rhs: format!("{} -> {}", b.dom, b.cod),
        });
    }
    let (na, nb) = (a.normalize(), b.normalize());
    let shape = |n: &Normal| {
        format!(
            "heap {:?} garbage {:?}",
            n.heap.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            n.garbage.iter().map(|t| t.to_string()).collect::<Vec<_>>()
        )
    };
    let (ha, hb) = (na.heap_values(), nb.heap_values());
    if ha.len() != hb.len() || na.garbage_size() != nb.garbage_size() {
        return Some(Discrepancy {
            input: "ancilla".into(),
            lhs: shape(&na),
            rhs: shape(&nb),
        });
    }
    let xs = enumerate(&a.dom);
    let rows = |n: &Normal, hs: &[Vec<Value>]| hs.iter().map(|h| n.row(&xs, h)).collect::<Vec<_>>();
    if Matcher::new(rows(&na, &ha), rows(&nb, &hb)).search(0) {
        return None;
    }
    let render = |k: &Key| format!("({}, {:?})", k.0, k.1.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    let first = na
        .map
        .iter()
        .find(|(k, v)| nb.map.get(*k) != Some(*v))
        .map(|(k, v)| (render(k), render(v), nb.map.get(k).map_or("undefined".into(), render)))
        .or_else(|| {
            nb.map
                .iter()
                .find(|(k, _)| !na.map.contains_key(*k))
                .map(|(k, v)| (render(k), "undefined".into(), render(v)))
        })
        .unwrap_or_else(|| ("core".into(), shape(&na), shape(&nb)));
    Some(Discrepancy {
        input: format!("{} (no ancilla bijection matches)", first.0),
        lhs: first.1,
        rhs: first.2,
    })
}

#[derive(Debug, Clone, Default)]
pub struct InfoArrow;

pub fn info_instance() -> InfoArrow {
    InfoArrow
}

impl InfoArrow {
    pub fn value(&self, g: GhArrow, label: impl Into<String>) -> ArrowValue {
        ArrowValue::new("info", g.dom.clone(), g.cod.clone(), Carrier::Gh(g), label)
    }
}

/// `erase = [sigma : X*1 -> 1*X]`: heap unit, garbage `X`.
pub fn info_erase(x: &Ty) -> GhArrow {
    let core = pinj::coherence(&pinj::Coherence::Swap(x.clone(), Ty::Unit), false).relabel("erase");
    GhArrow::new(x.clone(), Ty::Unit, Ty::Unit, x.clone(), core).expect("typed")
}

/// `create = [sigma : 1*X -> X*1]`: heap `X`, garbage unit.
pub fn info_create(x: &Ty) -> GhArrow {
    let core = pinj::coherence(&pinj::Coherence::Swap(Ty::Unit, x.clone()), false).relabel("create");
    GhArrow::new(Ty::Unit, x.clone(), x.clone(), Ty::Unit, core).expect("typed")
}

impl ArrowInstance for InfoArrow {
    fn name(&self) -> &str {
        "info"
    }

    fn object_map(&self) -> String {
        "X*H -> Y*G up to ancilla coherence".into()
    }

    fn lifts(&self, f: &PartialIso) -> bool {
        f.is_total() && f.len() == f.cod().cardinality()
    }

    fn arr(&self, f: &PartialIso) -> Result<ArrowValue, ArrowError> {
        if !self.lifts(f) {
            return Err(ArrowError::Unsupported {
                instance: "info".into(),
                op: "arr of a map that is not a bijection",
            });
        }
        let core = pinj::tensor_prod(f, &pinj::identity(&Ty::Unit));
        let g = GhArrow::new(f.dom().clone(), f.cod().clone(), Ty::Unit, Ty::Unit, core)?;
        Ok(self.value(g, format!("arr {}", f.label())))
    }

    /// Heap `H1*H2`, garbage `G2*G1`.
    fn seq(&self, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let (p, q) = (a.gh()?, b.gh()?);
        let h2s = enumerate(&q.heap);
        let mut pairs = Vec::new();
        for (xh, yg) in p.core.graph() {
            let (x, h1) = xh.as_pair().expect("typed");
            let (y, g1) = yg.as_pair().expect("typed");
            for h2 in &h2s {
                if let Some(zg) = q.core.forward(&Value::pair(y.clone(), h2.clone())) {
                    let (z, g2) = zg.as_pair().expect("typed");
                    pairs.push((
                        Value::pair(x.clone(), Value::pair(h1.clone(), h2.clone())),
                        Value::pair(z.clone(), Value::pair(g2.clone(), g1.clone())),
                    ));
                }
            }
        }
        let heap = Ty::prod(p.heap.clone(), q.heap.clone());
        let garbage = Ty::prod(q.garbage.clone(), p.garbage.clone());
        let label = format!("{};{}", a.label, b.label);
        let core = PartialIso::from_pairs(
            Ty::prod(p.dom.clone(), heap.clone()),
            Ty::prod(q.cod.clone(), garbage.clone()),
            label.clone(),
            pairs,
        )?;
        Ok(self.value(GhArrow::new(p.dom.clone(), q.cod.clone(), heap, garbage, core)?, label))
    }

    fn first(&self, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
        let p = a.gh()?;
        let zs = enumerate(z);
        let pairs = p.core.graph().flat_map(|(xh, yg)| {
            let (x, h) = xh.as_pair().expect("typed");
            let (y, g) = yg.as_pair().expect("typed");
            zs.iter().map(move |zv| {
                (
                    Value::pair(Value::pair(x.clone(), zv.clone()), h.clone()),
                    Value::pair(Value::pair(y.clone(), zv.clone()), g.clone()),
                )
            })
        });
        let dom = Ty::prod(p.dom.clone(), z.clone());
        let cod = Ty::prod(p.cod.clone(), z.clone());
        let label = format!("first({},{z})", a.label);
        let core = PartialIso::from_pairs(
            Ty::prod(dom.clone(), p.heap.clone()),
            Ty::prod(cod.clone(), p.garbage.clone()),
            label.clone(),
            pairs,
        )?;
        Ok(self.value(GhArrow::new(dom, cod, p.heap.clone(), p.garbage.clone(), core)?, label))
    }

    fn inv(&self, a: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let p = a.gh()?;
        let g = GhArrow::new(
            p.cod.clone(),
            p.dom.clone(),
            p.garbage.clone(),
            p.heap.clone(),
            pinj::dagger(&p.core),
        )?;
        Ok(self.value(g, format!("inv({})", a.label)))
    }

    fn diff(&self, a: &ArrowValue, b: &ArrowValue) -> Option<Discrepancy> {
        match (a.gh(), b.gh()) {
            (Ok(p), Ok(q)) => gh_diff(p, q),
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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::{self, arrow_eq};

    fn atom(i: usize) -> Value {
        Value::Atom(i)
    }

    #[test]
    fn erase_core() {
        let e = info_erase(&Ty::fin(2));
        for i in 0..2 {
            assert_eq!(
                e.core.forward(&Value::pair(atom(i), Value::Unit)),
                Some(&Value::pair(Value::Unit, atom(i)))
            );
        }
        assert_eq!((e.heap.clone(), e.garbage.clone()), (Ty::Unit, Ty::fin(2)));
    }

    #[test]
    fn create_then_erase_is_arr_id() {
        let inst = info_instance();
        let x = Ty::fin(2);
        let c = inst.value(info_create(&x), "create");
        let e = inst.value(info_erase(&x), "erase");
        let ce = arrow::seq(&inst, &c, &e).unwrap();
        let id = arrow::arr(&inst, &pinj::identity(&Ty::Unit)).unwrap();
        assert!(arrow_eq(&inst, &ce, &id));
        // Erasing then creating is a genuine exchange with the heap.
        let ec = arrow::seq(&inst, &e, &c).unwrap();
        let idx = arrow::arr(&inst, &pinj::identity(&x)).unwrap();
        assert!(!arrow_eq(&inst, &ec, &idx));
    }

    #[test]
    fn inverse_of_erase_is_create() {
        let inst = info_instance();
        let x = Ty::fin(3);
        let e = inst.value(info_erase(&x), "erase");
        let c = inst.value(info_create(&x), "create");
        assert!(arrow_eq(&inst, &arrow::inv(&inst, &e).unwrap(), &c));
    }

    #[test]
    fn plain_flatten_and_permute_would_miss_the_identity_wire() {
        let x = Ty::fin(2);
        let inst = info_instance();
        let c = inst.value(info_create(&x), "create");
        let e = inst.value(info_erase(&x), "erase");
        let ce = arrow::seq(&inst, &c, &e).unwrap();
        let g = ce.gh().unwrap();
        assert_eq!(leaves(&g.heap), vec![x.clone()]);
        assert_eq!(leaves(&g.garbage), vec![x]);
        assert!(g.normalize().heap.is_empty());
    }

    #[test]
    fn equality_is_an_equivalence_on_samples() {
        let inst = info_instance();
        let x = Ty::fin(2);
        let not = PartialIso::from_fn(x.clone(), x.clone(), "not", |v| match v {
            Value::Atom(i) => Some(atom(1 - i)),
            _ => None,
        })
        .unwrap();
        let e = inst.value(info_erase(&x), "erase");
        let c = inst.value(info_create(&x), "create");
        let n = arrow::arr(&inst, &not).unwrap();
        let samples = vec![
            arrow::seq(&inst, &e, &c).unwrap(),
            arrow::seq(&inst, &arrow::seq(&inst, &e, &c).unwrap(), &n).unwrap(),
            arrow::seq(&inst, &n, &arrow::seq(&inst, &e, &c).unwrap()).unwrap(),
            arrow::seq(
                &inst,
                &arrow::seq(&inst, &e, &c).unwrap(),
                &arrow::seq(&inst, &e, &c).unwrap(),
            )
            .unwrap(),
            arrow::arr(&inst, &pinj::identity(&x)).unwrap(),
            n.clone(),
        ];
        for a in &samples {
            assert!(arrow_eq(&inst, a, a));
            for b in &samples {
                assert_eq!(arrow_eq(&inst, a, b), arrow_eq(&inst, b, a));
                for c in &samples {
                    if arrow_eq(&inst, a, b) && arrow_eq(&inst, b, c) {
                        assert!(arrow_eq(&inst, a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn arr_accepts_only_bijections() {
        let inst = info_instance();
        let partial = PartialIso::from_pairs(Ty::fin(2), Ty::fin(2), "p", [(atom(0), atom(0))]).unwrap();
        assert!(arrow::arr(&inst, &partial).is_err());
        assert!(arrow::arr(&inst, &pinj::identity(&Ty::fin(2))).is_ok());
    }
}
