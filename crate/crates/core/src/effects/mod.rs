//! Effect instances and the named suites the CLI runs.

pub mod error;
pub mod identity;
pub mod info;
pub mod mutants;
pub mod rstate;
pub mod serializer;
pub mod vector;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::arrow::laws::{check_laws, CheckId, Fragment, LawReport, PureUniverse};
use crate::arrow::{self, ArrowInstance, ArrowValue};
use crate::pinj::{self, PartialIso, Side};
use crate::values::{Ty, Value};

pub const INSTANCES: [&str; 8] = [
    "identity",
    "rstate",
    "reader",
    "rewriter",
    "vector",
    "error",
    "serializer",
    "info",
];
pub const MUTANTS: [&str; 4] = ["mutant-noinv", "mutant-badfirst", "mutant-lenvec", "mutant-ctxreader"];

/// Token-string length bound of the serializer suite.
pub const TOKEN_LEN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub fin: usize,
    pub max_len: usize,
    pub alphabet: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            fin: 2,
            max_len: 2,
            alphabet: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown effect `{0}`; known: {known}", known = known_names())]
    Unknown(String),
    #[error("invalid bounds: {0}")]
    Bounds(String),
}

fn known_names() -> String {
    INSTANCES
        .iter()
        .chain(MUTANTS.iter())
        .copied()
        .collect::<Vec<_>>()
        .join(", ")
}

/// An instance together with everything needed to check it.
pub struct Suite {
    pub instance: Box<dyn ArrowInstance>,
    pub fixtures: Vec<ArrowValue>,
    /// Effect-specific arrows, available to the pipeline generator.
    pub primitives: Vec<ArrowValue>,
    pub types: Vec<Ty>,
    pub fragment: Fragment,
    /// Checks this suite is designed to fail.
    pub expected_failures: BTreeSet<CheckId>,
}

impl Suite {
    pub fn run(&self) -> LawReport {
        let universe = PureUniverse::new(self.types.clone(), self.instance.as_ref());
        check_laws(self.instance.as_ref(), &self.fixtures, &universe, self.fragment)
    }

    /// Whether the report fails exactly the designed checks.
    pub fn meets_expectation(&self, report: &LawReport) -> bool {
        report.failed() == self.expected_failures
    }
}

fn pure_fixtures(inst: &dyn ArrowInstance, x: &Ty) -> Vec<ArrowValue> {
    let mut maps = pinj::homset(x, x);
    maps.extend(pinj::homset(x, &Ty::Unit));
    maps.extend(pinj::homset(&Ty::Unit, x));
    maps.iter()
        .filter(|f| inst.lifts(f))
        .map(|f| arrow::arr(inst, f).expect("pure lift"))
        .collect()
}

fn cycle(n: usize) -> PartialIso {
    let t = Ty::fin(n);
    PartialIso::from_fn(t.clone(), t, "succ", |v| match v {
        Value::Atom(i) => Some(Value::Atom((i + 1) % n)),
        _ => None,
    })
    .expect("bijection")
}

fn only_zero(n: usize) -> PartialIso {
    PartialIso::from_pairs(Ty::fin(n), Ty::fin(n), "only0", [(Value::Atom(0), Value::Atom(0))])
        .expect("partial identity")
}

fn ids(xs: &[CheckId]) -> BTreeSet<CheckId> {
    xs.iter().copied().collect()
}

/// Builds the named suite.
pub fn suite(name: &str, b: Bounds) -> Result<Suite, SuiteError> {
    if b.fin < 1 || b.alphabet < 1 {
        return Err(SuiteError::Bounds("--fin and --alphabet must be positive".into()));
    }
    let n = b.fin;
    let x = Ty::fin(n);
    let types = vec![Ty::Unit, x.clone()];
    let (instance, primitives, expected): (Box<dyn ArrowInstance>, Vec<ArrowValue>, BTreeSet<CheckId>) = match name {
        "identity" => (Box::new(identity::identity_instance()), vec![], BTreeSet::new()),
        "rstate" => {
            let st = rstate::rstate_instance(x.clone());
            let prims = vec![
                rstate::rstate_get(&st, &x),
                rstate::rstate_assert(&st, &x),
                rstate::rstate_update(&st, &cycle(n), &x).expect("typed"),
                rstate::rstate_update(&st, &only_zero(n), &x).expect("typed"),
            ];
            (Box::new(st), prims, BTreeSet::new())
        }
        "reader" | "mutant-ctxreader" => {
            let rd = rstate::reader_instance(x.clone());
            // (x, c) |-> (x + c mod n, c)
            let shift_by_ctx = PartialIso::from_fn(
                Ty::prod(x.clone(), x.clone()),
                Ty::prod(x.clone(), x.clone()),
                "add-ctx",
                |v| {
                    let (a, c) = v.as_pair()?;
                    match (a, c) {
                        (Value::Atom(i), Value::Atom(j)) => Some(Value::pair(Value::Atom((i + j) % n), c.clone())),
                        _ => None,
                    }
                },
            )
            .expect("bijection");
            let ask = rstate::reader_get(&rd, &x);
            let mut prims = vec![
                ask.clone(),
                arrow::inv(&rd, &ask).expect("inv"),
                rstate::reader_make(&rd, shift_by_ctx).expect("context kept"),
            ];
            let mut expected = BTreeSet::new();
            if name == "mutant-ctxreader" {
                let flip = pinj::tensor_prod(&pinj::identity(&x), &cycle(n));
                prims.push(rd.value(x.clone(), x.clone(), flip, "ctx-flip"));
                expected = ids(&[CheckId::Invariant]);
            }
            let rd: Box<dyn ArrowInstance> = if name == "reader" {
                Box::new(rd)
            } else {
                Box::new(Renamed::new("mutant-ctxreader", rd, &mut prims))
            };
            (rd, prims, expected)
        }
        "rewriter" => {
            let g = rstate::GroupSpec::cyclic(n);
            g.validate().map_err(|e| SuiteError::Bounds(e.to_string()))?;
            let rw = rstate::rewriter_instance(g.clone());
            let prims = g
                .elements()
                .iter()
                .map(|a| rstate::rewrite(&rw, a, &x).expect("typed"))
                .collect();
            (Box::new(rw), prims, BTreeSet::new())
        }
        "vector" | "mutant-lenvec" => {
            let vc = vector::vector_instance(b.max_len);
            let mut prims = vec![vector::rev_reverse(&vc, &x)];
            let mut expected = BTreeSet::new();
            if name == "mutant-lenvec" {
                let stretch = PartialIso::from_fn(vc.list(&x), vc.list(&x), "stretch", |v| {
                    let xs = v.as_seq()?;
                    Some(match xs {
                        [] => Value::Seq(vec![Value::Atom(0)]),
                        [Value::Atom(0)] => Value::Seq(vec![]),
                        _ => v.clone(),
                    })
                })
                .expect("bijection");
                prims.push(vc.from_core(stretch).expect("list carrier"));
                expected = ids(&[CheckId::Law(4), CheckId::Law(8), CheckId::Invariant]);
            }
            let vc: Box<dyn ArrowInstance> = if name == "vector" {
                Box::new(vc)
            } else {
                Box::new(Renamed::new("mutant-lenvec", vc, &mut prims))
            };
            (vc, prims, expected)
        }
        "error" => {
            let er = error::error_instance(x.clone());
            let f = pinj::identity(&x).relabel("f");
            let inl = pinj::quasi_injection(Side::Left, &x, &x);
            let split = PartialIso::from_fn(x.clone(), Ty::sum(x.clone(), x.clone()), "split", |v| match v {
                Value::Atom(0) => Some(Value::inl(v.clone())),
                other => Some(Value::inr(other.clone())),
            })
            .expect("injection");
            let prims = vec![
                error::raise(&er, &f, &inl, &x).expect("typed"),
                error::handle(&er, &f, &inl, &x).expect("typed"),
                error::raise(&er, &f, &split, &x).expect("typed"),
                error::handle(&er, &f, &split, &x).expect("typed"),
            ];
            (Box::new(er), prims, BTreeSet::new())
        }
        "serializer" => {
            let codec = serializer::default_codec(b.alphabet, TOKEN_LEN);
            codec
                .serialize(&Ty::prod(x.clone(), Ty::prod(x.clone(), x.clone())))
                .map_err(|e| SuiteError::Bounds(e.to_string()))?;
            (
                Box::new(serializer::serializer_instance(codec)),
                vec![],
                BTreeSet::new(),
            )
        }
        "info" => {
            let inf = info::info_instance();
            let erase = inf.value(info::info_erase(&x), "erase");
            let create = inf.value(info::info_create(&x), "create");
            let c = arrow::arr(&inf, &cycle(n)).expect("bijection");
            let prims = vec![
                erase.clone(),
                create.clone(),
                arrow::seq(&inf, &erase, &create).expect("typed"),
                arrow::seq(&inf, &create, &erase).expect("typed"),
                arrow::seq(&inf, &c, &erase).expect("typed"),
                arrow::seq(&inf, &create, &c).expect("typed"),
            ];
            (Box::new(inf), prims, BTreeSet::new())
        }
        "mutant-noinv" => (
            Box::new(mutants::mutant(mutants::MutantKind::NoInv)),
            vec![],
            ids(&[CheckId::Law(10), CheckId::Law(11), CheckId::Law(13)]),
        ),
        "mutant-badfirst" => (
            Box::new(mutants::mutant(mutants::MutantKind::BadFirst)),
            vec![],
            ids(&[CheckId::Law(5), CheckId::Law(6), CheckId::Law(7), CheckId::Law(8)]),
        ),
        other => return Err(SuiteError::Unknown(other.to_string())),
    };
    let fragment = if instance.supports_first() {
        Fragment::Full
    } else {
        Fragment::Weak
    };
    let mut fixtures = pure_fixtures(instance.as_ref(), &x);
    fixtures.extend(primitives.iter().cloned());
    Ok(Suite {
        instance,
        fixtures,
        primitives,
        types,
        fragment,
        expected_failures: expected,
    })
}

/// An instance under a different name.
pub struct Renamed<I> {
    name: String,
    inner: I,
}

impl<I: ArrowInstance> Renamed<I> {
    pub fn new(name: &str, inner: I, values: &mut [ArrowValue]) -> Self {
        for v in values.iter_mut() {
            v.instance = name.to_string();
        }
        Renamed {
            name: name.to_string(),
            inner,
        }
    }

    fn tag(&self, r: Result<ArrowValue, arrow::ArrowError>) -> Result<ArrowValue, arrow::ArrowError> {
        r.map(|v| v.retag(&self.name))
    }
}

impl<I: ArrowInstance> ArrowInstance for Renamed<I> {
    fn name(&self) -> &str {
        &self.name
    }
    fn object_map(&self) -> String {
        self.inner.object_map()
    }
    fn arr(&self, f: &PartialIso) -> Result<ArrowValue, arrow::ArrowError> {
        self.tag(self.inner.arr(f))
    }
    fn seq(&self, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, arrow::ArrowError> {
        self.tag(self.inner.seq(a, b))
    }
    fn first(&self, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, arrow::ArrowError> {
        self.tag(self.inner.first(a, z))
    }
    fn inv(&self, a: &ArrowValue) -> Result<ArrowValue, arrow::ArrowError> {
        self.tag(self.inner.inv(a))
    }
    fn left(&self, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, arrow::ArrowError> {
        self.tag(self.inner.left(a, z))
    }
    fn diff(&self, a: &ArrowValue, b: &ArrowValue) -> Option<arrow::Discrepancy> {
        self.inner.diff(a, b)
    }
    fn supports_first(&self) -> bool {
        self.inner.supports_first()
    }
    fn supports_choice(&self) -> bool {
        self.inner.supports_choice()
    }
    fn lifts(&self, f: &PartialIso) -> bool {
        self.inner.lifts(f)
    }
    fn check_invariant(&self, a: &ArrowValue) -> Result<(), arrow::Discrepancy> {
        self.inner.check_invariant(a)
    }
}
