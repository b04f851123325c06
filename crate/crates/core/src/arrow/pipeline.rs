//! Deterministic random pipelines built from the arrow combinators, and the
//! do/undo round trip `p ; inv p ; p = p`.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{arr, bind, fanout, first, inv, seq, ArrowError, ArrowInstance, ArrowValue, Discrepancy};
use crate::pinj::{self, PartialIso};
use crate::values::{enumerate, Ty};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Anchor {
    /// The domain is fixed.
    Dom,
    /// The codomain is fixed.
    Cod,
}

pub struct PipelineGen<'a> {
    inst: &'a dyn ArrowInstance,
    prims: &'a [ArrowValue],
    base: Vec<Ty>,
    rng: ChaCha8Rng,
    pub max_depth: usize,
    pub max_card: usize,
}

impl<'a> PipelineGen<'a> {
    pub fn new(inst: &'a dyn ArrowInstance, prims: &'a [ArrowValue], base: Vec<Ty>, seed: u64) -> Self {
        PipelineGen {
            inst,
            prims,
            base,
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_depth: 3,
            max_card: 8,
        }
    }

    /// One pipeline whose domain is drawn from the base types.
    pub fn generate(&mut self) -> Result<ArrowValue, ArrowError> {
        let ty = self.base.choose(&mut self.rng).expect("base types").clone();
        let depth = self.max_depth;
        self.gen(Anchor::Dom, &ty, depth)
    }

    fn small(&self, t: &Ty) -> bool {
        t.cardinality() <= self.max_card
    }

    fn gen(&mut self, anchor: Anchor, ty: &Ty, depth: usize) -> Result<ArrowValue, ArrowError> {
        if depth == 0 {
            return self.leaf(anchor, ty);
        }
        let with_first = self.inst.supports_first();
        let with_copy = with_first && self.inst.lifts(&pinj::delta(ty));
        match self.rng.random_range(0..7) {
            0 | 1 => {
                let (a, b) = match anchor {
                    Anchor::Dom => {
                        let a = self.gen(Anchor::Dom, ty, depth - 1)?;
                        let b = self.gen(Anchor::Dom, &a.cod, depth - 1)?;
                        (a, b)
                    }
                    Anchor::Cod => {
                        let b = self.gen(Anchor::Cod, ty, depth - 1)?;
                        let a = self.gen(Anchor::Cod, &b.dom, depth - 1)?;
                        (a, b)
                    }
                };
                seq(self.inst, &a, &b)
            }
            2 => {
                let flipped = match anchor {
                    Anchor::Dom => Anchor::Cod,
                    Anchor::Cod => Anchor::Dom,
                };
                let a = self.gen(flipped, ty, depth - 1)?;
                inv(self.inst, &a)
            }
            3 if with_first => match ty {
                Ty::Prod(x, z) => {
                    let a = self.gen(anchor, x, depth - 1)?;
                    if self.small(&Ty::prod(a.dom.clone(), (**z).clone()))
                        && self.small(&Ty::prod(a.cod.clone(), (**z).clone()))
                    {
                        first(self.inst, &a, z)
                    } else {
                        self.leaf(anchor, ty)
                    }
                }
                _ => self.leaf(anchor, ty),
            },
            4 if with_copy && anchor == Anchor::Dom => {
                let f = self.gen(Anchor::Dom, ty, depth - 1)?;
                let g = self.gen(Anchor::Dom, ty, depth - 1)?;
                if self.small(&Ty::prod(f.cod.clone(), g.cod.clone())) && self.small(&Ty::prod(ty.clone(), ty.clone()))
                {
                    fanout(self.inst, &f, &g)
                } else {
                    self.leaf(anchor, ty)
                }
            }
            5 if with_copy && anchor == Anchor::Dom => {
                let f = self.gen(Anchor::Dom, ty, depth - 1)?;
                let pair = Ty::prod(ty.clone(), f.cod.clone());
                if self.small(&pair) && self.small(&Ty::prod(ty.clone(), ty.clone())) {
                    let g = self.gen(Anchor::Dom, &pair, depth - 1)?;
                    bind(self.inst, &f, &g)
                } else {
                    self.leaf(anchor, ty)
                }
            }
            _ => self.leaf(anchor, ty),
        }
    }

    fn leaf(&mut self, anchor: Anchor, ty: &Ty) -> Result<ArrowValue, ArrowError> {
        let matching: Vec<&ArrowValue> = self
            .prims
            .iter()
            .filter(|p| match anchor {
                Anchor::Dom => p.dom == *ty,
                Anchor::Cod => p.cod == *ty,
            })
            .collect();
        if !matching.is_empty() && self.rng.random_bool(0.5) {
            return Ok((*matching.choose(&mut self.rng).expect("non-empty")).clone());
        }
        let f = self.random_map(anchor, ty);
        arr(self.inst, &f)
    }

    fn random_map(&mut self, anchor: Anchor, ty: &Ty) -> PartialIso {
        let mut others: Vec<Ty> = self.base.iter().filter(|t| self.small(t)).cloned().collect();
        others.push(ty.clone());
        for _ in 0..8 {
            let other = others.choose(&mut self.rng).expect("types").clone();
            let (a, b) = match anchor {
                Anchor::Dom => (ty.clone(), other),
                Anchor::Cod => (other, ty.clone()),
            };
            let f = self.random_injection(&a, &b);
            if self.inst.lifts(&f) {
                return f;
            }
        }
        let mut vs = enumerate(ty);
        let src = vs.clone();
        vs.shuffle(&mut self.rng);
        PartialIso::from_pairs(ty.clone(), ty.clone(), "perm", src.into_iter().zip(vs)).expect("permutation")
    }

    fn random_injection(&mut self, a: &Ty, b: &Ty) -> PartialIso {
        let mut xs = enumerate(a);
        let mut ys = enumerate(b);
        xs.shuffle(&mut self.rng);
        ys.shuffle(&mut self.rng);
        let most = xs.len().min(ys.len());
        let k = if most == 0 {
            0
        } else {
            self.rng.random_range(most.div_ceil(2)..=most)
        };
        let pairs: Vec<_> = xs.into_iter().zip(ys).take(k).collect();
        let label = format!(
            "{{{}}}",
            pairs
                .iter()
                .map(|(x, y)| format!("{x}>{y}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
        PartialIso::from_pairs(a.clone(), b.clone(), label, pairs).expect("injection")
    }
}

/// `count` pipelines from a fixed seed.
pub fn pipelines(
    inst: &dyn ArrowInstance,
    prims: &[ArrowValue],
    base: Vec<Ty>,
    seed: u64,
    count: usize,
) -> Result<Vec<ArrowValue>, ArrowError> {
    let mut g = PipelineGen::new(inst, prims, base, seed);
    (0..count).map(|_| g.generate()).collect()
}

/// Doing, undoing and doing again: `(p ; inv p) ; p` against `p`.
pub fn do_undo(inst: &dyn ArrowInstance, p: &ArrowValue) -> Result<Option<Discrepancy>, ArrowError> {
    let round = seq(inst, &seq(inst, p, &inv(inst, p)?)?, p)?;
    Ok(inst.diff(&round, p))
}
