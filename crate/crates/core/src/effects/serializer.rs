//! Serializers `X <-> Serialized Y` and the default prefix codec.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::arrow::{iso_diff, ArrowError, ArrowInstance, ArrowValue, Carrier, Discrepancy};
use crate::pinj::{self, PartialIso};
use crate::values::{enumerate, TokenBounds, Ty, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("{ty} needs {needed} distinct tokens, alphabet has {alphabet}")]
    AlphabetTooSmall { ty: Ty, needed: usize, alphabet: usize },
    #[error("{value} encodes to {len} tokens, the bound is {max_len}")]
    TooLong { value: Value, len: usize, max_len: usize },
    #[error("{0} has no codec")]
    Unsupported(Ty),
}

/// Self-delimiting encoding: `()` is empty, an atom is one token, a pair is
/// the concatenation, `inl`/`inr` prefix tag token 0/1, a list prefixes its
/// length.
#[derive(Debug)]
pub struct CodecSpec {
    bounds: TokenBounds,
    cache: Mutex<HashMap<Ty, PartialIso>>,
}

pub fn default_codec(alphabet: usize, max_len: usize) -> Arc<CodecSpec> {
    Arc::new(CodecSpec {
        bounds: TokenBounds::new(alphabet, max_len),
        cache: Mutex::new(HashMap::new()),
    })
}

fn tokens_needed(t: &Ty) -> usize {
    match t {
        Ty::Unit | Ty::Zero => 0,
        Ty::Fin(n) => *n,
        Ty::Prod(a, b) => tokens_needed(a).max(tokens_needed(b)),
        Ty::Sum(a, b) => 2.max(tokens_needed(a)).max(tokens_needed(b)),
        Ty::Seq(e, n) => (n + 1).max(tokens_needed(e)),
        Ty::Serialized(_, b) => (b.max_len + 1).max(b.alphabet),
    }
}

impl CodecSpec {
    pub fn bounds(&self) -> TokenBounds {
        self.bounds
    }

    pub fn serialized(&self, t: &Ty) -> Ty {
        Ty::serialized(t.clone(), self.bounds)
    }

    pub fn encode(&self, v: &Value) -> Vec<usize> {
        let mut out = Vec::new();
        encode_into(v, &mut out);
        out
    }

    /// Parses a whole token string as a value of `t`.
    pub fn decode(&self, t: &Ty, tokens: &[usize]) -> Option<Value> {
        let (v, rest) = decode_prefix(t, tokens)?;
        rest.is_empty().then_some(v)
    }

    /// `serialize : t <-> Serialized t`, tabulated over `t`.
    pub fn serialize(&self, t: &Ty) -> Result<PartialIso, CodecError> {
        if let Some(hit) = self.cache.lock().expect("codec cache").get(t) {
            return Ok(hit.clone());
        }
        let needed = tokens_needed(t);
        if needed > self.bounds.alphabet {
            return Err(CodecError::AlphabetTooSmall {
                ty: t.clone(),
                needed,
                alphabet: self.bounds.alphabet,
            });
        }
        let mut pairs = Vec::new();
        for v in enumerate(t) {
            let toks = self.encode(&v);
            if toks.len() > self.bounds.max_len {
                return Err(CodecError::TooLong {
                    value: v,
                    len: toks.len(),
                    max_len: self.bounds.max_len,
                });
            }
            pairs.push((v, token_value(&toks)));
        }
        let iso = PartialIso::from_pairs(t.clone(), self.serialized(t), format!("ser{{{t}}}"), pairs)
            .map_err(|_| CodecError::Unsupported(t.clone()))?;
        self.cache.lock().expect("codec cache").insert(t.clone(), iso.clone());
        Ok(iso)
    }

    /// The shortest (then least) token string within bounds that does not
    /// decode as `t`.
    pub fn non_canonical(&self, t: &Ty) -> Option<Value> {
        let strings = Ty::seq(Ty::fin(self.bounds.alphabet), self.bounds.max_len.min(3));
        let mut all = enumerate(&strings);
        all.sort_by_key(|s| s.as_seq().map_or(0, |xs| xs.len()));
        all.into_iter().find(|s| self.decode(t, &token_list(s)).is_none())
    }
}

pub fn token_value(tokens: &[usize]) -> Value {
    Value::Seq(tokens.iter().map(|&t| Value::Atom(t)).collect())
}

pub fn token_list(v: &Value) -> Vec<usize> {
    v.as_seq()
        .map(|xs| {
            xs.iter()
                .filter_map(|x| match x {
                    Value::Atom(i) => Some(*i),
                    _ => None,
                })
                .collect()
        })
        .unwrap_or_default()
}

fn encode_into(v: &Value, out: &mut Vec<usize>) {
    match v {
        Value::Unit => {}
        Value::Atom(i) => out.push(*i),
        Value::Pair(a, b) => {
            encode_into(a, out);
            encode_into(b, out);
        }
        Value::InL(a) => {
            out.push(0);
            encode_into(a, out);
        }
        Value::InR(b) => {
            out.push(1);
            encode_into(b, out);
        }
        Value::Seq(xs) => {
            out.push(xs.len());
            for x in xs {
                encode_into(x, out);
            }
        }
    }
}

fn decode_prefix<'t>(t: &Ty, toks: &'t [usize]) -> Option<(Value, &'t [usize])> {
    match t {
        Ty::Unit => Some((Value::Unit, toks)),
        Ty::Zero => None,
        Ty::Fin(n) => {
            let (&i, rest) = toks.split_first()?;
            (i < *n).then_some((Value::Atom(i), rest))
        }
        Ty::Prod(a, b) => {
            let (x, rest) = decode_prefix(a, toks)?;
            let (y, rest) = decode_prefix(b, rest)?;
            Some((Value::pair(x, y), rest))
        }
        Ty::Sum(a, b) => {
            let (&tag, rest) = toks.split_first()?;
            match tag {
                0 => decode_prefix(a, rest).map(|(x, r)| (Value::inl(x), r)),
                1 => decode_prefix(b, rest).map(|(y, r)| (Value::inr(y), r)),
                _ => None,
            }
        }
        Ty::Seq(e, max) => {
            let (&len, mut rest) = toks.split_first()?;
            if len > *max {
                return None;
            }
            let mut xs = Vec::with_capacity(len);
            for _ in 0..len {
                let (x, r) = decode_prefix(e, rest)?;
                xs.push(x);
                rest = r;
            }
            Some((Value::Seq(xs), rest))
        }
        Ty::Serialized(_, b) => decode_prefix(&b.as_seq(), toks),
    }
}

#[derive(Debug, Clone)]
pub struct SerializerArrow {
    codec: Arc<CodecSpec>,
}

pub fn serializer_instance(codec: Arc<CodecSpec>) -> SerializerArrow {
    SerializerArrow { codec }
}

impl SerializerArrow {
    pub fn codec(&self) -> &CodecSpec {
        &self.codec
    }

    fn ser(&self, t: &Ty) -> Result<PartialIso, ArrowError> {
        self.codec.serialize(t).map_err(|e| ArrowError::Carrier(e.to_string()))
    }

    pub fn value(&self, x: Ty, y: Ty, core: PartialIso, label: impl Into<String>) -> ArrowValue {
        ArrowValue::new("serializer", x, y, Carrier::Iso(core), label)
    }
}

impl ArrowInstance for SerializerArrow {
    fn name(&self) -> &str {
        "serializer"
    }

    fn object_map(&self) -> String {
        let b = self.codec.bounds;
        format!("X -> Serialized Y, {} tokens, length <= {}", b.alphabet, b.max_len)
    }

    /// `arr f x = serialize (f x)`.
    fn arr(&self, f: &PartialIso) -> Result<ArrowValue, ArrowError> {
        let core = pinj::compose(f, &self.ser(f.cod())?)?;
        Ok(self.value(f.dom().clone(), f.cod().clone(), core, format!("arr {}", f.label())))
    }

    /// `(a ; b) x = b (serialize† (a x))`.
    fn seq(&self, a: &ArrowValue, b: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let de = pinj::dagger(&self.ser(&a.cod)?);
        let core = pinj::compose(&pinj::compose(a.iso()?, &de)?, b.iso()?)?;
        Ok(self.value(a.dom.clone(), b.cod.clone(), core, format!("{};{}", a.label, b.label)))
    }

    /// `first a (x,z) = serialize (serialize† (a x), z)`.
    fn first(&self, a: &ArrowValue, z: &Ty) -> Result<ArrowValue, ArrowError> {
        let de = pinj::dagger(&self.ser(&a.cod)?);
        let inner = pinj::tensor_prod(&pinj::compose(a.iso()?, &de)?, &pinj::identity(z));
        let cod = Ty::prod(a.cod.clone(), z.clone());
        let core = pinj::compose(&inner, &self.ser(&cod)?)?;
        Ok(self.value(
            Ty::prod(a.dom.clone(), z.clone()),
            cod,
            core,
            format!("first({},{z})", a.label),
        ))
    }

    /// `inv a y = serialize (a† (serialize y))`.
    fn inv(&self, a: &ArrowValue) -> Result<ArrowValue, ArrowError> {
        let there = pinj::compose(&self.ser(&a.cod)?, &pinj::dagger(a.iso()?))?;
        let core = pinj::compose(&there, &self.ser(&a.dom)?)?;
        Ok(self.value(a.cod.clone(), a.dom.clone(), core, format!("inv({})", a.label)))
    }

    fn diff(&self, a: &ArrowValue, b: &ArrowValue) -> Option<Discrepancy> {
        iso_diff(a.iso().ok()?, b.iso().ok()?)
    }

    fn supports_first(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow;

    fn atom(i: usize) -> Value {
        Value::Atom(i)
    }

    fn sample_types() -> Vec<Ty> {
        vec![
            Ty::Unit,
            Ty::fin(2),
            Ty::prod(Ty::fin(2), Ty::fin(2)),
            Ty::sum(Ty::fin(2), Ty::Unit),
            Ty::seq(Ty::fin(2), 2),
            Ty::prod(Ty::sum(Ty::Unit, Ty::fin(3)), Ty::fin(2)),
        ]
    }

    #[test]
    fn default_codec_clauses() {
        let c = default_codec(4, 8);
        assert_eq!(c.encode(&Value::Unit), Vec::<usize>::new());
        let v = Value::pair(atom(1), atom(0));
        assert_eq!(c.encode(&Value::inl(v.clone())), [vec![0], c.encode(&v)].concat());
        assert_eq!(c.encode(&Value::Seq(vec![atom(1), atom(1)])), vec![2, 1, 1]);
    }

    #[test]
    fn every_encoding_decodes_uniquely() {
        let c = default_codec(4, 8);
        for t in sample_types() {
            let values = enumerate(&t);
            let encodings: Vec<Vec<usize>> = values.iter().map(|v| c.encode(v)).collect();
            for (v, toks) in values.iter().zip(&encodings) {
                assert_eq!(c.decode(&t, toks).as_ref(), Some(v));
                // Prefix property: no encoding is a proper prefix of another.
                for other in &encodings {
                    assert!(other == toks || !other.starts_with(toks));
                }
            }
        }
    }

    #[test]
    fn dagger_of_serialize_is_the_decoder() {
        let c = default_codec(4, 4);
        for t in sample_types() {
            let s = c.serialize(&t).unwrap();
            let de = pinj::dagger(&s);
            assert_eq!(pinj::compose(&s, &de).unwrap(), pinj::identity(&t));
            for toks in enumerate(&Ty::seq(Ty::fin(4), 3)) {
                assert_eq!(de.forward(&toks).cloned(), c.decode(&t, &token_list(&toks)));
            }
            let bad = c.non_canonical(&t).expect("some string fails to decode");
            assert_eq!(de.forward(&bad), None);
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let c = default_codec(2, 2);
        assert!(matches!(
            c.serialize(&Ty::fin(3)),
            Err(CodecError::AlphabetTooSmall { .. })
        ));
        let t = Ty::prod(Ty::fin(2), Ty::prod(Ty::fin(2), Ty::fin(2)));
        assert!(matches!(c.serialize(&t), Err(CodecError::TooLong { .. })));
    }

    #[test]
    fn arr_serializes_the_image() {
        let inst = serializer_instance(default_codec(4, 8));
        let not = PartialIso::from_fn(Ty::fin(2), Ty::fin(2), "not", |v| match v {
            Value::Atom(i) => Some(atom(1 - i)),
            _ => None,
        })
        .unwrap();
        let a = arrow::arr(&inst, &not).unwrap();
        assert_eq!(a.iso().unwrap().forward(&atom(0)), Some(&token_value(&[1])));
        let b = arrow::inv(&inst, &arrow::first(&inst, &a, &Ty::fin(2)).unwrap()).unwrap();
        let c = arrow::first(&inst, &arrow::inv(&inst, &a).unwrap(), &Ty::fin(2)).unwrap();
        assert!(arrow::arrow_eq(&inst, &b, &c));
    }
}
