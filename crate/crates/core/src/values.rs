//! First-order values and their types.
//!
//! Every type in this universe is finite: sequences carry an explicit length
//! bound and serialized data is a bounded token string. That makes each type
//! exhaustively enumerable, which is what every extensional law check in the
//! crate relies on.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Bounds on a serialized token string: tokens are atoms of `Fin(alphabet)`
/// and strings have at most `max_len` tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TokenBounds {
    pub alphabet: usize,
    pub max_len: usize,
}

impl TokenBounds {
    pub fn new(alphabet: usize, max_len: usize) -> Self {
        assert!(alphabet >= 1, "token alphabet must be non-empty");
        TokenBounds { alphabet, max_len }
    }

    /// The plain sequence type the token strings live in.
    pub fn as_seq(&self) -> Ty {
        Ty::seq(Ty::fin(self.alphabet), self.max_len)
    }
}

/// Finite first-order types.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ty {
    Unit,
    Zero,
    /// `n >= 1` named atoms, addressed by index.
    Fin(usize),
    Prod(Box<Ty>, Box<Ty>),
    Sum(Box<Ty>, Box<Ty>),
    /// Lists of at most `max_len` elements.
    Seq(Box<Ty>, usize),
    /// Token strings meant to hold serializations of the inner type.
    Serialized(Box<Ty>, TokenBounds),
}

impl Ty {
    pub fn fin(n: usize) -> Ty {
        assert!(n >= 1, "Fin(n) requires n >= 1");
        Ty::Fin(n)
    }

    pub fn prod(a: Ty, b: Ty) -> Ty {
        Ty::Prod(Box::new(a), Box::new(b))
    }

    pub fn sum(a: Ty, b: Ty) -> Ty {
        Ty::Sum(Box::new(a), Box::new(b))
    }

    pub fn seq(elem: Ty, max_len: usize) -> Ty {
        Ty::Seq(Box::new(elem), max_len)
    }

    pub fn serialized(of: Ty, bounds: TokenBounds) -> Ty {
        Ty::Serialized(Box::new(of), bounds)
    }

    /// Number of inhabitants.
    pub fn cardinality(&self) -> usize {
        match self {
            Ty::Unit => 1,
            Ty::Zero => 0,
            Ty::Fin(n) => *n,
            Ty::Prod(a, b) => a.cardinality() * b.cardinality(),
            Ty::Sum(a, b) => a.cardinality() + b.cardinality(),
            Ty::Seq(t, n) => {
                let k = t.cardinality();
                (0..=*n).map(|len| k.pow(len as u32)).sum()
            }
            Ty::Serialized(_, bounds) => bounds.as_seq().cardinality(),
        }
    }

    /// Checks the structural invariants (`Fin(n)` has `n >= 1`).
    pub fn validate(&self) -> Result<(), TypeSyntaxError> {
        match self {
            Ty::Unit | Ty::Zero => Ok(()),
            Ty::Fin(0) => Err(TypeSyntaxError::new(0, "fin requires at least one atom")),
            Ty::Fin(_) => Ok(()),
            Ty::Prod(a, b) | Ty::Sum(a, b) => {
                a.validate()?;
                b.validate()
            }
            Ty::Seq(t, _) => t.validate(),
            Ty::Serialized(t, bounds) => {
                if bounds.alphabet == 0 {
                    return Err(TypeSyntaxError::new(0, "token alphabet must be non-empty"));
                }
                t.validate()
            }
        }
    }
}

/// First-order values. Structural equality is the canonical equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Unit,
    Atom(usize),
    Pair(Box<Value>, Box<Value>),
    InL(Box<Value>),
    InR(Box<Value>),
    Seq(Vec<Value>),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }

    pub fn inl(v: Value) -> Value {
        Value::InL(Box::new(v))
    }

    pub fn inr(v: Value) -> Value {
        Value::InR(Box::new(v))
    }

    /// Splits a pair, or returns `None` for any other shape.
    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&[Value]> {
        match self {
            Value::Seq(xs) => Some(xs),
            _ => None,
        }
    }
}

/// All inhabitants of `ty`, each exactly once, in ascending canonical order.
pub fn enumerate(ty: &Ty) -> Vec<Value> {
    match ty {
        Ty::Unit => vec![Value::Unit],
        Ty::Zero => Vec::new(),
        Ty::Fin(n) => (0..*n).map(Value::Atom).collect(),
        Ty::Prod(a, b) => {
            let right = enumerate(b);
            enumerate(a)
                .into_iter()
                .flat_map(|x| right.iter().map(move |y| Value::pair(x.clone(), y.clone())))
                .collect()
        }
        Ty::Sum(a, b) => enumerate(a)
            .into_iter()
            .map(Value::inl)
            .chain(enumerate(b).into_iter().map(Value::inr))
            .collect(),
        Ty::Seq(t, max_len) => {
            let elems = enumerate(t);
            let mut out = vec![Vec::new()];
            let mut layer: Vec<Vec<Value>> = vec![Vec::new()];
            for _ in 0..*max_len {
                layer = layer
                    .iter()
                    .flat_map(|prefix| {
                        elems.iter().map(move |e| {
                            let mut next = prefix.clone();
                            next.push(e.clone());
                            next
                        })
                    })
                    .collect();
                out.extend(layer.iter().cloned());
            }
            let mut out: Vec<Value> = out.into_iter().map(Value::Seq).collect();
            out.sort();
            out
        }
        Ty::Serialized(_, bounds) => enumerate(&bounds.as_seq()),
    }
}

/// Whether `v` inhabits `ty`.
pub fn check_type(v: &Value, ty: &Ty) -> bool {
    match (v, ty) {
        (Value::Unit, Ty::Unit) => true,
        (Value::Atom(i), Ty::Fin(n)) => i < n,
        (Value::Pair(a, b), Ty::Prod(ta, tb)) => check_type(a, ta) && check_type(b, tb),
        (Value::InL(a), Ty::Sum(ta, _)) => check_type(a, ta),
        (Value::InR(b), Ty::Sum(_, tb)) => check_type(b, tb),
        (Value::Seq(xs), Ty::Seq(t, max_len)) => xs.len() <= *max_len && xs.iter().all(|x| check_type(x, t)),
        (Value::Seq(_), Ty::Serialized(_, bounds)) => check_type(v, &bounds.as_seq()),
        _ => false,
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unit => write!(f, "()"),
            Value::Atom(i) => write!(f, "#{i}"),
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
            Value::InL(a) => write!(f, "inl {a}"),
            Value::InR(b) => write!(f, "inr {b}"),
            Value::Seq(xs) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Display names for atom indices. Atoms without a name render as `#i`.
#[derive(Debug, Clone, Default)]
pub struct AtomLabels {
    names: Vec<String>,
}

impl AtomLabels {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        AtomLabels {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn render(&self, v: &Value) -> String {
        match v {
            Value::Unit => "()".to_string(),
            Value::Atom(i) => self.names.get(*i).cloned().unwrap_or_else(|| format!("#{i}")),
            Value::Pair(a, b) => format!("({}, {})", self.render(a), self.render(b)),
            Value::InL(a) => format!("inl {}", self.render(a)),
            Value::InR(b) => format!("inr {}", self.render(b)),
            Value::Seq(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| self.render(x)).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Unit => write!(f, "unit"),
            Ty::Zero => write!(f, "zero"),
            Ty::Fin(n) => write!(f, "(fin {n})"),
            Ty::Prod(a, b) => write!(f, "(prod {a} {b})"),
            Ty::Sum(a, b) => write!(f, "(sum {a} {b})"),
            Ty::Seq(t, n) => write!(f, "(seq {t} {n})"),
            Ty::Serialized(t, b) => write!(f, "(ser {t} {} {})", b.alphabet, b.max_len),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("type syntax error at column {column}: {message}")]
pub struct TypeSyntaxError {
    /// 1-based column of the offending token.
    pub column: usize,
    pub message: String,
}

impl TypeSyntaxError {
    fn new(column: usize, message: impl Into<String>) -> Self {
        TypeSyntaxError {
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
}

fn tokenize(src: &str) -> Vec<(usize, Token)> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        match c {
            '(' => out.push((i + 1, Token::Open)),
            ')' => out.push((i + 1, Token::Close)),
            c if c.is_whitespace() => {}
            _ => {
                let mut word = c.to_string();
                while let Some(&(_, d)) = chars.peek() {
                    if d == '(' || d == ')' || d.is_whitespace() {
                        break;
                    }
                    word.push(d);
                    chars.next();
                }
                out.push((i + 1, Token::Word(word)));
            }
        }
    }
    out
}

struct TypeParser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl TypeParser {
    fn column(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn next(&mut self) -> Result<(usize, Token), TypeSyntaxError> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| TypeSyntaxError::new(self.end, "unexpected end of type"))?;
        self.pos += 1;
        Ok(tok)
    }

    fn number(&mut self) -> Result<usize, TypeSyntaxError> {
        match self.next()? {
            (col, Token::Word(w)) => w
                .parse()
                .map_err(|_| TypeSyntaxError::new(col, format!("expected a number, found `{w}`"))),
            (col, _) => Err(TypeSyntaxError::new(col, "expected a number")),
        }
    }

    fn close(&mut self) -> Result<(), TypeSyntaxError> {
        match self.next()? {
            (_, Token::Close) => Ok(()),
            (col, _) => Err(TypeSyntaxError::new(col, "expected `)`")),
        }
    }

    fn ty(&mut self) -> Result<Ty, TypeSyntaxError> {
        match self.next()? {
            (_, Token::Word(w)) if w == "unit" => Ok(Ty::Unit),
            (_, Token::Word(w)) if w == "zero" => Ok(Ty::Zero),
            (col, Token::Word(w)) => Err(TypeSyntaxError::new(col, format!("unknown type `{w}`"))),
            (col, Token::Close) => Err(TypeSyntaxError::new(col, "unexpected `)`")),
            (_, Token::Open) => {
                let (col, head) = match self.next()? {
                    (col, Token::Word(w)) => (col, w),
                    (col, _) => return Err(TypeSyntaxError::new(col, "expected a type constructor")),
                };
                let ty = match head.as_str() {
                    "fin" => {
                        let c = self.column();
                        let n = self.number()?;
                        if n == 0 {
                            return Err(TypeSyntaxError::new(c, "fin requires at least one atom"));
                        }
                        Ty::Fin(n)
                    }
                    "prod" => Ty::prod(self.ty()?, self.ty()?),
                    "sum" => Ty::sum(self.ty()?, self.ty()?),
                    "seq" => {
                        let t = self.ty()?;
                        Ty::seq(t, self.number()?)
                    }
                    "ser" => {
                        let t = self.ty()?;
                        let c = self.column();
                        let alphabet = self.number()?;
                        if alphabet == 0 {
                            return Err(TypeSyntaxError::new(c, "token alphabet must be non-empty"));
                        }
                        let max_len = self.number()?;
                        Ty::serialized(t, TokenBounds { alphabet, max_len })
                    }
                    other => return Err(TypeSyntaxError::new(col, format!("unknown type constructor `{other}`"))),
                };
                self.close()?;
                Ok(ty)
            }
        }
    }
}

impl FromStr for Ty {
    type Err = TypeSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = TypeParser {
            tokens: tokenize(s),
            pos: 0,
            end: s.chars().count() + 1,
        };
        let ty = parser.ty()?;
        if parser.pos != parser.tokens.len() {
            return Err(TypeSyntaxError::new(parser.column(), "trailing input after type"));
        }
        Ok(ty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_and_zero() {
        assert_eq!(enumerate(&Ty::Unit), vec![Value::Unit]);
        assert!(enumerate(&Ty::Zero).is_empty());
    }

    #[test]
    fn product_matches_cartesian_oracle() {
        let fin2 = enumerate(&Ty::fin(2));
        let mut oracle = Vec::new();
        for a in &fin2 {
            for b in &fin2 {
                oracle.push(Value::pair(a.clone(), b.clone()));
            }
        }
        assert_eq!(enumerate(&Ty::prod(Ty::fin(2), Ty::fin(2))), oracle);
    }

    #[test]
    fn check_type_examples() {
        assert!(check_type(&Value::Unit, &Ty::Unit));
        assert!(check_type(&Value::inl(Value::Unit), &Ty::sum(Ty::Unit, Ty::fin(2))));
        let two = Value::Seq(vec![Value::Atom(0), Value::Atom(1)]);
        assert!(!check_type(&two, &Ty::seq(Ty::fin(2), 1)));
        assert!(check_type(&two, &Ty::seq(Ty::fin(2), 2)));
        assert!(!check_type(&Value::Atom(2), &Ty::fin(2)));
    }

    #[test]
    fn seq_enumeration_is_sorted_and_counted() {
        let ty = Ty::seq(Ty::fin(2), 2);
        let vs = enumerate(&ty);
        assert_eq!(vs.len(), 7);
        assert_eq!(vs[0], Value::Seq(vec![]));
        assert!(vs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn serialized_is_a_token_string_type() {
        let ty = Ty::serialized(Ty::Unit, TokenBounds::new(3, 2));
        assert_eq!(enumerate(&ty).len(), 1 + 3 + 9);
        assert!(check_type(&Value::Seq(vec![Value::Atom(2)]), &ty));
        assert!(!check_type(&Value::Seq(vec![Value::Atom(3)]), &ty));
    }

    #[test]
    fn type_syntax_round_trips() {
        for src in [
            "unit",
            "zero",
            "(fin 3)",
            "(prod (fin 2) unit)",
            "(sum (fin 1) (seq (fin 2) 2))",
            "(ser (prod (fin 2) (fin 2)) 4 3)",
        ] {
            let ty: Ty = src.parse().unwrap();
            assert_eq!(ty.to_string(), src);
        }
    }

    #[test]
    fn type_syntax_errors_carry_columns() {
        let err = "(prod (fin 2)".parse::<Ty>().unwrap_err();
        assert_eq!(err.column, 14);
        let err = "(fin 0)".parse::<Ty>().unwrap_err();
        assert_eq!(err.column, 6);
        assert!("(bogus 1)".parse::<Ty>().is_err());
        assert!("unit unit".parse::<Ty>().is_err());
    }

    #[test]
    fn atom_labels() {
        let labels = AtomLabels::new(["red", "green"]);
        let v = Value::pair(Value::Atom(1), Value::Atom(5));
        assert_eq!(labels.render(&v), "(green, #5)");
    }

    fn small_ty() -> impl Strategy<Value = Ty> {
        let leaf = prop_oneof![Just(Ty::Unit), Just(Ty::Zero), (1usize..4).prop_map(Ty::Fin),];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Ty::prod(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Ty::sum(a, b)),
                (inner, 0usize..3).prop_map(|(t, n)| Ty::seq(t, n)),
            ]
        })
        .prop_filter("keep enumerations small", |t| t.cardinality() <= 400)
    }

    proptest! {
        #[test]
        fn enumeration_is_typed_sorted_and_sized(ty in small_ty()) {
            let vs = enumerate(&ty);
            prop_assert_eq!(vs.len(), ty.cardinality());
            prop_assert!(vs.iter().all(|v| check_type(v, &ty)));
            prop_assert!(vs.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(enumerate(&ty), vs);
        }

        #[test]
        fn sizes_multiply_and_add(a in small_ty(), b in small_ty()) {
            prop_assume!(a.cardinality() * b.cardinality() <= 2000);
            let na = enumerate(&a).len();
            let nb = enumerate(&b).len();
            prop_assert_eq!(enumerate(&Ty::prod(a.clone(), b.clone())).len(), na * nb);
            prop_assert_eq!(enumerate(&Ty::sum(a, b)).len(), na + nb);
        }

        #[test]
        fn printed_types_parse_back(ty in small_ty()) {
            let parsed: Ty = ty.to_string().parse().unwrap();
            prop_assert_eq!(parsed, ty);
        }
    }
}
