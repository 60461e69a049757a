//! Carrier element payloads. A `Value` is only meaningful relative to the
//! `System` that owns it; the owning system validates payload shape at the
//! parse boundary.

use crate::rat::{fmt_q, Q};
use std::fmt;

/// Element of the tropical power-set carrier: either the zero `{-inf}`, a
/// singleton `{a}`, or the down-interval `[-inf, a]`. Finite hypersums of
/// singletons never leave this family.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TropSet {
    NegInf,
    Single(Q),
    Interval(Q),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Value {
    /// The distinguished zero of the carrier (`-inf` in max-plus, `inf` in
    /// min-plus, the zero symbol of a finite carrier's `zero` slot).
    Zero,
    Tangible(Q),
    Ghost(Q),
    /// Index into a finite carrier's element table.
    Sym(usize),
    /// Symmetrized pair (pos, neg) over the base carrier.
    Pair(Box<Value>, Box<Value>),
    /// Element of the tropical power-set carrier.
    Trop(TropSet),
}

impl Value {
    pub fn pair(pos: Value, neg: Value) -> Value {
        Value::Pair(Box::new(pos), Box::new(neg))
    }

    pub fn tangible_q(&self) -> Option<&Q> {
        match self {
            Value::Tangible(q) => Some(q),
            _ => None,
        }
    }

    /// Magnitude of a supertropical/max-plus value, if numeric.
    pub fn magnitude(&self) -> Option<&Q> {
        match self {
            Value::Tangible(q) | Value::Ghost(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Zero => write!(f, "0"),
            Value::Tangible(q) => write!(f, "{}", fmt_q(q)),
            Value::Ghost(q) => write!(f, "{}v", fmt_q(q)),
            Value::Sym(i) => write!(f, "#{i}"),
            Value::Pair(p, n) => write!(f, "({p},{n})"),
            Value::Trop(TropSet::NegInf) => write!(f, "{{-inf}}"),
            Value::Trop(TropSet::Single(q)) => write!(f, "{{{}}}", fmt_q(q)),
            Value::Trop(TropSet::Interval(q)) => write!(f, "[-inf,{}]", fmt_q(q)),
        }
    }
}
